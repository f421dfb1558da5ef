"""Free kernel, phase-weighted image sum, and spectral/image comparison."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_POLICY,
    EvolutionTime,
    KernelResult,
    NumericPolicy,
    SegmentConfig,
    SeriesTruncationError,
    exact_sum,
    require_valid,
)
from .images import PhaseRule, image_point, phase, shell_order
from .spectral import spectral_kernel

__all__ = [
    "KernelResult",
    "ComparisonReport",
    "free_kernel",
    "image_kernel",
    "compare_kernels",
    "kernel_x_derivative",
]


def free_kernel(d, dt: EvolutionTime, m: float = 1.0, hbar: float = 1.0):
    """``sqrt(m / (2 pi i hbar dt)) * exp(i m d^2 / (2 hbar dt))``.

    ``arg(dt)`` lies in ``(-pi, 0]`` so ``i dt`` has argument in
    ``(-pi/2, pi/2]`` and the principal square root is the right branch.
    For ``dt = -i tau`` this is the real heat kernel.  ``d`` may be an array.
    """
    z = dt.delta
    pref = np.sqrt(m / (2j * math.pi * hbar * z))
    return pref * np.exp(1j * m * np.square(d) / (2 * hbar * z))


def _shell_count(cfg: SegmentConfig, x: float, dt: EvolutionTime, policy: NumericPolicy):
    """Shells needed so the Gaussian tail of all further images is below abs_tol.

    Every image ``y_r`` lies in ``[rL, (r+1)L]``, so for ``x`` within ``e``
    of the segment ``|y_r - x| >= (|r| - 1) L - e``.
    """
    if dt.is_real:
        return (policy.max_terms - 1) // 2, math.inf
    z = dt.delta
    amp = math.sqrt(cfg.m / (2 * math.pi * cfg.hbar * abs(z)))
    gamma = cfg.m * dt.damping / (2 * cfg.hbar * abs(z) ** 2)
    excess = max(0.0, -x, x - cfg.L)
    L = cfg.L
    shells = 0
    while True:
        u = shells * L - excess
        if u >= 0:
            ratio = math.exp(-gamma * L * (2 * u + L))
            bound = 2 * amp * math.exp(-gamma * u * u) / (1.0 - ratio)
            if bound < policy.abs_tol:
                return shells, bound
        shells += 1
        if 2 * shells + 1 > policy.max_terms:
            raise SeriesTruncationError(
                f"image sum needs more than {policy.max_terms} terms; decrease tau or raise abs_tol"
            )


def image_kernel(
    cfg: SegmentConfig,
    x: float,
    y: float,
    dt: EvolutionTime,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> KernelResult:
    """Sum over reflected classical paths, ``sum_r eps_r K_free(y_r - x)``.

    The phase ``eps_r`` comes from counting reflections at each wall.
    """
    require_valid(cfg)
    shells, tail = _shell_count(cfg, x, dt, policy)
    rule = PhaseRule.from_config(cfg)
    rs = list(shell_order(shells))
    eps = np.array([phase(rule, r) for r in rs])
    d = np.array([image_point(r, y, cfg.L) for r in rs]) - x
    value, slack = exact_sum(eps * free_kernel(d, dt, cfg.m, cfg.hbar))
    return KernelResult(value, len(rs), float(tail + slack))


@dataclass(frozen=True)
class ComparisonReport:
    cfg: SegmentConfig
    x: float
    y: float
    dt: EvolutionTime
    spectral: KernelResult
    image: KernelResult
    abs_diff: float
    rel_diff: float

    def to_record(self) -> dict:
        return {
            "bc": self.cfg.bc,
            "x": self.x,
            "y": self.y,
            "dt_re": self.dt.re,
            "dt_im": self.dt.im,
            "spectral_re": self.spectral.value.real,
            "spectral_im": self.spectral.value.imag,
            "image_re": self.image.value.real,
            "image_im": self.image.value.imag,
            "abs_diff": self.abs_diff,
            "rel_diff": self.rel_diff,
            "terms_spectral": self.spectral.terms_used,
            "terms_image": self.image.terms_used,
        }


def compare_kernels(
    cfg: SegmentConfig,
    x: float,
    y: float,
    dt: EvolutionTime,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> ComparisonReport:
    s = spectral_kernel(cfg, x, y, dt, policy)
    i = image_kernel(cfg, x, y, dt, policy)
    diff = abs(s.value - i.value)
    scale = max(abs(s.value), abs(i.value), 1e-300)
    return ComparisonReport(cfg, x, y, dt, s, i, diff, diff / scale)


def kernel_x_derivative(kernel, cfg, x, y, dt, policy=DEFAULT_POLICY, step=1e-4) -> complex:
    """Central difference of ``kernel(cfg, x, y, ...)`` in ``x``.

    At an endpoint the stencil reaches ``step`` outside the segment, where
    both kernels continue analytically (mirror extension across the wall).
    """
    plus = kernel(cfg, x + step, y, dt, policy).value
    minus = kernel(cfg, x - step, y, dt, policy).value
    return (plus - minus) / (2 * step)
