"""Eigenmodes of the free segment and the spectral-sum propagator."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_POLICY,
    BoundaryKind,
    ConfigError,
    EvolutionTime,
    KernelResult,
    NumericPolicy,
    SegmentConfig,
    SeriesTruncationError,
    exact_sum,
    require_valid,
)


@dataclass(frozen=True)
class Mode:
    n: int
    k: float
    E: float
    norm: float
    shape_left: str  # "sin" or "cos"


def _offset(cfg: SegmentConfig) -> float:
    # k_j = (j + offset) * pi / L for zero-based j
    if cfg.left == cfg.right:
        return 0.0 if cfg.left is BoundaryKind.NEUMANN else 1.0
    return 0.5


def _has_zero_mode(cfg: SegmentConfig) -> bool:
    return cfg.left is BoundaryKind.NEUMANN and cfg.right is BoundaryKind.NEUMANN


def _phase(cfg: SegmentConfig) -> float:
    # cos(k x - phi): phi = pi/2 gives sin for a Dirichlet left end
    return 0.5 * math.pi if cfg.left is BoundaryKind.DIRICHLET else 0.0


def _wavenumbers(cfg: SegmentConfig, count: int) -> np.ndarray:
    return (np.arange(count) + _offset(cfg)) * (math.pi / cfg.L)


def _norms(cfg: SegmentConfig, count: int) -> np.ndarray:
    norms = np.full(count, math.sqrt(2.0 / cfg.L))
    if _has_zero_mode(cfg) and count:
        norms[0] = math.sqrt(1.0 / cfg.L)
    return norms


def _profiles(cfg: SegmentConfig, k: np.ndarray, norms: np.ndarray, x: float) -> np.ndarray:
    # no domain check: the cos/sin form continues smoothly past the ends
    return norms * np.cos(k * x - _phase(cfg))


@dataclass(frozen=True)
class Spectrum:
    cfg: SegmentConfig
    modes: tuple[Mode, ...]

    def extend(self, count: int) -> "Spectrum":
        if count <= len(self.modes):
            return self
        return modes(self.cfg, count)

    @property
    def k(self) -> np.ndarray:
        return np.array([mode.k for mode in self.modes])

    @property
    def E(self) -> np.ndarray:
        return np.array([mode.E for mode in self.modes])


def modes(cfg: SegmentConfig, count: int) -> Spectrum:
    """The lowest ``count`` modes in increasing wavenumber.

    DN is the mirror image (x -> L - x) of ND: the same wavenumbers with
    sin in place of cos.
    """
    require_valid(cfg)
    if count < 1:
        raise ConfigError("count must be >= 1")
    k = _wavenumbers(cfg, count)
    norms = _norms(cfg, count)
    first = 0 if _has_zero_mode(cfg) else 1
    shape = "sin" if cfg.left is BoundaryKind.DIRICHLET else "cos"
    out = tuple(
        Mode(first + j, float(k[j]), cfg.hbar**2 * float(k[j]) ** 2 / (2 * cfg.m), float(norms[j]), shape)
        for j in range(count)
    )
    return Spectrum(cfg, out)


def eigenfunction(mode: Mode, cfg: SegmentConfig, x: float) -> float:
    if not 0.0 <= x <= cfg.L:
        raise ValueError(f"x={x} lies outside [0, {cfg.L}]")
    phi = 0.5 * math.pi if mode.shape_left == "sin" else 0.0
    return mode.norm * math.cos(mode.k * x - phi)


def _series_length(cfg: SegmentConfig, dt: EvolutionTime, policy: NumericPolicy, scale: float):
    """Number of modes and tail bound for a sum whose n-th term is at most
    ``scale * exp(-E_n * damping / hbar)``.

    Writing k_{N+j} = k_N + j*dk, k^2 grows at least linearly in j, so the
    tail beyond N is dominated by a geometric series.
    """
    if dt.is_real:
        return policy.max_terms, math.inf
    a = cfg.hbar * dt.damping / (2 * cfg.m)
    dk = math.pi / cfg.L
    c = _offset(cfg)
    n = 1
    while True:
        kn = (n + c) * dk
        ratio = math.exp(-a * (2 * dk * kn + dk * dk))
        bound = scale * math.exp(-a * kn * kn) / (1.0 - ratio)
        if bound < policy.abs_tol:
            return n, bound
        n += 1
        if n > policy.max_terms:
            raise SeriesTruncationError(
                f"spectral sum needs more than {policy.max_terms} terms; increase tau or abs_tol"
            )


def _boltzmann(cfg: SegmentConfig, dt: EvolutionTime, k: np.ndarray) -> np.ndarray:
    E = cfg.hbar**2 * k**2 / (2 * cfg.m)
    return np.exp(-1j * E * dt.delta / cfg.hbar)


def spectral_kernel(
    cfg: SegmentConfig,
    x: float,
    y: float,
    dt: EvolutionTime,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> KernelResult:
    """Propagator as the mode sum ``sum_n exp(-i E_n dt/hbar) psi_n(x) psi_n(y)``."""
    require_valid(cfg)
    count, tail = _series_length(cfg, dt, policy, 2.0 / cfg.L)
    k = _wavenumbers(cfg, count)
    norms = _norms(cfg, count)
    # grouping keeps K(x, y) == K(y, x) bit for bit
    terms = _boltzmann(cfg, dt, k) * (_profiles(cfg, k, norms, x) * _profiles(cfg, k, norms, y))
    value, slack = exact_sum(terms)
    return KernelResult(value, count, float(tail + slack))


def trace(cfg: SegmentConfig, dt: EvolutionTime, policy: NumericPolicy = DEFAULT_POLICY) -> KernelResult:
    """Partition function ``sum_n exp(-i E_n dt/hbar)``."""
    require_valid(cfg)
    count, tail = _series_length(cfg, dt, policy, 1.0)
    value, slack = exact_sum(_boltzmann(cfg, dt, _wavenumbers(cfg, count)))
    return KernelResult(value, count, float(tail + slack))
