"""Reflection off a finite step barrier and finite-well bound states.

A wave with ``0 < E < h`` hitting a step of height ``h`` is reflected with
``R = (k - iq)/(k + iq) = exp(-i theta)``, ``theta = 2 atan2(q, k)``.
Using that phase at each wall of a square well of width ``L`` (walls of
height ``h`` on both sides) turns the image sum into geometric series in
the round-trip factor ``exp(2ikL) exp(-2i theta)``.  Bound states sit at
the poles, ``k L - theta(E) = n pi`` with ``n = 0, 1, ...``.

:func:`well_levels_oracle` solves the same well by the textbook matching
of even and odd solutions; it shares no code with the quantization route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import DEFAULT_POLICY, NumericPolicy
from .images import PhaseRule, phase

QUANTIZATION_CONVENTION = "k*L - theta(E) = n*pi, theta = 2*atan2(q, k) in (0, pi), n >= 0"


@dataclass(frozen=True)
class BarrierScattering:
    E: float
    h: float
    k: float
    q: float
    R: complex
    theta: float


def _check_energy(E: float, h: float):
    if not (math.isfinite(E) and math.isfinite(h)):
        raise ValueError("E and h must be finite")
    if E <= 0:
        raise ValueError(f"energy must be positive, got E={E}")
    if E >= h:
        raise ValueError(f"E={E} >= h={h}: transmission regime is not handled")


def reflection(E: float, h: float, m: float = 1.0, hbar: float = 1.0) -> BarrierScattering:
    _check_energy(E, h)
    k = math.sqrt(2 * m * E) / hbar
    q = math.sqrt(2 * m * (h - E)) / hbar
    R = complex(k, -q) / complex(k, q)
    return BarrierScattering(E, h, k, q, R, 2 * math.atan2(q, k))


def theta_from_cot(k: float, q: float) -> float:
    """``arccot((k^2 - q^2) / (2kq))`` on the branch ``(0, pi)``.

    Written as ``pi/2 - atan(c)``; finite at ``k = q`` where ``c = 0``.
    """
    return 0.5 * math.pi - math.atan((k * k - q * q) / (2 * k * q))


@dataclass(frozen=True)
class Level:
    n: int
    k: float
    E: float


@dataclass(frozen=True)
class WellLevels:
    L: float
    h: float
    levels: tuple[Level, ...]

    @property
    def energies(self) -> np.ndarray:
        return np.array([lv.E for lv in self.levels])

    def __len__(self):
        return len(self.levels)


def _check_well(L: float, h: float):
    if not (math.isfinite(L) and L > 0 and math.isfinite(h) and h > 0):
        raise ValueError("well width L and height h must be positive and finite")


def _wall_angle(k: float, k_max: float) -> float:
    # theta(E(k)) from the wall's reflection phase; equals 2*atan2(q, k)
    q = math.sqrt(max(k_max * k_max - k * k, 0.0))
    return 2 * math.atan2(q, k)


def round_trip_factor(k: float, L: float, h: float, m: float = 1.0, hbar: float = 1.0) -> complex:
    """Ratio between successive same-direction terms of the image series.

    Going from image ``r`` to ``r + 2`` adds ``2L`` of path and one
    reflection at each wall.
    """
    E = (hbar * k) ** 2 / (2 * m)
    rule = PhaseRule.uniform_angle(reflection(E, h, m, hbar).theta)
    return complex(np.exp(2j * k * L)) * phase(rule, 2)


def quantization_residual(k: float, n: int, L: float, h: float, m: float = 1.0, hbar: float = 1.0) -> float:
    k_max = math.sqrt(2 * m * h) / hbar
    return k * L - _wall_angle(k, k_max) - n * math.pi


def _bisect(f, lo: float, hi: float, tol: float) -> float:
    flo = f(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fmid = f(mid)
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def well_levels_quantization(
    L: float,
    h: float,
    m: float = 1.0,
    hbar: float = 1.0,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> WellLevels:
    """Bound levels from the reflection-phase quantization condition.

    ``g(k) = kL - theta`` rises monotonically from ``-pi`` to ``k_max L``.
    The scan brackets every crossing of ``n pi``; bisection refines it
    down to ``abs_tol`` in ``k`` (or to adjacent doubles).
    """
    _check_well(L, h)
    k_max = math.sqrt(2 * m * h) / hbar

    def g(k):
        return k * L - _wall_angle(k, k_max)

    step = math.pi / (10 * L)
    grid = np.linspace(0.0, k_max, max(int(math.ceil(k_max / step)), 1) + 1)
    values = np.array([g(k) for k in grid])
    found = []
    for a, b, ga, gb in zip(grid[:-1], grid[1:], values[:-1], values[1:]):
        n_lo = max(0, math.floor(ga / math.pi) + 1)
        for n in range(n_lo, math.floor(gb / math.pi) + 1):
            if n * math.pi == gb and b == k_max:
                continue  # threshold state with E = h is not bound
            k = _bisect(lambda kk, n=n: g(kk) - n * math.pi, a, b, policy.abs_tol)
            found.append((n, k))
    found = sorted(dict(found).items())
    levels = tuple(Level(n, k, (hbar * k) ** 2 / (2 * m)) for n, k in found)
    return WellLevels(L, h, levels)


def well_levels_oracle(L: float, h: float, m: float = 1.0, hbar: float = 1.0) -> WellLevels:
    """Bound levels of the symmetric well by even/odd matching.

    With ``z = kL/2`` and ``z0 = k_max L/2``, even states solve
    ``z sin z = w cos z`` and odd states ``z cos z = -w sin z``, where
    ``w = sqrt(z0^2 - z^2)``.  Each quarter period ``(j pi/2, (j+1) pi/2)``
    below ``z0`` holds exactly one root, even for even ``j``.
    """
    _check_well(L, h)
    z0 = L * math.sqrt(2 * m * h) / (2 * hbar)

    def even(z):
        return z * math.sin(z) - math.sqrt(max(z0 * z0 - z * z, 0.0)) * math.cos(z)

    def odd(z):
        return z * math.cos(z) + math.sqrt(max(z0 * z0 - z * z, 0.0)) * math.sin(z)

    levels = []
    j = 0
    while j * math.pi / 2 < z0:
        f = even if j % 2 == 0 else odd
        lo = j * math.pi / 2
        hi = min((j + 1) * math.pi / 2, z0)
        if f(lo) * f(hi) < 0:
            z = brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
        elif f(hi) == 0:
            z = hi
        else:
            j += 1
            continue
        if z < z0:
            k = 2 * z / L
            levels.append(Level(j, k, (hbar * k) ** 2 / (2 * m)))
        j += 1
    return WellLevels(L, h, tuple(levels))
