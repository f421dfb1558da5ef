"""Problem configuration, complex evolution time and numeric policy.

Conventions used throughout the package:

* The propagator carries the factor ``exp(-i E dt / hbar)``.
* Euclidean (imaginary) time is ``dt = -i tau`` with ``tau > 0``; every
  series then converges absolutely.
* Real time (``im(dt) == 0``) is opt-in.  The kernels are distributions
  there and the sums are truncated at ``max_terms`` without a certificate.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class ConfigError(ValueError):
    """Invalid physical configuration or numeric policy."""


class SeriesTruncationError(RuntimeError):
    """A series needed more terms than the policy allows."""


class BoundaryKind(enum.Enum):
    DIRICHLET = "D"
    NEUMANN = "N"

    @classmethod
    def parse(cls, code: str) -> "BoundaryKind":
        try:
            return cls(code.upper())
        except ValueError:
            raise ConfigError(f"unknown boundary kind {code!r}, expected D or N") from None


@dataclass(frozen=True)
class SegmentConfig:
    """Free particle on ``[0, L]`` with a boundary condition at each end.

    Construction does not validate; use :func:`validate_config` or
    :func:`require_valid`.
    """

    L: float = 1.0
    m: float = 1.0
    hbar: float = 1.0
    left: BoundaryKind = BoundaryKind.DIRICHLET
    right: BoundaryKind = BoundaryKind.DIRICHLET

    @classmethod
    def from_bc(cls, bc: str, L: float = 1.0, m: float = 1.0, hbar: float = 1.0) -> "SegmentConfig":
        """Build from a two-letter code such as ``"ND"`` (left, right)."""
        if len(bc) != 2:
            raise ConfigError(f"boundary code must have two letters, got {bc!r}")
        return cls(L, m, hbar, BoundaryKind.parse(bc[0]), BoundaryKind.parse(bc[1]))

    @property
    def bc(self) -> str:
        return self.left.value + self.right.value


def validate_config(cfg: SegmentConfig) -> list[str]:
    """Return every violated invariant of ``cfg``; an empty list means ok."""
    errors = []
    for name in ("L", "m", "hbar"):
        value = getattr(cfg, name)
        try:
            ok = math.isfinite(value) and value > 0
        except TypeError:
            ok = False
        if not ok:
            errors.append(f"{name} must be > 0 and finite")
    for side in ("left", "right"):
        if not isinstance(getattr(cfg, side), BoundaryKind):
            errors.append(f"{side} must be a BoundaryKind")
    return errors


def require_valid(cfg: SegmentConfig) -> SegmentConfig:
    errors = validate_config(cfg)
    if errors:
        raise ConfigError("; ".join(errors))
    return cfg


@dataclass(frozen=True)
class EvolutionTime:
    """Complex time interval ``dt = t1 - t0``.

    Admissible iff ``im(dt) < 0``, or ``im(dt) == 0`` with ``allow_real``.
    Inadmissible values are rejected on construction.
    """

    re: float
    im: float
    allow_real: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ConfigError("evolution time must be finite")
        if self.im > 0:
            raise ConfigError("evolution time must have im(dt) <= 0")
        if self.im == 0:
            if not self.allow_real:
                raise ConfigError("real evolution time requires allow_real=True")
            if self.re == 0:
                raise ConfigError("evolution time must be nonzero")

    @classmethod
    def from_complex(cls, dt: complex, allow_real: bool = False) -> "EvolutionTime":
        dt = complex(dt)
        return cls(dt.real, dt.imag, allow_real)

    @property
    def delta(self) -> complex:
        return complex(self.re, self.im)

    @property
    def damping(self) -> float:
        """``-im(dt)``; the Euclidean decay rate of every series."""
        return -self.im

    @property
    def tau(self) -> float:
        if self.re != 0:
            raise ValueError("dt is not purely Euclidean")
        return -self.im

    @property
    def is_real(self) -> bool:
        return self.im == 0


def make_euclidean(tau: float) -> EvolutionTime:
    """Wick-rotated interval ``dt = -i tau``."""
    tau = float(tau)
    if not math.isfinite(tau) or tau <= 0:
        raise ConfigError(f"tau must be positive and finite, got {tau!r}")
    return EvolutionTime(0.0, -tau)


@dataclass(frozen=True)
class NumericPolicy:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_terms: int = 100_000

    def __post_init__(self):
        if not 0 < self.abs_tol < 1:
            raise ConfigError("abs_tol must lie in (0, 1)")
        if not 0 < self.rel_tol < 1:
            raise ConfigError("rel_tol must lie in (0, 1)")
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise ConfigError("max_terms must be a positive integer")


DEFAULT_POLICY = NumericPolicy()


@dataclass(frozen=True)
class KernelResult:
    """A truncated series value with its certified error bound.

    ``tail_bound`` covers the discarded terms plus a summation rounding
    allowance; it is ``inf`` in real-time mode.
    """

    value: complex
    terms_used: int
    tail_bound: float


def exact_sum(terms: np.ndarray) -> tuple[complex, float]:
    """Correctly rounded sum of complex ``terms`` and its rounding allowance."""
    terms = np.asarray(terms, dtype=complex)
    total = complex(math.fsum(terms.real), math.fsum(terms.imag))
    slack = 2 * float(np.finfo(float).eps) * float(np.sum(np.abs(terms)))
    return total, slack


def gauss_legendre(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped onto ``[a, b]``."""
    t, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return a + half * (t + 1.0), half * w
