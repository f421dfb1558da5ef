"""Image points, reflection counting and the auxiliary phase of each path.

Unfolding the segment along the real line, the classical path with index
``r`` runs straight from ``x`` to the image ``y_r``.  Every line ``jL``
it crosses is one reflection: odd ``j`` at the right end, even ``j`` at
the left end.  Paths with ``r > 0`` therefore hit the right end first,
paths with ``r < 0`` the left end.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterator

from .core import BoundaryKind, SegmentConfig

REFLECTION_PHASE = {BoundaryKind.DIRICHLET: -1.0 + 0j, BoundaryKind.NEUMANN: 1.0 + 0j}


@dataclass(frozen=True)
class PhaseRule:
    """Phase picked up per reflection at each endpoint."""

    left_phase: complex
    right_phase: complex

    def __post_init__(self):
        for p in (self.left_phase, self.right_phase):
            if not math.isclose(abs(p), 1.0, rel_tol=0, abs_tol=1e-12):
                raise ValueError(f"reflection phase {p} is not unimodular")

    @classmethod
    def from_config(cls, cfg: SegmentConfig) -> "PhaseRule":
        return cls(REFLECTION_PHASE[cfg.left], REFLECTION_PHASE[cfg.right])

    @classmethod
    def from_bc(cls, bc: str) -> "PhaseRule":
        return cls.from_config(SegmentConfig.from_bc(bc))

    @classmethod
    def uniform_angle(cls, theta: float) -> "PhaseRule":
        """Both walls reflect with ``exp(-i theta)`` (finite step barrier)."""
        p = cmath.exp(-1j * theta)
        return cls(p, p)


@dataclass(frozen=True)
class ImagePath:
    r: int
    y_r: float
    bounces_left: int
    bounces_right: int
    epsilon: complex


def image_point(r: int, y: float, L: float) -> float:
    if r % 2 == 0:
        return r * L + y
    return (r + 1) * L - y


def bounce_counts(r: int) -> tuple[int, int]:
    """Reflections ``(left, right)`` along path ``r``."""
    a = abs(r)
    first, second = (a + 1) // 2, a // 2
    if r > 0:
        return second, first
    return first, second


def phase(rule: PhaseRule, r: int) -> complex:
    left, right = bounce_counts(r)
    return rule.left_phase**left * rule.right_phase**right


def image_path(rule: PhaseRule, r: int, y: float, L: float) -> ImagePath:
    left, right = bounce_counts(r)
    return ImagePath(r, image_point(r, y, L), left, right, phase(rule, r))


def shell_order(max_shell: int) -> Iterator[int]:
    """0, 1, -1, 2, -2, ..., max_shell, -max_shell."""
    yield 0
    for j in range(1, max_shell + 1):
        yield j
        yield -j


def classical_path(r: int, x: float, y: float, t0: float, t1: float, L: float) -> list[tuple[float, float]]:
    """Vertices ``(t, position)`` of the reflected straight-line path ``r``.

    Built by walking the bounce sequence at constant speed, wall to wall.
    """
    if not t1 > t0:
        raise ValueError("classical path needs t1 > t0")
    if not (0 <= x <= L and 0 <= y <= L):
        raise ValueError("endpoints must lie in [0, L]")
    vertices = [(t0, x)]
    if r == 0:
        vertices.append((t1, y))
        return vertices
    speed = abs(image_point(r, y, L) - x) / (t1 - t0)
    # r > 0 heads right first, r < 0 heads left first
    wall = L if r > 0 else 0.0
    t = t0 + abs(wall - x) / speed
    for _ in range(abs(r)):
        vertices.append((t, wall))
        wall = L - wall
        t += L / speed
    vertices.append((t1, y))
    return vertices
