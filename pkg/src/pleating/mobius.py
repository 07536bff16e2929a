"""Points of CP^1 and PSL(2, C) arithmetic in homogeneous coordinates.

Cross-ratio convention used throughout the package::

    cr(a, b, c, d) = (a ^ d)(b ^ c) / ((a ^ b)(c ^ d)),   a ^ b = z_a w_b - z_b w_a

so that ``cr(0, 1, inf, z) == -z``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateQuadruple, DegenerateTriple, InvalidCoordinate

# projective-equality tolerance and internal arithmetic tolerance
POINT_TOL = 1e-9
ARITH_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ProjectivePoint:
    """A point [z : w] of CP^1, stored with |z|^2 + |w|^2 = 1."""

    z: complex
    w: complex

    def __post_init__(self):
        z, w = complex(self.z), complex(self.w)
        norm = math.hypot(abs(z), abs(w))
        if norm == 0.0 or not math.isfinite(norm):
            raise ValueError("[0 : 0] and non-finite vectors are not points of CP^1")
        object.__setattr__(self, "z", z / norm)
        object.__setattr__(self, "w", w / norm)

    @classmethod
    def from_affine(cls, value) -> ProjectivePoint:
        if isinstance(value, str):
            if value.strip().lower() not in ("inf", "infinity", "∞"):
                raise ValueError(f"cannot parse point {value!r}")
            return cls(1.0, 0.0)
        value = complex(value)
        if cmath.isinf(value):
            return cls(1.0, 0.0)
        return cls(value, 1.0)

    @property
    def hom(self) -> tuple[complex, complex]:
        return (self.z, self.w)

    def to_affine(self) -> complex:
        """z / w, or ``complex(inf)`` at the point at infinity."""
        if self.w == 0:
            return complex(math.inf, 0.0)
        return self.z / self.w

    def wedge(self, other: ProjectivePoint) -> complex:
        return self.z * other.w - other.z * self.w

    def distance(self, other: ProjectivePoint) -> float:
        """Chordal-type distance |p ^ q| (sine of the angle between the lines)."""
        return abs(self.wedge(other))

    def isclose(self, other: ProjectivePoint, tol: float = POINT_TOL) -> bool:
        return self.distance(other) < tol

    def __repr__(self):
        a = self.to_affine()
        return "ProjectivePoint(inf)" if cmath.isinf(a) else f"ProjectivePoint({a:.6g})"


def point(value) -> ProjectivePoint:
    if isinstance(value, ProjectivePoint):
        return value
    return ProjectivePoint.from_affine(value)


ZERO = ProjectivePoint(0.0, 1.0)
ONE = ProjectivePoint(1.0, 1.0)
INF = ProjectivePoint(1.0, 0.0)


class MoebiusMap:
    """An element of PSL(2, C), stored as a determinant-one 2x2 matrix.

    The overall sign of the matrix carries no meaning; comparisons and
    ``trace_squared`` are sign independent.
    """

    __slots__ = ("_m",)

    def __init__(self, m):
        m = np.array(m, dtype=complex).reshape(2, 2)
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if abs(det) == 0.0 or not np.isfinite(det):
            raise ValueError("singular matrix does not define a Moebius map")
        m = m / cmath.sqrt(det)
        m.setflags(write=False)
        self._m = m

    @classmethod
    def _unit(cls, m: np.ndarray) -> MoebiusMap:
        # m already has determinant one (a product or inverse of normalized maps);
        # recomputing ad - bc would cancel catastrophically for large entries
        out = cls.__new__(cls)
        m.setflags(write=False)
        out._m = m
        return out

    @classmethod
    def identity(cls) -> MoebiusMap:
        return cls(np.eye(2))

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    def __call__(self, p: ProjectivePoint) -> ProjectivePoint:
        m = self._m
        return ProjectivePoint(m[0, 0] * p.z + m[0, 1] * p.w, m[1, 0] * p.z + m[1, 1] * p.w)

    apply = __call__

    def __matmul__(self, other: MoebiusMap) -> MoebiusMap:
        return MoebiusMap._unit(self._m @ other._m)

    def inverse(self) -> MoebiusMap:
        (a, b), (c, d) = self._m
        return MoebiusMap._unit(np.array([[d, -b], [-c, a]]))

    def det(self) -> complex:
        m = self._m
        return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]

    def trace(self) -> complex:
        return self._m[0, 0] + self._m[1, 1]

    def distance(self, other: MoebiusMap) -> float:
        return float(min(np.linalg.norm(self._m - other._m), np.linalg.norm(self._m + other._m)))

    def isclose(self, other: MoebiusMap, tol: float = POINT_TOL) -> bool:
        return self.distance(other) < tol

    def __repr__(self):
        return f"MoebiusMap({self._m.tolist()!r})"


def cross_ratio(p0, p1, p2, p3) -> complex:
    """cr(p0, p1, p2, p3) = (p0^p3)(p1^p2) / ((p0^p1)(p2^p3)).

    Returns ``complex(inf)`` when only the denominator vanishes.
    """
    p0, p1, p2, p3 = map(point, (p0, p1, p2, p3))
    num = p0.wedge(p3) * p1.wedge(p2)
    den = p0.wedge(p1) * p2.wedge(p3)
    # wedges of unit vectors are bounded by 1, so absolute thresholds are meaningful
    small = ARITH_TOL**2
    if abs(den) < small:
        if abs(num) < small:
            raise DegenerateQuadruple("cross-ratio is 0/0 for this quadruple")
        return complex(math.inf, 0.0)
    return num / den


def _check_distinct(points, tol):
    for i in range(3):
        for j in range(i + 1, 3):
            if points[i].distance(points[j]) < tol:
                raise DegenerateTriple(f"points {i} and {j} coincide")


def solve_fourth(p0, p1, p2, c) -> ProjectivePoint:
    """The unique p3 with cross_ratio(p0, p1, p2, p3) == c.

    Linear in p3: p3 = (p1^p2) p0 - c (p0^p1) p2.
    """
    p0, p1, p2 = map(point, (p0, p1, p2))
    _check_distinct((p0, p1, p2), ARITH_TOL)
    c = complex(c)
    if c == 0 or not cmath.isfinite(c):
        raise InvalidCoordinate(f"cross-ratio value {c} is not in C*")
    a = p1.wedge(p2)
    b = c * p0.wedge(p1)
    return ProjectivePoint(a * p0.z - b * p2.z, a * p0.w - b * p2.w)


def map_from_triple(p0, p1, p2) -> MoebiusMap:
    """The Moebius map sending (0, 1, inf) to (p0, p1, p2)."""
    p0, p1, p2 = map(point, (p0, p1, p2))
    _check_distinct((p0, p1, p2), ARITH_TOL)
    # columns alpha*p2 (image of inf) and beta*p0 (image of 0) with alpha*p2 + beta*p0 = p1
    den = p2.wedge(p0)
    alpha = p1.wedge(p0) / den
    beta = p2.wedge(p1) / den
    return MoebiusMap([[alpha * p2.z, beta * p0.z], [alpha * p2.w, beta * p0.w]])


def moebius_between(src, dst) -> MoebiusMap:
    """The Moebius map taking the triple ``src`` pointwise onto ``dst``."""
    return map_from_triple(*dst) @ map_from_triple(*src).inverse()


def trace_squared(m: MoebiusMap) -> complex:
    return complex(m.trace() ** 2)
