"""Cross-ratio coordinate tuples on a triangulation and their mutation under flips."""

from __future__ import annotations

import cmath
import math
from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from .exceptions import MutationDegenerate, NonGenericCoordinates
from .surface import Triangulation, flip


@dataclass(frozen=True, eq=False)
class CoordinateTuple:
    """Map interior arc id -> complex coordinate, bound to a triangulation digest."""

    values: tuple[complex, ...]
    triangulation: str

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(complex(x) for x in self.values))

    @classmethod
    def for_triangulation(cls, tri: Triangulation, values) -> CoordinateTuple:
        if isinstance(values, Mapping):
            if set(values) != set(tri.arcs):
                raise NonGenericCoordinates(["incomplete tuple: arc set does not match the triangulation"])
            values = [values[a] for a in tri.arcs]
        return cls(tuple(values), tri.digest)

    def __getitem__(self, a: int) -> complex:
        return self.values[a]

    def __iter__(self):
        return iter(range(len(self.values)))

    def __len__(self):
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=complex)

    def to_dict(self) -> dict:
        return {
            "triangulation": self.triangulation,
            "coords": {str(a): [x.real, x.imag] for a, x in enumerate(self.values)},
        }

    @classmethod
    def from_dict(cls, data: dict, tri: Triangulation | None = None) -> CoordinateTuple:
        raw = data["coords"]
        if tri is not None and data.get("triangulation") not in (None, tri.digest):
            raise NonGenericCoordinates(["coordinate file is bound to a different triangulation"])
        keys = sorted(int(k) for k in raw)
        if keys != list(range(len(keys))):
            raise NonGenericCoordinates(["incomplete tuple: arc ids must be 0..N-1"])
        values = [complex(*raw[str(k)]) for k in keys]
        return cls(tuple(values), data.get("triangulation") or (tri.digest if tri else ""))

    def isclose(self, other: CoordinateTuple, rel: float = 1e-12) -> bool:
        return len(self) == len(other) and max_relative_error(self, other) < rel

    def __eq__(self, other):
        if not isinstance(other, CoordinateTuple):
            return NotImplemented
        return self.values == other.values and self.triangulation == other.triangulation

    def __hash__(self):
        return hash((self.values, self.triangulation))


def max_relative_error(c: CoordinateTuple, ref: CoordinateTuple) -> float:
    a, b = c.as_array(), ref.as_array()
    if a.shape != b.shape:
        return math.inf
    if not len(a):
        return 0.0
    return float(np.max(np.abs(a - b) / np.abs(b)))


def genericity_violations(c: CoordinateTuple, tri: Triangulation | None = None) -> list[str]:
    out = []
    if tri is not None:
        if len(c) != tri.n_arcs:
            out.append(f"incomplete tuple: {len(c)} values for {tri.n_arcs} interior arcs")
        if c.triangulation and c.triangulation != tri.digest:
            out.append("tuple is bound to a different triangulation")
    for a, x in enumerate(c.values):
        if not cmath.isfinite(x):
            out.append(f"non-finite coordinate at arc {a}")
        elif x == 0:
            out.append(f"zero coordinate at arc {a}")
    return out


def validate_generic(c: CoordinateTuple, tri: Triangulation | None = None) -> list[str]:
    """Empty list when every value lies in C* and the domain is complete."""
    return genericity_violations(c, tri)


def check_generic(c: CoordinateTuple, tri: Triangulation | None = None) -> CoordinateTuple:
    bad = genericity_violations(c, tri)
    if bad:
        raise NonGenericCoordinates(bad)
    return c


def random_generic(tri: Triangulation, seed: int, log_mod_bound: float = 1.6, positive: bool = False) -> CoordinateTuple:
    """Seeded tuple with |log|x|| <= log_mod_bound and uniform argument.

    ``positive=True`` gives a positive real (Fuchsian) tuple.
    """
    if not log_mod_bound > 0:
        raise ValueError("log_mod_bound must be positive")
    rng = np.random.default_rng(seed)
    logs = rng.uniform(-log_mod_bound, log_mod_bound, tri.n_arcs)
    args = rng.uniform(0.0, 2 * math.pi, tri.n_arcs)
    if positive:
        values = [math.exp(s) for s in logs]
    else:
        values = [cmath.rect(math.exp(s), t) for s, t in zip(logs, args)]
    return CoordinateTuple(tuple(values), tri.digest)


def mutate(c: CoordinateTuple, tri: Triangulation, a: int, tol: float = 1e-12) -> CoordinateTuple:
    """Cluster X-mutation of ``c`` at arc ``a``; the result lives on ``flip(tri, a)``.

    With quad sides (e01, e12, e23, e30) the flipped diagonal gets 1/x_a,
    e12 and e30 are multiplied by (1 + x_a), e01 and e23 by
    (1 + 1/x_a)^-1, once per occurrence when a side arc repeats. This
    pairing is the one compatible with the cross-ratio convention of
    :mod:`pleating.mobius` and counterclockwise quad labels; monodromy
    traces are unchanged by flip + mutate.
    """
    x = c[a]
    if abs(1 + x) <= tol * max(1.0, abs(x)):
        raise MutationDegenerate(f"x_{a} = -1: the flipped diagonal would join coincident flags")
    q = tri.quad_labels(a)
    up = 1 + x
    down = 1 / (1 + 1 / x)
    new = list(c.values)
    for side, factor in zip(q.sides, (down, up, down, up)):
        if side is not None:
            new[side] *= factor
    new[a] = 1 / x
    return CoordinateTuple(tuple(new), flip(tri, a).digest)


def incident_product(c: CoordinateTuple, tri: Triangulation, vertex: int) -> complex:
    """Product of x_a over arcs at ``vertex``, one factor per arc end at it."""
    prod = 1 + 0j
    for a, (h, hp) in enumerate(tri.pairing):
        for e in (h, hp):
            if tri.vertex_of(tri.start_corner(e)) == vertex:
                prod *= c[a]
    return prod
