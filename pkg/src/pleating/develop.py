"""Pleated-plane development of a coordinate tuple.

Triangle flags (points of CP^1 at the three corners) are propagated from
a base triangle pinned at (0, 1, inf) across interior arcs: crossing arc
``a`` out of a triangle whose quad labels give known flags v0, v1, v2 puts
the far apex at the unique v3 with cr(v0, v1, v2, v3) = x_a. Developing
along a BFS spanning tree of the dual graph gives a fundamental domain;
the cotree arcs give deck maps, which generate the monodromy.

Walks in the dual graph (a start triangle and a sequence of crossed
half-edges) are developed the same way; they realize arbitrary elements of
the fundamental group and lifts of marked points independently of the
spanning tree, which is what flip comparisons need.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace

from .coords import CoordinateTuple, check_generic
from .exceptions import Degenerate, PatchTooLarge
from .mobius import (
    INF,
    ONE,
    POINT_TOL,
    ZERO,
    MoebiusMap,
    ProjectivePoint,
    cross_ratio,
    moebius_between,
    solve_fourth,
)
from .surface import DualGraph, Triangulation, dual_graph, flip, tree_path

Flags = tuple[ProjectivePoint, ProjectivePoint, ProjectivePoint]

BASE_FLAGS: Flags = (ZERO, ONE, INF)
PATCH_BUDGET = 100_000


def cross(tri: Triangulation, coords, flags: Flags, h: int) -> tuple[int, Flags]:
    """Develop across half-edge ``h`` of the triangle carrying ``flags``.

    Returns the far triangle and its flags by slot.
    """
    i = tri.slot_of(h)
    p, q, r = flags[i], flags[(i + 1) % 3], flags[(i + 2) % 3]
    s = solve_fourth(q, r, p, coords[tri.arc_of(h)])
    hp = tri.twin(h)
    j = tri.slot_of(hp)
    new = [None, None, None]
    new[j] = q
    new[(j + 1) % 3] = p
    new[(j + 2) % 3] = s
    return tri.triangle_of(hp), tuple(new)


@dataclass(frozen=True, eq=False)
class DevelopedComplex:
    tri: Triangulation
    coords: CoordinateTuple
    dual: DualGraph
    base_flags: tuple[Flags, ...]
    deck: dict  # cotree arc -> MoebiusMap

    def continuation(self, a: int) -> Flags:
        """Flags of the far triangle of ``a`` developed from the near triangle."""
        h = self.tri.pairing[a][0]
        _, flags = cross(self.tri, self.coords, self.base_flags[self.tri.triangle_of(h)], h)
        return flags

    def deck_map(self, a: int) -> MoebiusMap:
        """Map sending the stored far-triangle flags of ``a`` onto its continuation.

        The identity for tree arcs.
        """
        far = self.tri.triangle_of(self.tri.pairing[a][1])
        return moebius_between(self.base_flags[far], self.continuation(a))


def develop(tri: Triangulation, coords: CoordinateTuple, base: int = 0) -> DevelopedComplex:
    check_generic(coords, tri)
    dg = dual_graph(tri, root=base)
    flags: list = [None] * tri.n_triangles
    flags[base] = BASE_FLAGS
    for u in dg.order[1:]:
        t, a = dg.parent[u]
        h, hp = tri.pairing[a]
        h = h if tri.triangle_of(h) == t else hp
        far, new = cross(tri, coords, flags[t], h)
        assert far == u
        flags[u] = new
    dev = DevelopedComplex(tri, coords, dg, tuple(flags), {})
    deck = {a: dev.deck_map(a) for a in dg.cotree}
    return replace(dev, deck=deck)


# -- framed representation -------------------------------------------------


@dataclass(frozen=True, eq=False)
class FramedRepresentation:
    """Monodromy on the cotree generators plus the framing of marked points.

    ``framing`` maps vertex id -> flag; ``boundary_framing`` lists, per
    boundary component, the framing flags in boundary order.
    """

    generators: tuple[tuple[int, MoebiusMap], ...]
    framing: dict
    boundary_framing: dict = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def word(self, word) -> MoebiusMap:
        """Evaluate a word given as nonzero ints: +i is generator i-1, -i its inverse."""
        out = MoebiusMap.identity()
        for letter in word:
            g = self.generators[abs(letter) - 1][1]
            out = out @ (g if letter > 0 else g.inverse())
        return out


def framing(dev: DevelopedComplex) -> dict:
    """Flag of each marked point at its least (triangle, corner) occurrence."""
    tri = dev.tri
    return {
        v: dev.base_flags[cs[0].triangle][cs[0].slot] for v, cs in tri.vertex_corners.items()
    }


def boundary_framing(dev: DevelopedComplex) -> dict:
    tri = dev.tri
    fr = framing(dev)
    out = {}
    for comp, hs in sorted(tri.boundary):
        out[comp] = [fr[tri.vertex_of(tri.start_corner(h))] for h in hs]
    return out


def monodromy(dev: DevelopedComplex) -> FramedRepresentation:
    gens = tuple((a, dev.deck[a]) for a in dev.dual.cotree)
    return FramedRepresentation(gens, framing(dev), boundary_framing(dev))


# -- checks ---------------------------------------------------------------


def verify_equivariance(dev: DevelopedComplex) -> float:
    """Largest projective residual of the development.

    Tree arcs: stored far flags against the continuation. Cotree arcs:
    deck-mapped stored far flags against the continuation.
    """
    tri = dev.tri
    worst = 0.0
    for a in tri.arcs:
        far = tri.triangle_of(tri.pairing[a][1])
        cont = dev.continuation(a)
        g = dev.deck.get(a)
        for slot in range(3):
            stored = dev.base_flags[far][slot]
            if g is not None:
                stored = g(stored)
            worst = max(worst, stored.distance(cont[slot]))
    return worst


def extract_coordinates(dev: DevelopedComplex, from_far_side: bool = False) -> CoordinateTuple:
    """Cross-ratio of the developed quad around every interior arc.

    ``from_far_side`` reads each quad with the swapped labelling
    (v2, v3, v0, v1); the values must agree.
    """
    tri = dev.tri
    out = []
    for a in tri.arcs:
        h, hp = tri.pairing[a]
        t, i = tri.triangle_of(h), tri.slot_of(h)
        tp, j = tri.triangle_of(hp), tri.slot_of(hp)
        near = dev.base_flags[t]
        far = dev.base_flags[tp]
        g = dev.deck.get(a)
        if g is not None:
            far = tuple(g(p) for p in far)
        p, q, r = near[i], near[(i + 1) % 3], near[(i + 2) % 3]
        s = far[(j + 2) % 3]
        out.append(cross_ratio(p, s, q, r) if from_far_side else cross_ratio(q, r, p, s))
    return CoordinateTuple(tuple(out), tri.digest)


@dataclass(frozen=True)
class NondegeneracyCertificate:
    boundary_separation: float  # min distance between boundary-arc endpoint flags (refutes D1)
    triangle_separation: float  # min distance between flags of one triangle
    distinct_points: int  # distinct flags found, capped at 3
    d2_witness: str


def _distinct(points, tol, cap=3):
    reps = []
    for p in points:
        if all(p.distance(q) >= tol for q in reps):
            reps.append(p)
            if len(reps) >= cap:
                break
    return reps


def certify_nondegenerate(boundary_pairs, points, generators, tol: float = POINT_TOL, triangle_separation=math.nan):
    """Standalone D1/D2 check on raw framing data.

    ``boundary_pairs`` are endpoint flags of boundary arcs, ``points`` the
    framing flags on a fundamental domain, ``generators`` the monodromy.
    Raises :class:`Degenerate` listing every violated condition.
    """
    bad, witness = [], {}
    sep = min((p.distance(q) for p, q in boundary_pairs), default=math.inf)
    collapsed = [k for k, (p, q) in enumerate(boundary_pairs) if p.distance(q) < tol]
    if collapsed:
        bad.append("D1")
        witness["D1"] = {"boundary_arcs": collapsed}
    reps = _distinct(points, tol)
    if len(reps) >= 3:
        d2 = "three distinct framing points"
    else:
        pair = reps
        movers = []
        for k, g in enumerate(generators):
            images = [g(p) for p in pair]
            if not all(any(im.distance(q) < tol for q in pair) for im in images):
                movers.append(k)
        if movers:
            d2 = f"generator {movers[0]} does not preserve the {len(pair)}-point framing set"
        else:
            bad.append("D2")
            witness["D2"] = {"points": pair, "generators": len(generators)}
            d2 = ""
    if bad:
        raise Degenerate(bad, witness)
    return NondegeneracyCertificate(sep, triangle_separation, len(reps), d2)


def nondegeneracy_certificate(dev: DevelopedComplex, tol: float = POINT_TOL) -> NondegeneracyCertificate:
    tri = dev.tri
    pairs = []
    for h in tri.boundary_half_edges:
        t, s = tri.triangle_of(h), tri.slot_of(h)
        pairs.append((dev.base_flags[t][s], dev.base_flags[t][(s + 1) % 3]))
    tsep = min(
        min(f[0].distance(f[1]), f[1].distance(f[2]), f[2].distance(f[0])) for f in dev.base_flags
    )
    points = [p for f in dev.base_flags for p in f]
    gens = [g for _, g in monodromy(dev).generators]
    return certify_nondegenerate(pairs, points, gens, tol, tsep)


# -- walks ---------------------------------------------------------------


@dataclass(frozen=True)
class Walk:
    start: int
    crossings: tuple[int, ...] = ()

    def end(self, tri: Triangulation) -> int:
        t = self.start
        for h in self.crossings:
            if tri.triangle_of(h) != t:
                raise ValueError(f"half-edge {h} is not in triangle {t}")
            t = tri.triangle_of(tri.twin(h))
        return t

    def inverse(self, tri: Triangulation) -> Walk:
        return Walk(self.end(tri), tuple(tri.twin(h) for h in reversed(self.crossings)))

    def __add__(self, other: Walk) -> Walk:
        return Walk(self.start, self.crossings + other.crossings)

    def reduced(self, tri: Triangulation) -> Walk:
        """Cancel immediate backtracks (h followed by its twin); same endpoints, same developed flags."""
        out = []
        for h in self.crossings:
            if out and tri.twin(out[-1]) == h:
                out.pop()
            else:
                out.append(h)
        return Walk(self.start, tuple(out))


def walk_map(tri: Triangulation, coords, walk: Walk) -> MoebiusMap:
    """Product of per-crossing frame changes along ``walk``.

    Each factor carries the standard frame (0, 1, inf) of the next triangle
    to its developed position in the frame of the current one, so factors
    stay well conditioned even when long walks squeeze the developed flags
    together. Backtracks are cancelled first; they only inflate rounding.
    """
    walk = walk.reduced(tri)
    t, g = walk.start, MoebiusMap.identity()
    for h in walk.crossings:
        if tri.triangle_of(h) != t:
            raise ValueError(f"half-edge {h} is not in triangle {t}")
        t, local = cross(tri, coords, BASE_FLAGS, h)
        g = g @ moebius_between(BASE_FLAGS, local)
    return g


def develop_walk(tri: Triangulation, coords, walk: Walk, start_flags: Flags = BASE_FLAGS) -> Flags:
    """Flags of the walk's end triangle when its start triangle carries ``start_flags``."""
    g = walk_map(tri, coords, walk)
    if start_flags is not BASE_FLAGS:
        g = moebius_between(BASE_FLAGS, start_flags) @ g
    return tuple(g(p) for p in BASE_FLAGS)


def walk_holonomy(tri: Triangulation, coords, walk: Walk, start_flags: Flags = BASE_FLAGS) -> MoebiusMap:
    """Moebius map carrying the start flags to the flags developed around a closed walk."""
    if walk.end(tri) != walk.start:
        raise ValueError("holonomy needs a closed walk")
    g = walk_map(tri, coords, walk)
    if start_flags is BASE_FLAGS:
        return g
    a = moebius_between(BASE_FLAGS, start_flags)
    return a @ g @ a.inverse()


def generator_walk(dev: DevelopedComplex, a: int) -> Walk:
    """Closed walk from the base triangle realizing the generator of cotree arc ``a``."""
    tri, dg = dev.tri, dev.dual
    h, hp = tri.pairing[a]
    to_near = Walk(dg.root, tuple(tree_path(dg, tri, tri.triangle_of(h))))
    to_far = Walk(dg.root, tuple(tree_path(dg, tri, tri.triangle_of(hp))))
    return to_near + Walk(tri.triangle_of(h), (h,)) + to_far.inverse(tri)


def word_walk(dev: DevelopedComplex, word) -> Walk:
    walk = Walk(dev.dual.root)
    for letter in word:
        g = generator_walk(dev, dev.dual.cotree[abs(letter) - 1])
        walk = walk + (g if letter > 0 else g.inverse(dev.tri))
    return walk


def transport_walk(tri: Triangulation, a: int, walk: Walk, closed: bool = False, target: int | None = None) -> Walk:
    """Homotopic walk in ``flip(tri, a)``.

    Crossings of the old diagonal are dropped and crossings of the new one
    inserted wherever consecutive steps land in different halves of the
    quadrilateral. Closed walks are read cyclically (the result is a
    conjugate loop). ``target`` is a non-diagonal half-edge whose triangle
    an open walk must end in; the start of an open walk keeps its triangle id.
    """
    new = flip(tri, a)
    diag = set(tri.pairing[a])
    steps = [h for h in walk.crossings if h not in diag]

    def bridge(cur, want):
        if cur == want:
            return []
        h = next(x for x in diag if new.triangle_of(x) == cur)
        if new.triangle_of(new.twin(h)) != want:
            raise ValueError("walk leaves the flipped quadrilateral unexpectedly")
        return [h]

    if closed:
        if not steps:
            return Walk(walk.start if walk.start not in new.arc_triangles(a) else new.triangle_of(min(diag)))
        out = []
        for k, h in enumerate(steps):
            out.append(h)
            nxt = steps[(k + 1) % len(steps)]
            out += bridge(new.triangle_of(new.twin(h)), new.triangle_of(nxt))
        return Walk(new.triangle_of(steps[0]), tuple(out))

    out = []
    cur = walk.start
    for h in steps:
        out += bridge(cur, new.triangle_of(h))
        out.append(h)
        cur = new.triangle_of(new.twin(h))
    if target is not None:
        out += bridge(cur, new.triangle_of(target))
    return Walk(walk.start, tuple(out))


@dataclass(frozen=True)
class Lift:
    """A lift of a marked point: the corner of the walk's end triangle at
    the start (or end, if ``at_end``) of half-edge ``half_edge``."""

    walk: Walk
    half_edge: int
    at_end: bool = False

    def corner_slot(self, tri: Triangulation) -> int:
        return (tri.slot_of(self.half_edge) + (1 if self.at_end else 0)) % 3


def lift_flag(tri: Triangulation, coords, lift: Lift, start_flags: Flags = BASE_FLAGS) -> ProjectivePoint:
    if lift.walk.end(tri) != tri.triangle_of(lift.half_edge):
        raise ValueError("lift half-edge is not in the walk's end triangle")
    return develop_walk(tri, coords, lift.walk, start_flags)[lift.corner_slot(tri)]


def corner_lifts(tri: Triangulation, walk: Walk, avoid=()) -> list[Lift]:
    """The three corner lifts of the walk's end triangle, named through half-edges not in ``avoid``."""
    t = walk.end(tri)
    out = []
    for s in range(3):
        h = tri.triangles[t][s]
        out.append(Lift(walk, h) if h not in avoid else Lift(walk, tri.triangles[t][(s + 2) % 3], at_end=True))
    return out


def transport_lift(tri: Triangulation, a: int, lift: Lift) -> Lift:
    if lift.half_edge in tri.pairing[a]:
        raise ValueError("a lift named through the flipped diagonal has no counterpart")
    return Lift(transport_walk(tri, a, lift.walk, target=lift.half_edge), lift.half_edge, lift.at_end)


# -- finite patch of the universal cover ------------------------------------


@dataclass(frozen=True)
class PatchTriangle:
    triangle: int
    flags: Flags
    word: tuple[int, ...]  # crossed half-edges from the base triangle


def develop_patch(tri: Triangulation, coords, depth: int, budget: int = PATCH_BUDGET, base: int = 0) -> list[PatchTriangle]:
    """All universal-cover triangles within dual distance ``depth`` of the base."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    check_generic(coords, tri)
    out = [PatchTriangle(base, BASE_FLAGS, ())]
    frontier = deque([(out[0], None)])
    while frontier:
        node, came_from = frontier.popleft()
        if len(node.word) == depth:
            continue
        for h in tri.triangles[node.triangle]:
            if tri.is_boundary(h) or h == came_from:
                continue
            if len(out) >= budget:
                raise PatchTooLarge(f"patch of depth {depth} exceeds the budget of {budget} triangles")
            t, flags = cross(tri, coords, node.flags, h)
            child = PatchTriangle(t, flags, node.word + (h,))
            out.append(child)
            frontier.append((child, tri.twin(h)))
    return out


# -- pleat data ---------------------------------------------------------------


def normalized_bend(x: complex) -> float:
    b = math.atan2(x.imag, x.real) % (2 * math.pi)
    return 0.0 if b >= 2 * math.pi else b


@dataclass(frozen=True)
class PleatData:
    """Per-arc shear ln|x_a| and bend arg(x_a) in [0, 2pi)."""

    shear: tuple[float, ...]
    bend: tuple[float, ...]

    def reconstruct(self) -> list[complex]:
        return [math.exp(s) * complex(math.cos(b), math.sin(b)) for s, b in zip(self.shear, self.bend)]

    def to_dict(self) -> dict:
        return {str(a): {"shear": s, "bend": b} for a, (s, b) in enumerate(zip(self.shear, self.bend))}


def pleat_data(coords: CoordinateTuple) -> PleatData:
    check_generic(coords)
    return PleatData(
        tuple(math.log(abs(x)) for x in coords.values),
        tuple(normalized_bend(x) for x in coords.values),
    )
