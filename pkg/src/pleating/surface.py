"""Ideal triangulations of marked bordered surfaces S_g(n_1, ..., n_k).

A triangulation is a half-edge structure. Each triangle is an ordered
triple of half-edge ids in counterclockwise order; half-edge ``h`` in
slot ``s`` of a triangle runs from corner ``s`` to corner ``s + 1``.
Interior arcs are pairs of half-edges (the arc id is the index in
``pairing``); unpaired half-edges are boundary arcs. Every vertex is a
marked point on the boundary.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property

from .exceptions import InvalidSignature, InvalidTriangulation, NotFlippable


@dataclass(frozen=True)
class Signature:
    """The pair (g, (n_1, ..., n_k)); boundary i carries n_i - 2 marked points."""

    genus: int
    poles: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "poles", tuple(int(n) for n in self.poles))
        object.__setattr__(self, "genus", int(self.genus))

    @property
    def k(self) -> int:
        return len(self.poles)

    @property
    def marked_points(self) -> int:
        return sum(n - 2 for n in self.poles)

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.k

    @property
    def n_interior_arcs(self) -> int:
        return self.marked_points + 6 * self.genus + 3 * self.k - 6

    @property
    def n_triangles(self) -> int:
        return self.marked_points + 4 * self.genus + 2 * self.k - 4

    @property
    def cotree_rank(self) -> int:
        return 2 * self.genus + self.k - 1

    def violations(self) -> list[str]:
        out = []
        if self.genus < 0:
            out.append(f"genus must be non-negative, got {self.genus}")
        if self.k < 1:
            out.append("at least one boundary component (pole) is required")
        for i, n in enumerate(self.poles):
            if n < 3:
                out.append(f"pole {i} has order {n} < 3")
        if self.k >= 1 and self.euler_characteristic >= 0:
            out.append(
                f"Euler characteristic 2 - 2g - k = {self.euler_characteristic} is non-negative; "
                "the punctured surface must have negative Euler characteristic"
            )
        return out

    def check(self) -> Signature:
        bad = self.violations()
        if bad:
            raise InvalidSignature("; ".join(bad))
        return self

    def __str__(self):
        return f"({self.genus},({','.join(map(str, self.poles))}))"


@dataclass(frozen=True)
class Corner:
    triangle: int
    slot: int


@dataclass(frozen=True)
class QuadLabels:
    """Counterclockwise labels of the quadrilateral around an interior arc.

    The arc is the diagonal (v0, v2). ``v0, v1, v2`` are the corners of
    ``near`` (the triangle holding the arc's first half-edge) and ``v3``
    is the apex of ``far``. Sides are arc ids, ``None`` for boundary arcs.
    """

    arc: int
    near: int
    far: int
    corners: tuple[Corner, Corner, Corner, Corner]
    vertices: tuple[int, int, int, int]
    sides: tuple[int | None, int | None, int | None, int | None]
    side_half_edges: tuple[int, int, int, int]

    @property
    def side_multiplicity(self) -> Counter:
        return Counter(s for s in self.sides if s is not None)


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class Triangulation:
    triangles: tuple[tuple[int, int, int], ...]
    pairing: tuple[tuple[int, int], ...]
    boundary: tuple[tuple[int, tuple[int, ...]], ...]

    def __post_init__(self):
        object.__setattr__(self, "triangles", tuple(tuple(int(h) for h in t) for t in self.triangles))
        object.__setattr__(self, "pairing", tuple((int(a), int(b)) for a, b in self.pairing))
        object.__setattr__(
            self, "boundary", tuple((int(c), tuple(int(h) for h in hs)) for c, hs in self.boundary)
        )

    # -- serialization -------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "triangles": [list(t) for t in self.triangles],
            "pairing": [list(p) for p in self.pairing],
            "boundary": [{"component": c, "half_edges": list(hs)} for c, hs in self.boundary],
        }

    @classmethod
    def from_dict(cls, data: dict) -> Triangulation:
        try:
            return cls(
                triangles=data["triangles"],
                pairing=data["pairing"],
                boundary=[(b["component"], b["half_edges"]) for b in data.get("boundary", [])],
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidTriangulation([f"malformed triangulation document: {exc!r}"]) from exc

    @cached_property
    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    # -- half-edge navigation -----------------------------------------

    @cached_property
    def _location(self) -> dict[int, tuple[int, int]]:
        loc = {}
        for t, tri in enumerate(self.triangles):
            for s, h in enumerate(tri):
                loc[h] = (t, s)
        return loc

    @cached_property
    def _twin(self) -> dict[int, int]:
        tw = {}
        for a, b in self.pairing:
            tw[a] = b
            tw[b] = a
        return tw

    @cached_property
    def _arc(self) -> dict[int, int]:
        out = {}
        for i, (a, b) in enumerate(self.pairing):
            out[a] = i
            out[b] = i
        return out

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    @property
    def n_arcs(self) -> int:
        return len(self.pairing)

    @property
    def arcs(self) -> range:
        return range(len(self.pairing))

    @cached_property
    def half_edges(self) -> tuple[int, ...]:
        return tuple(sorted(self._location))

    def triangle_of(self, h: int) -> int:
        return self._location[h][0]

    def slot_of(self, h: int) -> int:
        return self._location[h][1]

    def twin(self, h: int) -> int | None:
        return self._twin.get(h)

    def arc_of(self, h: int) -> int | None:
        return self._arc.get(h)

    def is_boundary(self, h: int) -> bool:
        return h not in self._twin

    def next(self, h: int) -> int:
        t, s = self._location[h]
        return self.triangles[t][(s + 1) % 3]

    def prev(self, h: int) -> int:
        t, s = self._location[h]
        return self.triangles[t][(s + 2) % 3]

    def start_corner(self, h: int) -> Corner:
        t, s = self._location[h]
        return Corner(t, s)

    def end_corner(self, h: int) -> Corner:
        t, s = self._location[h]
        return Corner(t, (s + 1) % 3)

    @cached_property
    def boundary_half_edges(self) -> tuple[int, ...]:
        return tuple(h for h in self.half_edges if h not in self._twin)

    def boundary_successor(self, h: int) -> int:
        """The boundary half-edge leaving the end vertex of boundary half-edge ``h``."""
        cur = h
        for _ in range(len(self._location) + 1):
            out = self.next(cur)
            if out not in self._twin:
                return out
            cur = self._twin[out]
        raise InvalidTriangulation([f"vertex at end of half-edge {h} has no outgoing boundary arc"])

    # -- vertices ------------------------------------------------------

    @cached_property
    def _vertex_data(self):
        parent = {}

        def find(c):
            while parent[c] != c:
                parent[c] = parent[parent[c]]
                c = parent[c]
            return c

        for t in range(len(self.triangles)):
            for s in range(3):
                parent[(t, s)] = (t, s)
        for a, b in self.pairing:
            ta, sa = self._location[a]
            tb, sb = self._location[b]
            for c1, c2 in (((ta, sa), (tb, (sb + 1) % 3)), ((ta, (sa + 1) % 3), (tb, sb))):
                r1, r2 = find(c1), find(c2)
                if r1 != r2:
                    parent[max(r1, r2)] = min(r1, r2)
        ids = {}
        vertex_of = {}
        for t in range(len(self.triangles)):
            for s in range(3):
                r = find((t, s))
                if r not in ids:
                    ids[r] = len(ids)
                vertex_of[Corner(t, s)] = ids[r]
        return vertex_of, len(ids)

    def vertex_of(self, corner: Corner) -> int:
        return self._vertex_data[0][corner]

    @property
    def n_vertices(self) -> int:
        return self._vertex_data[1]

    @cached_property
    def vertex_corners(self) -> dict[int, list[Corner]]:
        """Corners of each vertex in (triangle, slot) order."""
        out = {v: [] for v in range(self.n_vertices)}
        for c, v in sorted(self._vertex_data[0].items(), key=lambda kv: (kv[0].triangle, kv[0].slot)):
            out[v].append(c)
        return out

    def vertex_component(self, v: int) -> int | None:
        for comp, hs in self.boundary:
            for h in hs:
                if self.vertex_of(self.start_corner(h)) == v:
                    return comp
        return None

    # -- adjacency ------------------------------------------------------

    def arc_triangles(self, a: int) -> tuple[int, int]:
        h, hp = self.pairing[a]
        return self.triangle_of(h), self.triangle_of(hp)

    def triangle_arcs(self, t: int) -> list[int]:
        return [self._arc[h] for h in self.triangles[t] if h in self._arc]

    def quad_labels(self, a: int) -> QuadLabels:
        h, hp = self.pairing[a]
        t, i = self._location[h]
        tp, j = self._location[hp]
        n1 = self.triangles[t][(i + 1) % 3]
        n2 = self.triangles[t][(i + 2) % 3]
        m1 = self.triangles[tp][(j + 1) % 3]
        m2 = self.triangles[tp][(j + 2) % 3]
        corners = (Corner(t, (i + 1) % 3), Corner(t, (i + 2) % 3), Corner(t, i), Corner(tp, (j + 2) % 3))
        return QuadLabels(
            arc=a,
            near=t,
            far=tp,
            corners=corners,
            vertices=tuple(self.vertex_of(c) for c in corners),
            sides=tuple(self._arc.get(e) for e in (n1, n2, m1, m2)),
            side_half_edges=(n1, n2, m1, m2),
        )

    def same_cells(self, other: Triangulation) -> bool:
        """Equality up to renumbering triangles and rotating their triples."""

        def cells(tri):
            out = []
            for t in tri.triangles:
                k = t.index(min(t))
                out.append(t[k:] + t[:k])
            return sorted(out)

        return (
            cells(self) == cells(other)
            and sorted(map(sorted, self.pairing)) == sorted(map(sorted, other.pairing))
            and sorted(self.boundary) == sorted(other.boundary)
        )


def quad_labels(tri: Triangulation, a: int) -> QuadLabels:
    return tri.quad_labels(a)


def infer_signature(tri: Triangulation) -> Signature:
    """Recover (g, n) from the boundary lists and the Euler characteristic."""
    comps = sorted(tri.boundary)
    poles = tuple(len(hs) + 2 for _, hs in comps)
    n_edges = tri.n_arcs + len(tri.boundary_half_edges)
    chi = tri.n_vertices - n_edges + tri.n_triangles
    twice_genus = 2 - len(poles) - chi
    if twice_genus < 0 or twice_genus % 2:
        raise InvalidTriangulation([f"Euler characteristic {chi} is inconsistent with {len(poles)} boundaries"])
    return Signature(twice_genus // 2, poles)


# -- validation ---------------------------------------------------------


def validate(tri: Triangulation, sig: Signature) -> ValidationReport:
    """Check every structural invariant of ``tri`` against ``sig``.

    Never raises on malformed input; problems are collected as messages.
    """
    report = ValidationReport()
    v = report.violations
    v.extend(sig.violations())
    if v:
        return report

    seen = Counter(h for t in tri.triangles for h in t)
    if any(len(t) != 3 for t in tri.triangles):
        v.append("every triangle must list exactly three half-edges")
    for h, c in seen.items():
        if c > 1:
            v.append(f"half-edge {h} appears in {c} triangles")
    if not tri.triangles:
        v.append("triangulation has no triangles")
    if v:
        return report

    paired = Counter()
    for a, (h, hp) in enumerate(tri.pairing):
        if h == hp:
            v.append(f"arc {a} pairs half-edge {h} with itself")
        for x in (h, hp):
            if x not in seen:
                v.append(f"arc {a} references unknown half-edge {x}")
            paired[x] += 1
    for x, c in paired.items():
        if c > 1:
            v.append(f"half-edge {x} is paired {c} times")
    if v:
        return report

    for a in tri.arcs:
        t, tp = tri.arc_triangles(a)
        if t == tp:
            v.append(f"arc {a} has the same triangle on both sides (self-folded)")

    unpaired = {h for h in seen if h not in paired}
    listed = Counter(h for _, hs in tri.boundary for h in hs)
    for h, c in listed.items():
        if c > 1:
            v.append(f"boundary half-edge {h} listed {c} times")
        if h not in unpaired:
            v.append(f"half-edge {h} is listed as boundary but is paired or unknown")
    for h in sorted(unpaired - set(listed)):
        v.append(f"unpaired half-edge {h} is not assigned to a boundary component")
    comps = [c for c, _ in tri.boundary]
    if sorted(comps) != list(range(sig.k)):
        v.append(f"boundary components {sorted(comps)} do not match the {sig.k} poles of the signature")
    if v:
        return report

    # connectivity of the dual graph
    adj = {t: set() for t in range(tri.n_triangles)}
    for a in tri.arcs:
        t, tp = tri.arc_triangles(a)
        adj[t].add(tp)
        adj[tp].add(t)
    reach = {0}
    queue = deque([0])
    while queue:
        t = queue.popleft()
        for u in adj[t] - reach:
            reach.add(u)
            queue.append(u)
    if len(reach) != tri.n_triangles:
        v.append(f"surface is disconnected: {len(reach)} of {tri.n_triangles} triangles reachable")

    # vertices: each must be a boundary point whose link is a single interval
    corners_of = tri.vertex_corners
    boundary_vertices = set()
    for h in unpaired:
        vtx = tri.vertex_of(tri.start_corner(h))
        if vtx in boundary_vertices:
            v.append(f"vertex {vtx} has more than one outgoing boundary arc")
        boundary_vertices.add(vtx)
    for vtx, cs in corners_of.items():
        if vtx not in boundary_vertices:
            v.append(f"vertex {vtx} is not on the boundary (interior punctures are not allowed)")
    for h in unpaired:
        # walk the fan from the corner where h ends; it must sweep the whole vertex
        cur, steps = h, 1
        while True:
            out = tri.next(cur)
            if out in unpaired:
                break
            cur = tri.twin(out)
            steps += 1
            if steps > 3 * tri.n_triangles:
                break
        vtx = tri.vertex_of(tri.end_corner(h))
        if steps != len(corners_of[vtx]):
            v.append(f"vertex {vtx} is not a manifold-with-boundary point (fan of {steps} of {len(corners_of[vtx])} corners)")
    if v:
        return report

    for comp, hs in tri.boundary:
        n = sig.poles[comp]
        if len(hs) != n - 2:
            v.append(f"boundary {comp} has {len(hs)} arcs, expected n_{comp} - 2 = {n - 2}")
        for x, y in zip(hs, hs[1:] + hs[:1]):
            if tri.boundary_successor(x) != y:
                v.append(f"boundary {comp} half-edges are not listed in cyclic order at {x} -> {y}")
                break
        verts = {tri.vertex_of(tri.start_corner(h)) for h in hs}
        if len(verts) != n - 2:
            v.append(f"boundary {comp} carries {len(verts)} marked points, expected {n - 2}")

    n_edges = tri.n_arcs + len(unpaired)
    chi = tri.n_vertices - n_edges + tri.n_triangles
    report.counts = {
        "vertices": tri.n_vertices,
        "interior_arcs": tri.n_arcs,
        "boundary_arcs": len(unpaired),
        "triangles": tri.n_triangles,
        "euler_characteristic": chi,
        "cotree_rank": tri.n_arcs - tri.n_triangles + 1,
    }
    if tri.n_arcs != sig.n_interior_arcs:
        v.append(f"{tri.n_arcs} interior arcs, expected m + 6g + 3k - 6 = {sig.n_interior_arcs}")
    if tri.n_triangles != sig.n_triangles:
        v.append(f"{tri.n_triangles} triangles, expected m + 4g + 2k - 4 = {sig.n_triangles}")
    if tri.n_vertices != sig.marked_points:
        v.append(f"{tri.n_vertices} vertices, expected m = {sig.marked_points}")
    if chi != sig.euler_characteristic:
        v.append(f"Euler characteristic {chi} != 2 - 2g - k = {sig.euler_characteristic}")
    return report


def check(tri: Triangulation, sig: Signature) -> Triangulation:
    report = validate(tri, sig)
    if not report.ok:
        raise InvalidTriangulation(report.violations)
    return tri


# -- canonical generator --------------------------------------------------


def canonical_triangulation(sig: Signature) -> Triangulation:
    """A deterministic triangulation of S_g(n).

    Glues a polygon with side word

        [a_1, b_1] ... [a_g, b_g]  (c_i B_i c_i^-1 for i = 2..k)  B_1

    where B_i is a chain of n_i - 2 boundary sides, and fans it from
    corner 0. Every commutator corner and both ends of each c_i^±1 on the
    outer side collapse to one marked point on boundary 0.
    """
    sig.check()
    m = [n - 2 for n in sig.poles]
    sides = []  # ("pair", label, forward) or ("bnd", component)
    for j in range(sig.genus):
        a, b = f"a{j}", f"b{j}"
        sides += [("pair", a, True), ("pair", b, True), ("pair", a, False), ("pair", b, False)]
    for i in range(1, sig.k):
        c = f"c{i}"
        sides.append(("pair", c, True))
        sides += [("bnd", i)] * m[i]
        sides.append(("pair", c, False))
    sides += [("bnd", 0)] * m[0]
    n = len(sides)

    # fan triangle j-1 has corners (0, j, j+1); half-edge id 3(j-1) + slot
    triangles = [(3 * (j - 1), 3 * (j - 1) + 1, 3 * (j - 1) + 2) for j in range(1, n - 1)]
    side_he = {}
    for j in range(1, n - 1):
        side_he[j] = 3 * (j - 1) + 1
    side_he[0] = 0
    side_he[n - 1] = 3 * (n - 3) + 2
    pairs = []
    for j in range(1, n - 2):
        # diagonal 0 -- (j+1): slot 2 of fan triangle j-1 against slot 0 of fan triangle j
        pairs.append((3 * (j - 1) + 2, 3 * j))
    partner = {}
    for s, side in enumerate(sides):
        if side[0] == "pair":
            partner.setdefault(side[1], []).append(s)
    for s0, s1 in partner.values():
        pairs.append((side_he[s0], side_he[s1]))
    pairs.sort()

    comp_chain = {}
    for s, side in enumerate(sides):
        if side[0] == "bnd":
            comp_chain.setdefault(side[1], []).append(side_he[s])
    boundary = [(c, tuple(comp_chain[c])) for c in range(sig.k)]
    tri = Triangulation(tuple(triangles), tuple(pairs), tuple(boundary))
    return check(tri, sig)


# -- dual graph ---------------------------------------------------------------


@dataclass(frozen=True)
class DualGraph:
    n_nodes: int
    edges: dict  # arc -> (triangle of first half-edge, triangle of second)
    tree: frozenset
    cotree: tuple[int, ...]
    order: tuple[int, ...]  # BFS order of triangles
    parent: dict  # triangle -> (parent triangle, arc) for non-root triangles
    root: int = 0


def dual_graph(tri: Triangulation, root: int = 0) -> DualGraph:
    """Dual graph with a BFS spanning tree rooted at ``root``.

    Arcs of a triangle are scanned in ascending arc id, so the tree is a
    deterministic function of the triangulation.
    """
    edges = {a: tri.arc_triangles(a) for a in tri.arcs}
    seen = {root}
    order = [root]
    parent = {}
    tree = set()
    queue = deque([root])
    while queue:
        t = queue.popleft()
        for a in sorted(tri.triangle_arcs(t)):
            t0, t1 = edges[a]
            u = t1 if t0 == t else t0
            if u not in seen:
                seen.add(u)
                parent[u] = (t, a)
                tree.add(a)
                order.append(u)
                queue.append(u)
    cotree = tuple(a for a in tri.arcs if a not in tree)
    return DualGraph(tri.n_triangles, edges, frozenset(tree), cotree, tuple(order), parent, root)


def tree_path(dg: DualGraph, tri: Triangulation, t: int) -> list[int]:
    """Half-edges crossed along the spanning tree from the root to ``t``."""
    path = []
    while t != dg.root:
        u, a = dg.parent[t]
        h, hp = tri.pairing[a]
        path.append(h if tri.triangle_of(h) == u else hp)
        t = u
    return path[::-1]


# -- flips ----------------------------------------------------------------------


def flip(tri: Triangulation, a: int) -> Triangulation:
    """Replace interior arc ``a`` by the other diagonal of its quadrilateral.

    Half-edge and arc ids are preserved: the new diagonal reuses both
    half-edges of ``a`` (so it keeps arc id ``a``), and the four sides keep
    their ids while moving between the two triangles.

    A quadrilateral flipped twice is rotated by a half turn, so the order
    of the pair in ``pairing`` is used as a one-bit state: it is reversed
    by every flip, and the placement of the new cells depends on it. This
    makes ``flip(flip(tri, a), a) == tri`` exactly.
    """
    h, hp = tri.pairing[a]
    t, i = tri.triangle_of(h), tri.slot_of(h)
    tp, j = tri.triangle_of(hp), tri.slot_of(hp)
    if t == tp:
        raise NotFlippable(f"arc {a} bounds the same triangle on both sides")
    T, Tp = tri.triangles[t], tri.triangles[tp]
    n1, n2 = T[(i + 1) % 3], T[(i + 2) % 3]
    m1, m2 = Tp[(j + 1) % 3], Tp[(j + 2) % 3]
    def placed(cell, slot):
        return cell[-slot:] + cell[:-slot] if slot else cell

    triangles = list(tri.triangles)
    if h < hp:
        triangles[t] = placed((h, n2, m1), i)
        triangles[tp] = placed((hp, m2, n1), j)
    else:
        triangles[tp] = placed((hp, n2, m1), j)
        triangles[t] = placed((h, m2, n1), i)
    pairing = list(tri.pairing)
    pairing[a] = (hp, h)
    return Triangulation(tuple(triangles), tuple(pairing), tri.boundary)
