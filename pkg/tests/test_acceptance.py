"""Acceptance criteria AC-1 .. AC-9.

Each test records (passed, detail) in ``conftest.ACCEPTANCE_RESULTS``; the
terminal summary prints one PASS/FAIL line per criterion.
"""

import itertools
import json
import math
import time
import xml.etree.ElementTree as ET
from dataclasses import replace

import numpy as np
import pytest

from conftest import ACCEPTANCE_RESULTS, SIGNATURES
from pleating.cli import run
from pleating.coords import CoordinateTuple, max_relative_error, mutate, random_generic
from pleating.develop import (
    Walk,
    certify_nondegenerate,
    corner_lifts,
    develop,
    develop_patch,
    extract_coordinates,
    lift_flag,
    monodromy,
    nondegeneracy_certificate,
    transport_lift,
    transport_walk,
    verify_equivariance,
    walk_holonomy,
    word_walk,
)
from pleating.exceptions import Degenerate, InvalidSignature, PleatingError
from pleating.mobius import INF, ZERO, MoebiusMap, cross_ratio, trace_squared
from pleating.serialize import witness_to_json
from pleating.surface import Signature, canonical_triangulation, dual_graph, flip, validate
from pleating.thurston import grafting_data

SEEDS = range(100)


def record(key, ok, detail):
    ACCEPTANCE_RESULTS[key] = (bool(ok), detail)
    print(f"{key} {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def bump(p, eps=1e-3):
    return type(p)(p.z - eps * p.w.conjugate(), p.w + eps * p.z.conjugate())


@pytest.fixture(scope="module")
def ac1_runs():
    """Every (signature, seed) development of AC-1, with the elapsed time."""
    runs = []
    t0 = time.perf_counter()
    for sig in SIGNATURES:
        tri = canonical_triangulation(sig)
        for seed in SEEDS:
            c = random_generic(tri, seed, log_mod_bound=1.6)
            dev = develop(tri, c)
            runs.append((sig, tri, c, dev, extract_coordinates(dev)))
    return runs, time.perf_counter() - t0


def test_ac1_roundtrip(ac1_runs):
    runs, elapsed = ac1_runs
    worst = max(max_relative_error(out, c) for _, _, c, _, out in runs)
    record("AC-1", worst < 1e-9 and elapsed < 10, f"max rel err {worst:.2e} over {len(runs)} tuples, {elapsed:.2f} s")


def test_ac2_equivariance(ac1_runs):
    runs, _ = ac1_runs
    worst, weakest = 0.0, math.inf
    for k, (_, tri, _, dev, _) in enumerate(runs):
        worst = max(worst, verify_equivariance(dev))
        t, s = k % tri.n_triangles, k % 3
        flags = [list(f) for f in dev.base_flags]
        flags[t][s] = bump(flags[t][s])
        bad = replace(dev, base_flags=tuple(tuple(f) for f in flags))
        weakest = min(weakest, verify_equivariance(bad))
    record("AC-2", worst < 1e-9 and weakest >= 1e-4, f"max residual {worst:.2e}, min perturbed residual {weakest:.2e}")


# -- AC-3 ---------------------------------------------------------------------------


def opposite_mutate(c, tri, a):
    """The rejected side pairing: (1 + x_a) on the v0v1/v2v3 sides instead."""
    q = tri.quad_labels(a)
    x = c[a]
    vals = list(c.values)
    for side, f in zip(q.sides, (1 + x, 1 / (1 + 1 / x), 1 + x, 1 / (1 + 1 / x))):
        if side is not None:
            vals[side] *= f
    vals[a] = 1 / x
    return CoordinateTuple(tuple(vals), flip(tri, a).digest)


def framing_lifts(tri, a, depth=2):
    """Lifts of marked points from a patch of dual walks, named away from the diagonal."""
    diag = set(tri.pairing[a])
    lifts = []
    for node in develop_patch(tri, CoordinateTuple.for_triangulation(tri, [1.0] * tri.n_arcs), depth):
        lifts += corner_lifts(tri, Walk(0, node.word), avoid=diag)
    return lifts


def distinct_points(tri, c, lifts, limit=8):
    chosen, pts = [], []
    for L in lifts:
        p = lift_flag(tri, c, L)
        if all(p.distance(q) > 1e-6 for q in pts):
            chosen.append(L)
            pts.append(p)
            if len(chosen) == limit:
                break
    return chosen, pts


def rel(a, b):
    if cmath_isinf(a) or cmath_isinf(b):
        return 0.0 if cmath_isinf(a) and cmath_isinf(b) else math.inf
    return abs(a - b) / max(1.0, abs(a))


def cmath_isinf(z):
    return math.isinf(z.real) or math.isinf(z.imag)


def coherence_error(tri, a, c, words, lifts, mutator=mutate):
    new_tri, new_c = flip(tri, a), mutator(c, tri, a)
    dev = develop(tri, c)
    worst = 0.0
    for w in words:
        loop = word_walk(dev, w)
        before = trace_squared(walk_holonomy(tri, c, loop))
        after = trace_squared(walk_holonomy(new_tri, new_c, transport_walk(tri, a, loop, closed=True)))
        worst = max(worst, rel(before, after))
    chosen, before_pts = distinct_points(tri, c, lifts)
    after_pts = [lift_flag(new_tri, new_c, transport_lift(tri, a, L)) for L in chosen]
    n_quads = 0
    for idx in itertools.combinations(range(len(chosen)), 4):
        b = cross_ratio(*(before_pts[i] for i in idx))
        f = cross_ratio(*(after_pts[i] for i in idx))
        worst = max(worst, rel(b, f))
        n_quads += 1
    return worst, n_quads


def test_ac3_flip_mutation_coherence():
    rng = np.random.default_rng(2024)
    worst, checked, quads, skipped, wrong = 0.0, 0, 0, 0, math.inf
    for sig in (Signature(1, (3,)), Signature(0, (3, 3, 3))):
        tri = canonical_triangulation(sig)
        rank = len(dual_graph(tri).cotree)
        letters = [s * i for i in range(1, rank + 1) for s in (1, -1)]
        words = [[int(x) for x in rng.choice(letters, size=rng.integers(1, 7))] for _ in range(10)]
        for a in tri.arcs:
            lifts = framing_lifts(tri, a)
            done, seed = 0, 0
            while done < 25:
                c = random_generic(tri, 1000 + seed)
                seed += 1
                if abs(c[a] + 1) < 1e-3:
                    skipped += 1
                    continue
                err, nq = coherence_error(tri, a, c, words, lifts)
                worst = max(worst, err)
                quads += nq
                done += 1
                checked += 1
            try:
                err = coherence_error(tri, a, random_generic(tri, 7), words, lifts, opposite_mutate)[0]
            except PleatingError:  # the wrong pairing can collapse the development outright
                err = math.inf
            wrong = min(wrong, err)
    ok = worst < 1e-8 and wrong > 1e-3
    record(
        "AC-3",
        ok,
        f"max rel err {worst:.2e} over {checked} (arc, tuple) pairs and {quads} framing quadruples"
        f" ({skipped} skipped); opposite pairing err >= {wrong:.1e}",
    )


def test_ac4_fuchsian():
    flag_im = trace_im = 0.0
    rng = np.random.default_rng(4)
    for sig in SIGNATURES:
        tri = canonical_triangulation(sig)
        for seed in range(50):
            dev = develop(tri, random_generic(tri, seed, positive=True))
            for f in dev.base_flags:
                for p in f:
                    if p.w != 0:
                        flag_im = max(flag_im, abs(p.to_affine().imag))
            rep = monodromy(dev)
            letters = [s * i for i in range(1, rep.rank + 1) for s in (1, -1)]
            for _ in range(5):
                trace_im = max(trace_im, abs(trace_squared(rep.word(rng.choice(letters, size=rng.integers(1, 7)))).imag))
    record("AC-4", flag_im < 1e-10 and trace_im < 1e-9, f"max |Im| flags {flag_im:.1e}, trace^2 {trace_im:.1e}")


def test_ac5_combinatorics():
    failures = []
    for sig in SIGNATURES:
        g, k, m = sig.genus, len(sig.poles), sum(n - 2 for n in sig.poles)
        tri = canonical_triangulation(sig)
        got = (tri.n_arcs, tri.n_triangles, len(dual_graph(tri).cotree))
        want = (m + 6 * g + 3 * k - 6, m + 4 * g + 2 * k - 4, 2 * g + k - 1)
        per_boundary = {comp: len(hs) for comp, hs in tri.boundary}
        if got != want or per_boundary != {i: n - 2 for i, n in enumerate(sig.poles)} or not validate(tri, sig).ok:
            failures.append(str(sig))
    for sig in (Signature(0, (3,)), Signature(0, (3, 3))):
        try:
            canonical_triangulation(sig)
            failures.append(f"{sig} accepted")
        except InvalidSignature:
            pass
    record("AC-5", not failures, "exact counts on 4 signatures, (0,(3)) and (0,(3,3)) rejected" if not failures else ", ".join(failures))


def test_ac6_nondegeneracy(ac1_runs):
    runs, _ = ac1_runs
    certified = sum(nondegeneracy_certificate(dev).distinct_points == 3 for _, _, _, dev, _ in runs)
    diag = [MoebiusMap([[2, 0], [0, 0.5]]), MoebiusMap([[3j, 0], [0, -1j / 3]])]
    try:
        certify_nondegenerate([(ZERO, INF), (INF, ZERO), (ZERO, INF)], [ZERO, INF, INF, ZERO, ZERO, INF], diag)
        flagged = ()
    except Degenerate as exc:
        flagged = exc.conditions
    record("AC-6", certified == len(runs) and flagged == ("D2",), f"{certified}/{len(runs)} certified; standalone fixture flagged {flagged}")


def test_ac7_grafting(ac1_runs):
    runs, _ = ac1_runs
    bad, recon = [], 0.0
    for sig, tri, c, _, _ in runs:
        w = grafting_data(tri, c, sig)
        rebuilt = np.array([math.exp(s) * complex(math.cos(b), math.sin(b)) for s, b in zip(w.pleats.shear, w.pleats.bend)])
        recon = max(recon, float(np.max(np.abs(rebuilt - c.as_array()) / np.abs(c.as_array()))))
        if not w.ok or len(w.lamination.infinite_leaves) != sum(n - 2 for n in sig.poles):
            bad.append(str(sig))
    for sig in SIGNATURES:
        tri = canonical_triangulation(sig)
        for seed in range(10):
            if grafting_data(tri, random_generic(tri, seed, positive=True)).lamination.finite_leaves:
                bad.append(f"{sig} positive")
    record("AC-7", not bad and recon < 1e-12, f"{len(runs)} witnesses, reconstruction err {recon:.1e}" + (f"; failures {bad[:3]}" if bad else ""))


def test_ac8_determinism_and_involution():
    issues = []
    flip_pairs = mut_worst = 0
    rng = np.random.default_rng(8)
    for sig in SIGNATURES:
        tri = canonical_triangulation(sig)
        for seed in range(5):
            one = json.dumps(witness_to_json(grafting_data(tri, random_generic(tri, seed)), tri.digest), sort_keys=True)
            two = json.dumps(witness_to_json(grafting_data(tri, random_generic(tri, seed)), tri.digest), sort_keys=True)
            if one.encode() != two.encode():
                issues.append(f"{sig} seed {seed} not reproducible")
        cur = tri
        for step in range(30):
            a = int(rng.integers(cur.n_arcs))
            if flip(flip(cur, a), a) != cur:
                issues.append(f"{sig} flip not involutive")
            c = random_generic(cur, step)
            mut_worst = max(mut_worst, max_relative_error(mutate(mutate(c, cur, a), flip(cur, a), a), c))
            flip_pairs += 1
            cur = flip(cur, a)
    record("AC-8", not issues and mut_worst < 1e-12, f"byte-identical witnesses; {flip_pairs} flip/mutate pairs, mutate err {mut_worst:.1e}" + (f"; {issues[:3]}" if issues else ""))


def test_ac9_cli_pipeline(tmp_path, capsys):
    tri_path, wit_path, svg_path = (tmp_path / n for n in ("t.json", "w.json", "p.svg"))
    t0 = time.perf_counter()
    codes = (
        run(["generate", "--genus", "1", "--poles", "3", "-o", str(tri_path)]),
        run(["develop", "-t", str(tri_path), "--seed", "0", "-o", str(wit_path)]),
        run(["render", "-t", str(tri_path), "--seed", "0", "--depth", "4", "-o", str(svg_path)]),
    )
    elapsed = time.perf_counter() - t0
    capsys.readouterr()
    tri = canonical_triangulation(Signature(1, (3,)))
    expected = len(develop_patch(tri, random_generic(tri, 0), 4))
    root = ET.parse(svg_path).getroot()
    drawn = sum(1 for p in root.iter("{http://www.w3.org/2000/svg}polygon") if p.get("class") == "triangle")
    record("AC-9", codes == (0, 0, 0) and elapsed < 2 and drawn == expected, f"exit codes {codes}, {elapsed:.2f} s, {drawn}/{expected} triangles")
