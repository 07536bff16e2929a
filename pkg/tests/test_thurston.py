import math

import numpy as np
import pytest

from pleating.coords import CoordinateTuple, random_generic
from pleating.thurston import INFINITE_WEIGHT, CrownedSurfaceShears, MeasuredLamination, grafting_data


def test_positive_tuple_has_no_finite_leaves(tri):
    w = grafting_data(tri, random_generic(tri, 0, positive=True))
    assert w.lamination.finite_leaves == {}
    assert w.ok


def test_single_bent_arc(torus):
    vals = [2.0, 1j, 0.5, 3.0]
    w = grafting_data(torus, CoordinateTuple.for_triangulation(torus, vals))
    assert list(w.lamination.finite_leaves) == [1]
    assert w.lamination.finite_leaves[1] == pytest.approx(math.pi / 2, abs=1e-15)


def test_crown_leaves_one_per_boundary_arc(sig, tri):
    w = grafting_data(tri, random_generic(tri, 1))
    assert len(w.lamination.infinite_leaves) == sum(n - 2 for n in sig.poles)
    assert all(c.weight == INFINITE_WEIGHT for c in w.lamination.infinite_leaves)
    assert w.surface.signature == sig


def test_torus_has_one_crown_leaf(torus):
    assert len(grafting_data(torus, random_generic(torus, 2)).lamination.infinite_leaves) == 1


def test_reconstruction(tri):
    c = random_generic(tri, 5)
    w = grafting_data(tri, c)
    rebuilt = [s * complex(math.cos(w.pleats.bend[a]), math.sin(w.pleats.bend[a])) for a, s in enumerate(w.surface.shear)]
    assert np.max(np.abs(np.array(rebuilt) - c.as_array()) / np.abs(c.as_array())) < 1e-12
    assert w.surface.log_shear == pytest.approx(w.pleats.shear, abs=0)


def test_witness_residuals(tri):
    w = grafting_data(tri, random_generic(tri, 7))
    assert w.ok
    assert w.residuals["equivariance"] < 1e-9 and w.residuals["roundtrip"] < 1e-9
    assert w.certificate.distinct_points == 3


def test_invalid_parts():
    with pytest.raises(ValueError):
        MeasuredLamination({0: 2 * math.pi}, ())
    with pytest.raises(ValueError):
        CrownedSurfaceShears((0.0,), None)
