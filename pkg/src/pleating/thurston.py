"""Grafting data (crowned-surface shears and bending lamination) of a coordinate tuple."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .coords import CoordinateTuple, check_generic, max_relative_error
from .develop import (
    FramedRepresentation,
    NondegeneracyCertificate,
    PleatData,
    develop,
    extract_coordinates,
    monodromy,
    nondegeneracy_certificate,
    pleat_data,
    verify_equivariance,
)
from .mobius import POINT_TOL
from .surface import Signature, Triangulation, infer_signature

INFINITE_WEIGHT = "inf"  # symbolic; never used in arithmetic


@dataclass(frozen=True)
class CrownedSurfaceShears:
    shear: tuple[float, ...]  # |x_a| per interior arc
    signature: Signature

    def __post_init__(self):
        if not all(0 < s < math.inf for s in self.shear):
            raise ValueError("shear parameters must be positive and finite")

    @property
    def log_shear(self) -> tuple[float, ...]:
        return tuple(math.log(s) for s in self.shear)


@dataclass(frozen=True)
class CrownSide:
    half_edge: int
    component: int
    weight: str = INFINITE_WEIGHT


@dataclass(frozen=True)
class MeasuredLamination:
    finite_leaves: dict  # arc -> weight in (0, 2pi)
    infinite_leaves: tuple[CrownSide, ...]

    def __post_init__(self):
        for a, w in self.finite_leaves.items():
            if not 0 < w < 2 * math.pi:
                raise ValueError(f"leaf weight {w} at arc {a} outside (0, 2pi)")


@dataclass(frozen=True, eq=False)
class GraftingWitness:
    surface: CrownedSurfaceShears
    lamination: MeasuredLamination
    representation: FramedRepresentation
    pleats: PleatData
    certificate: NondegeneracyCertificate
    residuals: dict = field(default_factory=dict)
    tolerance: float = POINT_TOL

    @property
    def ok(self) -> bool:
        return all(r < self.tolerance for r in self.residuals.values())


def grafting_data(
    tri: Triangulation,
    coords: CoordinateTuple,
    signature: Signature | None = None,
    tol: float = POINT_TOL,
    bend_tol: float = 1e-12,
) -> GraftingWitness:
    """Straighten the pleated plane of ``coords`` into (X, lambda) and certify it.

    Bends within ``bend_tol`` of 0 (mod 2pi) are not leaves. The witness
    carries the monodromy of the development and its residuals.
    """
    check_generic(coords, tri)
    sig = signature or infer_signature(tri)
    pleats = pleat_data(coords)
    finite = {}
    for a, b in enumerate(pleats.bend):
        if bend_tol <= b <= 2 * math.pi - bend_tol:
            finite[a] = b
    comp_of = {h: c for c, hs in tri.boundary for h in hs}
    crown = tuple(CrownSide(h, comp_of[h]) for h in tri.boundary_half_edges)

    dev = develop(tri, coords)
    residuals = {
        "equivariance": verify_equivariance(dev),
        "roundtrip": max_relative_error(extract_coordinates(dev), coords),
    }
    return GraftingWitness(
        surface=CrownedSurfaceShears(tuple(abs(x) for x in coords.values), sig),
        lamination=MeasuredLamination(finite, crown),
        representation=monodromy(dev),
        pleats=pleats,
        certificate=nondegeneracy_certificate(dev, tol),
        residuals=residuals,
        tolerance=tol,
    )
