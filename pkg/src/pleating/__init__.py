"""Framed representations from cross-ratio coordinates via pleated planes.

Typical use::

    from pleating import Signature, canonical_triangulation, random_generic, grafting_data

    tri = canonical_triangulation(Signature(1, (3,)))
    witness = grafting_data(tri, random_generic(tri, seed=0))
"""

__version__ = "0.1.0"

from .coords import CoordinateTuple, mutate, random_generic, validate_generic
from .develop import (
    DevelopedComplex,
    FramedRepresentation,
    PleatData,
    develop,
    develop_patch,
    extract_coordinates,
    framing,
    monodromy,
    nondegeneracy_certificate,
    pleat_data,
    verify_equivariance,
)
from .mobius import MoebiusMap, ProjectivePoint, cross_ratio, map_from_triple, moebius_between, solve_fourth, trace_squared
from .surface import Signature, Triangulation, canonical_triangulation, dual_graph, flip, quad_labels, validate
from .thurston import GraftingWitness, grafting_data

__all__ = [
    "CoordinateTuple",
    "DevelopedComplex",
    "FramedRepresentation",
    "GraftingWitness",
    "MoebiusMap",
    "PleatData",
    "ProjectivePoint",
    "Signature",
    "Triangulation",
    "canonical_triangulation",
    "cross_ratio",
    "develop",
    "develop_patch",
    "dual_graph",
    "extract_coordinates",
    "flip",
    "framing",
    "grafting_data",
    "map_from_triple",
    "moebius_between",
    "monodromy",
    "mutate",
    "nondegeneracy_certificate",
    "pleat_data",
    "quad_labels",
    "random_generic",
    "solve_fourth",
    "trace_squared",
    "validate",
    "validate_generic",
    "verify_equivariance",
]
