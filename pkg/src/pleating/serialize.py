"""JSON documents: triangulations, coordinate tuples, witnesses; with schemas."""

from __future__ import annotations

import cmath
import math

import jsonschema

from .develop import FramedRepresentation
from .mobius import MoebiusMap, ProjectivePoint
from .thurston import GraftingWitness

WITNESS_SCHEMA_VERSION = "1.0"

_complex = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_point = {
    "type": "object",
    "properties": {"hom": {"type": "array", "items": _complex, "minItems": 2, "maxItems": 2}},
    "required": ["hom"],
}
_matrix = {"type": "array", "items": {"type": "array", "items": _complex, "minItems": 2, "maxItems": 2}, "minItems": 2, "maxItems": 2}

SCHEMAS = {
    "triangulation": {
        "type": "object",
        "properties": {
            "triangles": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}, "minItems": 3, "maxItems": 3}},
            "pairing": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}},
            "boundary": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "component": {"type": "integer", "minimum": 0},
                        "half_edges": {"type": "array", "items": {"type": "integer"}},
                    },
                    "required": ["component", "half_edges"],
                },
            },
        },
        "required": ["triangles", "pairing", "boundary"],
    },
    "coords": {
        "type": "object",
        "properties": {
            "triangulation": {"type": "string"},
            "coords": {"type": "object", "patternProperties": {"^[0-9]+$": _complex}, "additionalProperties": False},
        },
        "required": ["triangulation", "coords"],
    },
    "witness": {
        "type": "object",
        "properties": {
            "schema_version": {"const": WITNESS_SCHEMA_VERSION},
            "signature": {
                "type": "object",
                "properties": {"genus": {"type": "integer"}, "poles": {"type": "array", "items": {"type": "integer"}}},
                "required": ["genus", "poles"],
            },
            "triangulation": {"type": "string"},
            "surface": {"type": "object", "properties": {"shears": {"type": "object"}}, "required": ["shears"]},
            "lamination": {
                "type": "object",
                "properties": {
                    "finite": {"type": "object", "additionalProperties": {"type": "number", "exclusiveMinimum": 0}},
                    "infinite": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "properties": {
                                "boundary_half_edge": {"type": "integer"},
                                "component": {"type": "integer"},
                                "weight": {"const": "inf"},
                            },
                            "required": ["boundary_half_edge", "component", "weight"],
                        },
                    },
                },
                "required": ["finite", "infinite"],
            },
            "representation": {
                "type": "object",
                "properties": {
                    "generators": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "properties": {"arc": {"type": "integer"}, "matrix": _matrix, "sign_ambiguous": {"const": True}},
                            "required": ["arc", "matrix", "sign_ambiguous"],
                        },
                    },
                    "framing": {"type": "object", "additionalProperties": _point},
                },
                "required": ["generators", "framing"],
            },
            "pleats": {
                "type": "object",
                "additionalProperties": {
                    "type": "object",
                    "properties": {"shear": {"type": "number"}, "bend": {"type": "number", "minimum": 0}},
                    "required": ["shear", "bend"],
                },
            },
            "residuals": {"type": "object", "additionalProperties": {"type": "number"}},
            "certificate": {"type": "object"},
        },
        "required": ["schema_version", "signature", "surface", "lamination", "representation", "pleats", "residuals"],
    },
}


def validate_document(kind: str, doc) -> None:
    """Raise ``jsonschema.ValidationError`` if ``doc`` does not match the ``kind`` schema."""
    jsonschema.validate(doc, SCHEMAS[kind])


def complex_to_json(x: complex) -> list:
    return [x.real, x.imag]


def complex_from_json(v) -> complex:
    if isinstance(v, str):
        if v.strip().lower() == "inf":
            return complex(math.inf, 0.0)
        return complex(v)
    if isinstance(v, (int, float)):
        return complex(v)
    re, im = v
    return complex(re, im)


def point_to_json(p: ProjectivePoint) -> dict:
    return {"hom": [complex_to_json(p.z), complex_to_json(p.w)]}


def point_from_json(v) -> ProjectivePoint:
    """Accepts {"hom": [[re, im], [re, im]]}, an affine [re, im] pair, a number, or "inf"."""
    if isinstance(v, dict):
        z, w = (complex_from_json(c) for c in v["hom"])
        return ProjectivePoint(z, w)
    x = complex_from_json(v)
    return ProjectivePoint.from_affine("inf" if cmath.isinf(x) else x)


def matrix_to_json(m: MoebiusMap) -> list:
    return [[complex_to_json(complex(x)) for x in row] for row in m.matrix]


def representation_to_json(rep: FramedRepresentation) -> dict:
    return {
        "generators": [{"arc": a, "matrix": matrix_to_json(g), "sign_ambiguous": True} for a, g in rep.generators],
        "framing": {str(v): point_to_json(p) for v, p in sorted(rep.framing.items())},
        "boundary_framing": {str(c): [point_to_json(p) for p in ps] for c, ps in sorted(rep.boundary_framing.items())},
    }


def witness_to_json(w: GraftingWitness, triangulation_digest: str = "") -> dict:
    sig = w.surface.signature
    cert = w.certificate
    return {
        "schema_version": WITNESS_SCHEMA_VERSION,
        "signature": {"genus": sig.genus, "poles": list(sig.poles)},
        "triangulation": triangulation_digest,
        "surface": {"shears": {str(a): s for a, s in enumerate(w.surface.shear)}},
        "lamination": {
            "finite": {str(a): b for a, b in sorted(w.lamination.finite_leaves.items())},
            "infinite": [
                {"boundary_half_edge": c.half_edge, "component": c.component, "weight": c.weight}
                for c in w.lamination.infinite_leaves
            ],
        },
        "representation": representation_to_json(w.representation),
        "pleats": w.pleats.to_dict(),
        "residuals": dict(w.residuals),
        "certificate": {
            "boundary_separation": cert.boundary_separation,
            "triangle_separation": cert.triangle_separation,
            "distinct_points": cert.distinct_points,
            "d2_witness": cert.d2_witness,
        },
    }
