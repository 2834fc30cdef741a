"""JSON encodings.  Rationals are always strings ``"p/q"`` (or ``"p"``)."""
from __future__ import annotations

import re
from fractions import Fraction

import jsonschema

from .finite import FiniteMVAlgebra, Spectrum
from .geometry import ConvexCell, Polyhedron
from .mcnaughton import PLFunction, ZMap
from .tangents import CurveGerm, OutgoingWitness, TangentTuple
from .terms import Presentation, parse_term, to_text

_RAT = r"^-?[0-9]+(/[0-9]+)?$"
_RATIONAL = {"type": "string", "pattern": _RAT}
_POINT = {"type": "array", "items": _RATIONAL}
_POINTS = {"type": "array", "items": _POINT}

SCHEMAS = {
    "polyhedron": {
        "type": "object",
        "required": ["dim", "simplices"],
        "properties": {
            "dim": {"type": "integer", "minimum": 0},
            "simplices": {"type": "array", "items": _POINTS},
        },
    },
    "presentation": {
        "type": "object",
        "required": ["arity", "relations"],
        "properties": {
            "arity": {"type": "integer", "minimum": 0},
            "relations": {"type": "array", "items": {
                "type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2}},
        },
    },
    "plfunction": {
        "type": "object",
        "required": ["arity", "cells"],
        "properties": {
            "arity": {"type": "integer", "minimum": 0},
            "cells": {"type": "array", "items": {
                "type": "object",
                "required": ["vertices", "coeffs", "const"],
                "properties": {
                    "vertices": _POINTS,
                    "coeffs": {"type": "array", "items": {"type": "integer"}},
                    "const": {"type": "integer"},
                },
            }},
        },
    },
    "algebra": {
        "type": "object",
        "required": ["ambient", "elements"],
        "properties": {
            "ambient": {"type": "integer", "minimum": 0},
            "elements": _POINTS,
        },
    },
    "spectrum": {
        "type": "object",
        "required": ["labels", "points"],
        "properties": {"labels": {"type": "array"}, "points": _POINTS},
    },
    "germ": {
        "type": "object",
        "required": ["base", "coeffs"],
        "properties": {"base": _POINT, "coeffs": _POINTS, "i0": {"type": "integer", "minimum": 1}},
    },
    "tangent": {
        "type": "object",
        "required": ["base", "directions"],
        "properties": {"base": _POINT, "directions": _POINTS},
    },
    "witness": {
        "type": "object",
        "required": ["S", "F", "lambda"],
        "properties": {
            "S": _POINTS,
            "F": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            "lambda": {"type": "array", "items": _RATIONAL},
        },
    },
}
SCHEMAS["homspec"] = {
    "type": "object",
    "required": ["source", "target", "images"],
    "properties": {
        "source": SCHEMAS["presentation"],
        "target": SCHEMAS["presentation"],
        "images": {"type": "array", "items": {"type": "string"}},
    },
}
SCHEMAS["zmap"] = {
    "type": "object",
    "required": ["source_dim", "components", "domain"],
    "properties": {
        "source_dim": {"type": "integer", "minimum": 0},
        "components": {"type": "array", "items": SCHEMAS["plfunction"]},
        "domain": SCHEMAS["polyhedron"],
    },
}


def validate(doc, kind: str):
    """Raise ``jsonschema.ValidationError`` when ``doc`` does not match ``kind``."""
    jsonschema.validate(doc, SCHEMAS[kind])
    return doc


def rat(x) -> str:
    return str(Fraction(x))


def pt(p) -> list[str]:
    return [rat(x) for x in p]


def unrat(s: str) -> Fraction:
    return Fraction(s)


def unpt(p) -> tuple:
    return tuple(Fraction(x) for x in p)


def jsonify(obj):
    """Recursive encoding of tuples/Fractions as lists/strings."""
    if isinstance(obj, Fraction):
        return rat(obj)
    if isinstance(obj, (tuple, list)):
        return [jsonify(x) for x in obj]
    return obj


def unjsonify(obj):
    if isinstance(obj, list):
        return tuple(unjsonify(x) for x in obj)
    if isinstance(obj, str) and re.match(_RAT, obj):
        return Fraction(obj)
    return obj


# -- polyhedra ---------------------------------------------------------------

def polyhedron_to_json(P: Polyhedron) -> dict:
    return {"dim": P.dim, "simplices": [[pt(v) for v in s] for s in P.simplices]}


def polyhedron_from_json(doc) -> Polyhedron:
    validate(doc, "polyhedron")
    return Polyhedron(doc["dim"], [[unpt(v) for v in s] for s in doc["simplices"]])


# -- terms -------------------------------------------------------------------

def presentation_to_json(P: Presentation) -> dict:
    return {"arity": P.arity, "relations": [[to_text(s), to_text(t)] for s, t in P.relations]}


def presentation_from_json(doc) -> Presentation:
    validate(doc, "presentation")
    return Presentation.parse(doc["arity"], doc["relations"])


# -- McNaughton functions ----------------------------------------------------

def plfunction_to_json(f: PLFunction) -> dict:
    doc = {"arity": f.arity, "cells": [
        {"vertices": [pt(v) for v in c.vertices], "coeffs": list(p[:-1]), "const": p[-1]}
        for c, p in f.cells]}
    if not f.on_cube:
        doc["domain"] = polyhedron_to_json(f.domain)
    return doc


def plfunction_from_json(doc) -> PLFunction:
    validate(doc, "plfunction")
    n = doc["arity"]
    cells = []
    for c in doc["cells"]:
        if len(c["coeffs"]) != n:
            raise jsonschema.ValidationError(f"cell piece needs {n} coefficients")
        cells.append((ConvexCell.from_points([unpt(v) for v in c["vertices"]]),
                      tuple(c["coeffs"]) + (c["const"],)))
    dom = polyhedron_from_json(doc["domain"]) if "domain" in doc else None
    return PLFunction(n, cells, dom)


def zmap_to_json(z: ZMap) -> dict:
    return {"source_dim": z.source_dim,
            "components": [plfunction_to_json(c) for c in z.components],
            "domain": polyhedron_to_json(z.domain)}


def zmap_from_json(doc) -> ZMap:
    validate(doc, "zmap")
    return ZMap(doc["source_dim"], [plfunction_from_json(c) for c in doc["components"]],
                polyhedron_from_json(doc["domain"]))


# -- finite algebras ---------------------------------------------------------

def algebra_to_json(A: FiniteMVAlgebra) -> dict:
    return {"ambient": A.ambient, "elements": [pt(e) for e in A.elements]}


def algebra_from_json(doc) -> FiniteMVAlgebra:
    validate(doc, "algebra")
    return FiniteMVAlgebra(doc["ambient"], [unpt(e) for e in doc["elements"]])


def spectrum_to_json(X: Spectrum) -> dict:
    return {"labels": jsonify(X.labels), "points": [pt(p) for p in X.sorted_points()]}


def spectrum_from_json(doc) -> Spectrum:
    validate(doc, "spectrum")
    return Spectrum(unjsonify(doc["labels"]), frozenset(unpt(p) for p in doc["points"]))


# -- tangents ----------------------------------------------------------------

def germ_to_json(g: CurveGerm) -> dict:
    return {"base": pt(g.base), "coeffs": [pt(c) for c in g.coeffs], "i0": g.i0}


def germ_from_json(doc) -> CurveGerm:
    validate(doc, "germ")
    return CurveGerm(unpt(doc["base"]), [unpt(c) for c in doc["coeffs"]], doc.get("i0"))


def tangent_to_json(u: TangentTuple) -> dict:
    return {"base": pt(u.base), "directions": [pt(d) for d in u.directions]}


def tangent_from_json(doc) -> TangentTuple:
    validate(doc, "tangent")
    return TangentTuple(unpt(doc["base"]), [unpt(d) for d in doc["directions"]])


def witness_to_json(w: OutgoingWitness) -> dict:
    return {"S": [pt(v) for v in w.S], "F": list(w.F), "lambda": pt(w.lam)}


def witness_from_json(doc) -> OutgoingWitness:
    validate(doc, "witness")
    return OutgoingWitness([unpt(v) for v in doc["S"]], doc["F"], unpt(doc["lambda"]))


def homspec_to_json(h) -> dict:
    return {"source": presentation_to_json(h.source), "target": presentation_to_json(h.target),
            "images": [to_text(t) for t in h.images]}


def homspec_from_json(doc):
    from .duality import HomSpec

    validate(doc, "homspec")
    return HomSpec(presentation_from_json(doc["source"]), presentation_from_json(doc["target"]),
                   tuple(parse_term(t) for t in doc["images"]))
