"""Geometry and value (de)serialization.

Geometry files are JSON objects {"kind": "polytope" | "cone" | "complex" |
"abstract", "dim": n, ...} with rationals written as strings "p/q".
Elements add a "weights" object keyed by cell index.  Abstract complexes
take "edge_lengths" as rationals, or {"sq": "p/q"} for lengths that are
only rational after squaring.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Union

from .cellcomplex import CellComplex, build_complex
from .cone import Cone
from .element import Element, _make, indicator
from .metric import AbstractEuclideanComplex
from .polytope import Polytope
from .ringvalue import Int, Poly, Prod, Rat, Real, RingValue, Tensor
from .solid import SolidAngle


class SchemaError(ValueError):
    pass


def _frac(s) -> Fraction:
    if isinstance(s, str):
        return Fraction(s)
    if isinstance(s, int):
        return Fraction(s)
    raise SchemaError(f"rationals must be strings 'p/q' or integers, got {s!r}")


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def load_geometry(data: Union[str, dict]):
    """Parse a geometry JSON object (or path) into the matching type."""
    if isinstance(data, str):
        with open(data) as fh:
            data = json.load(fh)
    try:
        kind = data["kind"]
        dim = int(data["dim"])
    except KeyError as exc:
        raise SchemaError(f"missing field {exc} in geometry object") from exc
    if kind == "polytope":
        return Polytope.from_points([list(map(_frac, v)) for v in _req(data, "vertices")])
    if kind == "cone":
        return Cone.from_generators([list(map(_frac, g)) for g in _req(data, "generators")], dim)
    if kind == "complex":
        conical = "generators" in data
        pts = [tuple(map(_frac, v)) for v in data.get("vertices", data.get("generators", []))]
        cells = []
        for idxs in _req(data, "cells"):
            chosen = [pts[i] for i in idxs]
            if conical:
                cells.append(Cone.from_generators(chosen, dim))
            else:
                cells.append(Polytope.from_points(chosen))
        k = build_complex(cells, dim, conical)
        if "weights" in data:
            wm = {}
            for key, w in data["weights"].items():
                wm[int(key)] = int(w)
            return _make(k, wm)
        return k
    if kind == "abstract":
        lengths = {}
        for key, val in _req(data, "edge_lengths").items():
            pair = tuple(_parse_vertex_label(part) for part in key.split("-"))
            if isinstance(val, dict):
                lengths[frozenset(pair)] = _frac(val["sq"])
            else:
                q = _frac(val)
                lengths[frozenset(pair)] = q * q
        simplices = [tuple(_parse_vertex_label(v) for v in s) for s in _req(data, "cells")]
        return AbstractEuclideanComplex.build(simplices, lengths)
    raise SchemaError(f"unknown geometry kind {kind!r}")


def _parse_vertex_label(v):
    if isinstance(v, str) and v.lstrip("-").isdigit():
        return int(v)
    return v


def _req(data, field):
    if field not in data:
        raise SchemaError(f"missing field {field!r} for kind {data.get('kind')!r}")
    return data[field]


def dump_geometry(obj) -> dict:
    if isinstance(obj, Polytope):
        return {
            "kind": "polytope",
            "dim": obj.ambient,
            "vertices": [[_frac_str(x) for x in v] for v in obj.vertices],
        }
    if isinstance(obj, Cone):
        return {
            "kind": "cone",
            "dim": obj.ambient,
            "generators": [[_frac_str(Fraction(x)) for x in g] for g in obj.generators],
        }
    if isinstance(obj, Element):
        k = obj.complex
        verts: list = []
        vindex: dict = {}

        def vid(v):
            v = tuple(Fraction(x) for x in v)
            if v not in vindex:
                vindex[v] = len(verts)
                verts.append(v)
            return vindex[v]

        cells = []
        for c in k.cells:
            pts = c.vertices if isinstance(c, Polytope) else c.generators
            cells.append([vid(v) for v in pts])
        out = {
            "kind": "complex",
            "dim": k.ambient,
            "cells": cells,
            "weights": {str(i): w for i, w in obj.weights},
        }
        key = "generators" if k.conical else "vertices"
        out[key] = [[_frac_str(x) for x in v] for v in verts]
        return out
    if isinstance(obj, CellComplex):
        return dump_geometry(indicator(obj)) | {"weights": None}
    raise SchemaError(f"cannot serialize {type(obj).__name__}")


def dump_value(v) -> object:
    """Tagged JSON form of a ring value or solid angle."""
    if isinstance(v, SolidAngle):
        return {
            "type": "solid_angle",
            "value": v.value,
            "half_width": v.half_width,
            "method": v.method,
            "exact": _frac_str(v.exact) if v.exact is not None else None,
        }
    if isinstance(v, Int):
        return {"type": "int", "value": v.n}
    if isinstance(v, Rat):
        return {"type": "rat", "value": _frac_str(v.q)}
    if isinstance(v, Real):
        return {"type": "real", "value": v.x, "tol": v.tol}
    if isinstance(v, Poly):
        return {
            "type": "poly",
            "terms": [
                {"monomial": ["%s^%d" % (n, e) for n, e in mono], "coeff": dump_value(c)}
                for mono, c in v.terms
            ],
        }
    if isinstance(v, Tensor):
        return {
            "type": "tensor",
            "rank": v.rank,
            "terms": [
                {"coeff": _frac_str(c), "slots": [1 if s == 1 else float(s) for s in slots]}
                for c, slots in v.terms
            ],
        }
    if isinstance(v, Prod):
        return {"type": "product", "first": dump_value(v.a), "second": dump_value(v.b)}
    if isinstance(v, (int, float, str)):
        return v
    if isinstance(v, Fraction):
        return {"type": "rat", "value": _frac_str(v)}
    raise SchemaError(f"cannot serialize value {v!r}")
