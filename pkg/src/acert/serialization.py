"""Plain-data (JSON-compatible) forms of elements, matrices, modules and
complexes, plus a stable content hash."""
from __future__ import annotations

import hashlib
import json

from .errors import DimensionMismatch, InputError
from .homlib import ChainComplex, PresentedModule
from .weyl import RingSignature, WeylMatrix


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def content_hash(obj):
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


def signature_to_data(sig):
    return {"n": sig.n, "r": sig.r}


def signature_from_data(data):
    try:
        n, r = int(data["n"]), int(data.get("r", 0))
    except (KeyError, TypeError, ValueError):
        raise InputError("ring must be an object with integer fields n and r") from None
    if n < 0 or r < 0:
        raise InputError("ring sizes must be nonnegative")
    return RingSignature(n, r)


def element_from_data(sig, text):
    if isinstance(text, (int,)):
        return sig.constant(text)
    if not isinstance(text, str):
        raise InputError(f"expected a polynomial string, got {type(text).__name__}")
    return sig.parse(text)


def vectors_to_data(matrix):
    """Columns of ``matrix`` as lists of strings."""
    return [[str(x) for x in col] for col in matrix.columns()]


def matrix_from_vectors(sig, rows, vectors):
    cols = []
    for v in vectors:
        if isinstance(v, (str, int)):
            v = [v]
        if len(v) != rows:
            raise DimensionMismatch(f"vector of length {len(v)}, expected {rows}")
        cols.append([element_from_data(sig, x) for x in v])
    return WeylMatrix.from_columns(sig, rows, cols)


def module_to_data(M):
    return {"generators": M.generators, "relations": vectors_to_data(M.relations)}


def module_from_data(sig, data):
    if not isinstance(data, dict) or "generators" not in data:
        raise InputError("module needs a 'generators' count")
    q = int(data["generators"])
    return PresentedModule(sig, q, matrix_from_vectors(sig, q, data.get("relations", [])))


def complex_to_data(C):
    out = {"ranks": list(C.ranks), "maps": [vectors_to_data(d) for d in C.maps]}
    if C.relations is not None:
        out["relations"] = [None if r is None else vectors_to_data(r) for r in C.relations]
    return out


def complex_from_data(sig, data):
    if not isinstance(data, dict) or "ranks" not in data or "maps" not in data:
        raise InputError("complex needs 'ranks' and 'maps'")
    ranks = [int(k) for k in data["ranks"]]
    maps_data = data["maps"]
    if len(maps_data) != len(ranks) - 1:
        raise InputError("need one map per positive slot")
    maps = [matrix_from_vectors(sig, ranks[q - 1], maps_data[q - 1]) for q in range(1, len(ranks))]
    rel = data.get("relations")
    relations = None
    if rel is not None:
        if len(rel) != len(ranks):
            raise InputError("need one relation list (or null) per slot")
        relations = [None if r is None else matrix_from_vectors(sig, ranks[q], r)
                     for q, r in enumerate(rel)]
    return ChainComplex(sig, ranks, maps, relations)


def complex_hash(C):
    return content_hash({"ring": signature_to_data(C.signature), "complex": complex_to_data(C)})
