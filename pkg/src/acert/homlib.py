"""Homology of complexes, Ext^k(M, A) as left modules, grade, projective
dimension and Auslander-condition spot checks over ``D_n[s_1..s_r]``.

Ext is computed by resolving ``M``, dualizing the resolution (transpose the
differentials and apply the anti-automorphism ``tau`` so the dual complex is
one of left modules) and taking homology.  Presentations of Ext are only
unique up to isomorphism, so callers only ever ask isomorphism-invariant
questions about them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import _engine as E
from ._poly import engine_to_vector, vector_to_engine
from .errors import (IncompatibleComplex, InternalInconsistency, InvalidSelection,
                     TruncatedResolution, ZeroModuleError, DimensionMismatch)
from .weyl import RingSignature, WeylMatrix, free_resolution, prune_presentation, tau

INFINITY = math.inf


@dataclass(frozen=True)
class PresentedModule:
    """``A^generators`` modulo the left span of the columns of ``relations``."""

    signature: RingSignature
    generators: int
    relations: WeylMatrix

    def __post_init__(self):
        if self.relations.rows != self.generators:
            raise DimensionMismatch(
                f"relation matrix has {self.relations.rows} rows for {self.generators} generators")
        if self.relations.ring != self.signature:
            raise DimensionMismatch("relation matrix over a different ring")

    @classmethod
    def free(cls, signature, rank=1):
        return cls(signature, rank, WeylMatrix(signature, rank, 0, [[] for _ in range(rank)]))

    @classmethod
    def cyclic(cls, signature, relations):
        """``A / A·(P_1, ..., P_k)``."""
        rel = [signature(p) for p in relations]
        return cls(signature, 1, WeylMatrix(signature, 1, len(rel), [rel]))

    @classmethod
    def coker(cls, matrix):
        return cls(matrix.ring, matrix.rows, matrix)

    @classmethod
    def from_vectors(cls, signature, generators, vectors):
        return cls(signature, generators,
                   WeylMatrix.from_engine_columns(signature, generators, vectors))

    def relation_vectors(self):
        return self.relations.engine_columns()

    def pruned(self):
        m, _ = prune_presentation(self.relations)
        return PresentedModule(self.signature, m.rows, m)

    def __str__(self):
        cols = ", ".join("(" + ", ".join(str(x) for x in c) + ")" for c in self.relations.columns())
        return f"coker over {self.signature} of {self.generators} generators: [{cols}]"


@dataclass(frozen=True)
class ChainComplex:
    """``0 -> M_m -> ... -> M_0``.

    ``ranks[q]`` is the generator count of slot ``q``; ``maps[q-1]`` is
    ``d_q: M_q -> M_{q-1}`` (``ranks[q-1]`` rows, ``ranks[q]`` columns, each
    column the image of a generator).  ``relations[q]`` (optional) presents
    slot ``q`` as a cokernel; ``None`` means the slot is free.
    """

    signature: RingSignature
    ranks: tuple
    maps: tuple
    relations: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(self.ranks))
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(self.maps) != len(self.ranks) - 1:
            raise IncompatibleComplex("need exactly one differential per positive slot")
        for q, d in enumerate(self.maps, start=1):
            if d.rows != self.ranks[q - 1] or d.cols != self.ranks[q]:
                raise IncompatibleComplex(
                    f"d_{q} is {d.rows}x{d.cols}, expected {self.ranks[q - 1]}x{self.ranks[q]}")
            if d.ring != self.signature:
                raise IncompatibleComplex(f"d_{q} over a different ring")
        if self.relations is not None:
            rel = tuple(self.relations)
            if len(rel) != len(self.ranks):
                raise IncompatibleComplex("one relation entry per slot expected")
            for q, r in enumerate(rel):
                if r is not None and r.rows != self.ranks[q]:
                    raise IncompatibleComplex(f"slot {q} relations have the wrong row count")
            if all(r is None or r.cols == 0 for r in rel):
                rel = None
            object.__setattr__(self, "relations", rel)

    @property
    def length(self):
        return len(self.maps)

    def is_free(self):
        return self.relations is None

    def slot_relations(self, q):
        if self.relations is None or self.relations[q] is None:
            return []
        return self.relations[q].engine_columns()

    def slot_module(self, q):
        if self.relations is None or self.relations[q] is None:
            return PresentedModule.free(self.signature, self.ranks[q])
        return PresentedModule(self.signature, self.ranks[q], self.relations[q])


@dataclass
class HomologyReport:
    modules: dict
    zero: dict
    largest_nonvanishing: int | None


# -- submodule helpers --------------------------------------------------------

def _order(sig):
    return sig.default_order.module("top")


def _mul_vec(sig, v, matrix_cols):
    """Image of engine vector ``v`` (source coordinates) under a map given by
    engine column vectors."""
    out = {}
    for (i, e), c in v.items():
        E.axpy(out, c, e, matrix_cols[i], sig)
    return out


def _kernel_generators(sig, rank, out_cols, out_rel):
    """Generators of ``{v in A^rank : v·out in span(out_rel)}``."""
    if not out_cols or all(not c for c in out_cols) and not out_rel:
        return [{(i, (0,) * sig.nvars): E.ONE} for i in range(rank)]
    gens = list(out_cols) + list(out_rel)
    if not out_rel:
        return E.syzygy_vectors(gens, _order(sig), sig)
    syz = E.syzygy_vectors(gens, _order(sig), sig)
    out, seen = [], set()
    for s in syz:
        p = {t: c for t, c in s.items() if t[0] < rank}
        if p:
            fp = E.freeze(p)
            if fp not in seen:
                seen.add(fp)
                out.append(p)
    return out


def _subquotient(sig, kernel, image):
    """Presentation (as engine relation vectors over ``len(kernel)``
    generators) of ``span(kernel) / span(image)``, given ``image`` ⊆
    ``span(kernel)``."""
    res = E.groebner(kernel, _order(sig), sig, syzygies=True, reduced=False)
    rels = []
    for b in image:
        if not b:
            continue
        lift = res.lift(b)
        if lift is None:
            raise InternalInconsistency("image generator not in the kernel span",
                                        {"vector": str(b)})
        if lift:
            rels.append(lift)
    rels.extend(res.syzygies)
    return rels


def _module_from(sig, ngens, rels, prune=True):
    m = PresentedModule.from_vectors(sig, ngens, rels)
    return m.pruned() if prune else m


def _span_contains_all(sig, image, vectors):
    image = [v for v in image if v]
    vectors = [v for v in vectors if v]
    if not vectors:
        return True
    if not image:
        return False
    res = E.groebner(image, _order(sig), sig)
    return all(not res.reduce(v)[0] for v in vectors)


# -- complexes ------------------------------------------------------------

def composition_defects(C):
    """Slots ``q`` where ``d_q o d_{q+1}`` is not zero (modulo the relations of
    slot ``q-1`` for presented complexes), plus slots where a differential
    does not respect the relations of its source."""
    sig = C.signature
    bad = []
    for q in range(1, C.length):
        d, d_next = C.maps[q - 1], C.maps[q]
        comp = [_mul_vec(sig, v, d.engine_columns()) for v in d_next.engine_columns()]
        rel = C.slot_relations(q - 1)
        if rel:
            if not _span_contains_all(sig, rel, comp):
                bad.append(q)
        elif any(comp):
            bad.append(q)
    if C.relations is not None:
        for q in range(1, C.length + 1):
            src = C.slot_relations(q)
            if not src:
                continue
            d = C.maps[q - 1]
            images = [_mul_vec(sig, v, d.engine_columns()) for v in src]
            if not _span_contains_all(sig, C.slot_relations(q - 1), images):
                bad.append(("relations", q))
    return bad


def _slot_kernel(C, q):
    sig = C.signature
    if q == 0:
        return [{(i, (0,) * sig.nvars): E.ONE} for i in range(C.ranks[0])]
    d = C.maps[q - 1]
    return _kernel_generators(sig, C.ranks[q], d.engine_columns(), C.slot_relations(q - 1))


def _slot_image(C, q):
    img = list(C.slot_relations(q))
    if q < C.length:
        img = C.maps[q].engine_columns() + img
    return [v for v in img if v]


def homology(C, q, *, check=True, prune=True):
    """Presentation of ``H_q = ker d_q / im d_{q+1}``."""
    if not 0 <= q <= C.length:
        raise IncompatibleComplex(f"slot {q} outside 0..{C.length}")
    if check and composition_defects(C):
        raise IncompatibleComplex("differentials do not compose to zero")
    sig = C.signature
    kernel = _slot_kernel(C, q)
    if not kernel:
        return PresentedModule.free(sig, 0)
    rels = _subquotient(sig, kernel, _slot_image(C, q))
    return _module_from(sig, len(kernel), rels, prune)


def homology_is_zero(C, q):
    """``H_q == 0`` by checking kernel generators against the image span."""
    kernel = _slot_kernel(C, q)
    return _span_contains_all(C.signature, _slot_image(C, q), kernel)


def nonzero_homology_generator(C, q):
    """A kernel generator at slot ``q`` that is not a boundary, or ``None``."""
    sig = C.signature
    kernel = _slot_kernel(C, q)
    image = _slot_image(C, q)
    res = E.groebner(image, _order(sig), sig) if image else None
    for v in kernel:
        if res is None or res.reduce(v)[0]:
            return engine_to_vector(v, sig, C.ranks[q])
    return None


def homology_report(C):
    if composition_defects(C):
        raise IncompatibleComplex("differentials do not compose to zero")
    modules, zero = {}, {}
    largest = None
    for q in range(C.length + 1):
        z = homology_is_zero(C, q)
        zero[q] = z
        modules[q] = PresentedModule.free(C.signature, 0) if z else homology(C, q, check=False)
        if not z and q > 0:
            largest = q
    return HomologyReport(modules, zero, largest)


# -- modules ----------------------------------------------------------------

def is_zero(M):
    """True iff every generator lies in the relation submodule."""
    if M.generators == 0:
        return True
    sig = M.signature
    rels = [v for v in M.relation_vectors() if v]
    units = [{(i, (0,) * sig.nvars): E.ONE} for i in range(M.generators)]
    return _span_contains_all(sig, rels, units)


@dataclass
class _DualData:
    resolution: object
    duals: list          # duals[k-1] = tau(d_k): F_{k-1}^* -> F_k^*


@lru_cache(maxsize=128)
def _dual_data(M):
    sig = M.signature
    res = free_resolution(M.relations, sig.global_dimension + 2)
    return _DualData(res, [tau(d) for d in res.maps])


def _ext_pieces(M, k):
    data = _dual_data(M)
    res = data.resolution
    L = res.length
    if k > L:
        if res.truncated:
            raise TruncatedResolution(f"resolution truncated at length {L}; Ext^{k} unavailable")
        return None
    if k + 1 > L and res.truncated:
        raise TruncatedResolution(f"resolution truncated at length {L}; Ext^{k} unavailable")
    rank = res.ranks[k]
    out_cols = data.duals[k].engine_columns() if k < L else []
    in_cols = data.duals[k - 1].engine_columns() if k >= 1 else []
    return rank, out_cols, in_cols


def ext(M, k, *, prune=True):
    """``Ext^k_A(M, A)`` as a presented left module."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    sig = M.signature
    pieces = _ext_pieces(M, k)
    if pieces is None:
        return PresentedModule.free(sig, 0)
    rank, out_cols, in_cols = pieces
    if rank == 0:
        return PresentedModule.free(sig, 0)
    kernel = _kernel_generators(sig, rank, out_cols, [])
    if not kernel:
        return PresentedModule.free(sig, 0)
    rels = _subquotient(sig, kernel, [v for v in in_cols if v])
    return _module_from(sig, len(kernel), rels, prune)


def ext_is_zero(M, k):
    sig = M.signature
    pieces = _ext_pieces(M, k)
    if pieces is None:
        return True
    rank, out_cols, in_cols = pieces
    if rank == 0:
        return True
    kernel = _kernel_generators(sig, rank, out_cols, [])
    return _span_contains_all(sig, [v for v in in_cols if v], kernel)


def _check_overrun(M):
    top = M.signature.global_dimension + 1
    if not ext_is_zero(M, top):
        raise InternalInconsistency(
            f"Ext^{top} is nonzero although the global dimension is {top - 1}",
            {"module": str(M)})


def grade(M):
    """Smallest ``k`` with ``Ext^k(M, A) != 0``; ``math.inf`` for ``M = 0``."""
    if is_zero(M):
        return INFINITY
    for k in range(M.signature.global_dimension + 1):
        if not ext_is_zero(M, k):
            return k
    _check_overrun(M)
    raise InternalInconsistency("nonzero module with vanishing Ext in every degree",
                                {"module": str(M)})


def pdim(M):
    """Largest ``k`` with ``Ext^k(M, A) != 0``."""
    if is_zero(M):
        raise ZeroModuleError("projective dimension of the zero module")
    _check_overrun(M)
    for k in range(M.signature.global_dimension, -1, -1):
        if not ext_is_zero(M, k):
            return k
    raise InternalInconsistency("nonzero module with vanishing Ext in every degree",
                                {"module": str(M)})


def ext_dimensions(M):
    """``{k: Ext^k is nonzero}`` for ``k = 0 .. n + r + 1``."""
    return {k: not ext_is_zero(M, k) for k in range(M.signature.global_dimension + 2)}


def submodule(E_mod, selection):
    """Presentation of the submodule of ``E_mod`` generated by ``selection``:
    generator indices or vectors of length ``E_mod.generators``."""
    sig = E_mod.signature
    t = E_mod.generators
    vecs = []
    for s in selection:
        if isinstance(s, int):
            if not 0 <= s < t:
                raise InvalidSelection(f"generator index {s} outside 0..{t - 1}")
            vecs.append({(s, (0,) * sig.nvars): E.ONE})
        else:
            s = tuple(s)
            if len(s) != t or any(x.ring != sig for x in s):
                raise InvalidSelection("selected vector has the wrong length or ring")
            vecs.append(vector_to_engine(s))
    u = len(vecs)
    if u == 0:
        return PresentedModule.free(sig, 0)
    rel = [v for v in E_mod.relation_vectors() if v]
    gens = vecs + rel
    syz = E.syzygy_vectors(gens, _order(sig), sig)
    proj = []
    for s in syz:
        p = {tt: c for tt, c in s.items() if tt[0] < u}
        if p:
            proj.append(p)
    return _module_from(sig, u, proj)


def auslander_check(M, k, selection=None, *, ext_module=None):
    """Spot check of Auslander's condition: the submodule ``N`` of
    ``Ext^k(M, A)`` generated by ``selection`` (default: all generators)
    has grade at least ``k``."""
    E_mod = ext_module if ext_module is not None else ext(M, k)
    if selection is None:
        selection = list(range(E_mod.generators))
    N = submodule(E_mod, selection)
    return grade(N) >= k
