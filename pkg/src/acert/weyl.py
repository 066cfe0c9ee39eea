"""The relative Weyl algebra ``A = D_n ⊗ Q[s_1..s_r]``.

Monomials ``x^a d^b s^c`` are stored as one exponent tuple laid out as
``(a_1..a_n, b_1..b_n, c_1..c_r)`` and always kept in normal order (every
``x`` left of every ``d``; ``s`` central).

Side conventions, in one place:

* Modules are left modules.  A matrix with ``q`` rows and ``p`` columns
  represents the map ``A^p -> A^q`` sending the ``j``-th basis vector to
  column ``j``; a vector ``v`` goes to ``sum_j v_j * column_j``.  On row
  vectors this is right multiplication by the transposed matrix, which is
  what makes the map left-linear.
* ``coker`` of such a matrix is ``A^q`` modulo the left span of its columns.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb, perm

from gmpy2 import mpq

from . import _engine as E
from ._poly import Element, Matrix, engine_to_element, engine_to_vector, to_q, vector_to_engine
from .errors import DimensionMismatch, IndexOutOfRange, SignatureMismatch
from .orders import DegRevLex, MonomialOrder, WeightOrder, as_module_order
from .parsing import parse_element

_VAR = re.compile(r"^([xds])(\d+)$")


@lru_cache(maxsize=1 << 18)
def _weyl_mono_mul(n, a, b):
    # x^a1 d^b1 s^c1 * x^a2 d^b2 s^c2, normal ordered per variable by
    # d^p x^q = sum_k C(p,k) q!/(q-k)! x^(q-k) d^(p-k)
    per_var = []
    for i in range(n):
        p, q = a[n + i], b[i]
        if p == 0 or q == 0:
            per_var.append(((a[i] + q, p + b[n + i], 1),))
            continue
        opts = []
        for k in range(min(p, q) + 1):
            opts.append((a[i] + q - k, p + b[n + i] - k, comb(p, k) * perm(q, k)))
        per_var.append(tuple(opts))
    s_part = tuple(x + y for x, y in zip(a[2 * n:], b[2 * n:]))
    out = []
    for choice in product(*per_var):
        coef = 1
        xs, ds = [], []
        for xe, de, c in choice:
            xs.append(xe)
            ds.append(de)
            coef *= c
        out.append((tuple(xs) + tuple(ds) + s_part, coef))
    return tuple(out)


@dataclass(frozen=True)
class RingSignature:
    """``D_n[s_1..s_r]``: ``n`` pairs ``(x_i, d_i)`` and ``r`` central ``s_k``."""

    n: int
    r: int = 0

    def __post_init__(self):
        if self.n < 0 or self.r < 0:
            raise ValueError("n and r must be nonnegative")

    @property
    def nvars(self):
        return 2 * self.n + self.r

    @property
    def commutative(self):
        return self.n == 0

    @property
    def names(self):
        return ([f"x{i}" for i in range(1, self.n + 1)]
                + [f"d{i}" for i in range(1, self.n + 1)]
                + [f"s{k}" for k in range(1, self.r + 1)])

    @property
    def global_dimension(self):
        return self.n + self.r

    @property
    def default_order(self) -> MonomialOrder:
        n, r = self.n, self.r
        priority = tuple(range(n, 2 * n)) + tuple(range(n)) + tuple(range(2 * n, 2 * n + r))
        return DegRevLex(priority)

    @property
    def filtration_weights(self):
        """Order filtration: ``x -> 0``, ``d -> 1``, ``s -> 0``."""
        return (0,) * self.n + (1,) * self.n + (0,) * self.r

    def filtration_order(self) -> MonomialOrder:
        return WeightOrder(self.filtration_weights, self.default_order)

    def mono_mul(self, a, b):
        if self.n == 0:
            return ((tuple(x + y for x, y in zip(a, b)), 1),)
        return _weyl_mono_mul(self.n, a, b)

    # element constructors ----------------------------------------------------
    def element(self, terms=None):
        return WeylElement(self, {tuple(e): to_q(c) for e, c in (terms or {}).items()})

    def zero(self):
        return WeylElement(self)

    def one(self):
        return self.constant(1)

    def constant(self, c):
        return WeylElement(self, {(0,) * self.nvars: to_q(c)})

    def _unit(self, idx):
        e = [0] * self.nvars
        e[idx] = 1
        return WeylElement(self, {tuple(e): mpq(1)})

    def x(self, i):
        return self._unit(i - 1)

    def d(self, i):
        return self._unit(self.n + i - 1)

    def s(self, k):
        return self._unit(2 * self.n + k - 1)

    def gens(self):
        return [self._unit(i) for i in range(self.nvars)]

    def generator(self, name, text="", position=0):
        m = _VAR.match(name)
        if not m:
            raise IndexOutOfRange(f"unknown variable {name!r} at position {position}")
        kind, idx = m.group(1), int(m.group(2))
        bound = self.r if kind == "s" else self.n
        if not 1 <= idx <= bound:
            raise IndexOutOfRange(
                f"variable {name!r} at position {position} is outside D_{self.n}[s^{self.r}]")
        return {"x": self.x, "d": self.d, "s": self.s}[kind](idx)

    def parse(self, text):
        return parse_element(text, self)

    def __call__(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, WeylElement):
            if x.ring != self:
                raise SignatureMismatch(f"{x.ring} vs {self}")
            return x
        return self.constant(x)

    def matrix(self, rows):
        """Matrix from nested lists of elements or strings (row-major)."""
        rows = [[self(x) for x in row] for row in rows]
        cols = len(rows[0]) if rows else 0
        return WeylMatrix(self, len(rows), cols, rows)

    def columns_matrix(self, rows, columns):
        return WeylMatrix.from_columns(self, rows, [[self(x) for x in c] for c in columns])

    def __str__(self):
        return f"D_{self.n}[s^{self.r}]"


class WeylElement(Element):
    """Normally ordered element of :class:`RingSignature`."""

    __slots__ = ()

    @property
    def signature(self):
        return self.ring

    def order(self):
        """Order as a differential operator (top filtration degree)."""
        n = self.ring.n
        return max((sum(e[n:2 * n]) for e in self.terms), default=-1)


class WeylMatrix(Matrix):
    __slots__ = ()


# -- operations ------------------------------------------------------------

def weyl_mul(P, Q):
    if P.ring != Q.ring:
        raise SignatureMismatch(f"{P.ring} vs {Q.ring}")
    return P * Q


def tau_element(P):
    """Anti-automorphism ``x -> x``, ``d -> -d``, ``s -> s``."""
    sig = P.ring
    n = sig.n
    out = sig.zero()
    for e, c in P.terms.items():
        dpart = [0] * sig.nvars
        xpart = [0] * sig.nvars
        for i in range(n):
            xpart[i] = e[i]
            dpart[n + i] = e[n + i]
        for k in range(2 * n, sig.nvars):
            xpart[k] = e[k]
        sign = -1 if sum(e[n:2 * n]) % 2 else 1
        term = WeylElement(sig, {tuple(dpart): c * sign}) * WeylElement(sig, {tuple(xpart): mpq(1)})
        out = out + term
    return out


def tau(m):
    """Entrywise anti-automorphism followed by transposition.  Accepts a
    :class:`WeylMatrix` or a single element."""
    if isinstance(m, WeylElement):
        return tau_element(m)
    return WeylMatrix(m.ring, m.cols, m.rows,
                      [[tau_element(m.entries[i][j]) for i in range(m.rows)]
                       for j in range(m.cols)])


def _vectors(generators):
    gens = list(generators)
    if not gens:
        return None, 0, [], True
    if isinstance(gens[0], Element):
        return gens[0].ring, 1, [g.to_vector() for g in gens], True
    rank = len(gens[0])
    sig = None
    vecs = []
    for g in gens:
        if len(g) != rank:
            raise DimensionMismatch("generators live in different free modules")
        for x in g:
            if sig is None:
                sig = x.ring
            elif x.ring != sig:
                raise SignatureMismatch("generators from different rings")
        vecs.append(vector_to_engine(g))
    return sig, rank, vecs, False


def _mo(sig, order):
    return as_module_order(order if order is not None else sig.default_order)


def left_gb(generators, order=None):
    """Reduced left Groebner basis of the left ideal (list of elements) or
    left submodule (list of vectors) generated by ``generators``."""
    sig, rank, vecs, ideal = _vectors(generators)
    if sig is None:
        return []
    res = E.groebner(vecs, _mo(sig, order), sig)
    if ideal:
        return [engine_to_element(v, sig) for v in res.basis]
    return [engine_to_vector(v, sig, rank) for v in res.basis]


def left_nf(v, basis, order=None, *, is_groebner=False):
    """Normal form of ``v`` modulo the left submodule generated by ``basis``.

    Unless ``is_groebner`` is set the basis is completed first, so the result
    is zero exactly when ``v`` lies in the submodule."""
    ideal = isinstance(v, Element)
    sig = v.ring if ideal else v[0].ring
    rank = 1 if ideal else len(v)
    vv = v.to_vector() if ideal else vector_to_engine(v)
    bsig, brank, bvecs, _ = _vectors(basis)
    if bsig is not None and brank != rank:
        raise DimensionMismatch("basis vectors and v differ in rank")
    mo = _mo(sig, order)
    if is_groebner:
        idx = E._Basis(mo)
        for b in bvecs:
            if b:
                idx.append(E._monic(b, mo.key)[0])
        rem, _ = E._reduce(vv, idx, sig)
    else:
        res = E.groebner(bvecs, mo, sig)
        rem, _ = res.reduce(vv)
    return engine_to_element(rem, sig) if ideal else engine_to_vector(rem, sig, rank)


def left_syz(generators, order=None, *, signature=None):
    """Matrix whose columns ``c`` satisfy ``sum_k c_k * g_k = 0`` and generate
    all left syzygies of ``generators``."""
    gens = list(generators)
    sig, rank, vecs, _ = _vectors(gens)
    sig = sig or signature
    if sig is None:
        raise ValueError("left_syz of no generators needs the signature")
    syz = E.syzygy_vectors(vecs, _mo(sig, order), sig)
    return WeylMatrix.from_engine_columns(sig, len(gens), syz)


def left_lift(v, generators, order=None):
    """Left coefficients ``c`` with ``v = sum c_k g_k``, or ``None``."""
    gens = list(generators)
    sig, rank, vecs, _ = _vectors(gens)
    vv = v.to_vector() if isinstance(v, Element) else vector_to_engine(v)
    res = E.groebner(vecs, _mo(sig, order), sig, track=True)
    lift = res.lift(vv)
    return None if lift is None else engine_to_vector(lift, sig, len(gens))


# -- pruning and resolutions -------------------------------------------------

def _find_unit(entries, rows, cols):
    best = None
    for j in range(cols):
        for i in range(rows):
            x = entries[i][j]
            if x.terms and x.is_constant():
                weight = sum(1 for jj in range(cols) if entries[i][jj].terms) + \
                    sum(1 for ii in range(rows) if entries[ii][j].terms)
                if best is None or weight < best[0]:
                    best = (weight, i, j)
    return None if best is None else best[1:]


def _schur(entries, i, j):
    """Eliminate row ``i`` and column ``j`` around the constant pivot."""
    rows, cols = len(entries), len(entries[0])
    inv = 1 / entries[i][j].constant_value()
    out = []
    for m in range(rows):
        if m == i:
            continue
        row = []
        djm = entries[m][j]
        for l in range(cols):
            if l == j:
                continue
            x = entries[m][l]
            if djm.terms and entries[i][l].terms:
                x = x - (entries[i][l] * djm).scale(inv)
            row.append(x)
        out.append(row)
    return out


def prune_presentation(matrix):
    """Remove generator/relation pairs joined by a constant entry, and zero
    relations.  Returns ``(pruned_matrix, kept_generator_indices)``; the
    cokernels are isomorphic."""
    sig = matrix.ring
    entries = [list(r) for r in matrix.entries]
    gens = list(range(matrix.rows))
    ncols = matrix.cols
    while entries and ncols:
        hit = _find_unit(entries, len(entries), ncols)
        if hit is None:
            break
        i, j = hit
        entries = _schur(entries, i, j)
        del gens[i]
        ncols -= 1
    rows = len(gens)
    if rows == 0:
        return WeylMatrix(sig, 0, 0, []), gens
    keep = [j for j in range(ncols) if any(entries[i][j].terms for i in range(rows))]
    entries = [[entries[i][j] for j in keep] for i in range(rows)]
    return WeylMatrix(sig, rows, len(keep), entries), gens


@dataclass
class Resolution:
    """``F_L -> ... -> F_1 -> F_0``; ``maps[k-1]`` is ``d_k`` with
    ``ranks[k-1]`` rows and ``ranks[k]`` columns."""

    signature: RingSignature
    ranks: list
    maps: list
    truncated: bool = False

    @property
    def length(self):
        return len(self.maps)

    def as_complex(self):
        from .homlib import ChainComplex
        return ChainComplex(self.signature, tuple(self.ranks), tuple(self.maps))


def _prune_level(maps, k, ranks):
    """Split off constant entries of ``maps[k]`` (which is ``d_{k+1}``)."""
    sig = maps[k].ring
    while True:
        d = maps[k]
        if d.rows == 0 or d.cols == 0:
            return
        entries = [list(r) for r in d.entries]
        hit = _find_unit(entries, d.rows, d.cols)
        if hit is None:
            return
        i, j = hit
        new = _schur(entries, i, j)
        maps[k] = WeylMatrix(sig, d.rows - 1, d.cols - 1, new)
        if k > 0:
            prev = maps[k - 1]
            maps[k - 1] = WeylMatrix(sig, prev.rows, prev.cols - 1,
                                     [[x for c, x in enumerate(row) if c != i] for row in prev.entries])
        if k + 1 < len(maps):
            nxt = maps[k + 1]
            maps[k + 1] = WeylMatrix(sig, nxt.rows - 1, nxt.cols,
                                     [row for r, row in enumerate(nxt.entries) if r != j])
        ranks[k] -= 1
        ranks[k + 1] -= 1


def free_resolution(presentation, max_length, order=None, *, minimize=True):
    """Free resolution of ``coker(presentation)`` by iterated syzygies.

    Each new differential is pruned of constant entries when ``minimize`` is
    set.  ``truncated`` is set when ``max_length`` maps were built and the
    last one still has a kernel."""
    if max_length < 0:
        raise ValueError("max_length must be >= 0")
    sig = presentation.ring
    cols = [c for c in presentation.columns() if any(x.terms for x in c)]
    ranks = [presentation.rows]
    maps = []
    if cols:
        if max_length == 0:
            return Resolution(sig, ranks, maps, truncated=True)
        maps.append(WeylMatrix.from_columns(sig, presentation.rows, cols))
        ranks.append(len(cols))
        if minimize:
            _prune_level(maps, 0, ranks)
    while maps and ranks[-1] > 0:
        syz = left_syz(maps[-1].columns(), order, signature=sig)
        if syz.cols == 0:
            break
        if len(maps) == max_length:
            return Resolution(sig, ranks, maps, truncated=True)
        maps.append(syz)
        ranks.append(syz.cols)
        if minimize:
            _prune_level(maps, len(maps) - 1, ranks)
    while maps and ranks[-1] == 0:
        maps.pop()
        ranks.pop()
    return Resolution(sig, ranks, maps)
