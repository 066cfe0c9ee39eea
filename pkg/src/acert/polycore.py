"""Exact commutative polynomials over Q: Groebner bases, normal forms,
syzygies, elimination, Krull dimension, exact division and Fitting ideals.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from gmpy2 import mpq

from . import _engine as E
from ._poly import Element, Matrix, engine_to_element, engine_to_vector, to_q, vector_to_engine
from .errors import DimensionMismatch, DivisionByZero, IndexOutOfRange, NotDivisible
from .orders import DegRevLex, EliminationOrder, MonomialOrder, as_module_order
from .parsing import parse_element

Rational = type(mpq(0))


@dataclass(frozen=True)
class PolyRing:
    """Q[v_1, ..., v_k] with variables ordered as given (first is biggest)."""

    variables: tuple
    default_order: MonomialOrder = field(default=DegRevLex(), compare=False)
    commutative = True

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self):
        return len(self.variables)

    @property
    def names(self):
        return self.variables

    @staticmethod
    def mono_mul(a, b):
        return ((tuple(x + y for x, y in zip(a, b)), 1),)

    def element(self, terms=None):
        return CommPoly(self, {tuple(e): to_q(c) for e, c in (terms or {}).items()})

    def zero(self):
        return CommPoly(self)

    def one(self):
        return self.constant(1)

    def constant(self, c):
        return CommPoly(self, {(0,) * self.nvars: to_q(c)})

    def gen(self, i):
        e = [0] * self.nvars
        e[i] = 1
        return CommPoly(self, {tuple(e): mpq(1)})

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def generator(self, name, text="", position=0):
        try:
            return self.gen(self.variables.index(name))
        except ValueError:
            raise IndexOutOfRange(f"unknown variable {name!r} at position {position}") from None

    def parse(self, text):
        return parse_element(text, self)

    def __call__(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, CommPoly):
            return x
        return self.constant(x)

    def __repr__(self):
        return f"PolyRing({', '.join(self.variables)})"


def poly_ring(names):
    """``poly_ring("x y z")`` or ``poly_ring(["x", "y"])``."""
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    return PolyRing(tuple(names))


class CommPoly(Element):
    """Element of a :class:`PolyRing`."""

    __slots__ = ()

    @property
    def variables(self):
        return self.ring.variables

    def diff(self, i):
        """Partial derivative by the ``i``-th variable (index or name)."""
        if isinstance(i, str):
            i = self.ring.variables.index(i)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return CommPoly(self.ring, out)

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=-1)

    def substitute(self, values):
        """Substitute ``{index: CommPoly}``; other variables are kept."""
        ring = self.ring
        out = ring.zero()
        for e, c in self.terms.items():
            term = ring.constant(c)
            rest = list(e)
            for i, v in values.items():
                if e[i]:
                    term = term * v ** e[i]
                    rest[i] = 0
            term = term * CommPoly(ring, {tuple(rest): mpq(1)})
            out = out + term
        return out

    def content_normalized(self):
        """Scale to a primitive integer polynomial with positive leading coefficient."""
        if not self.terms:
            return self
        from math import gcd, lcm
        den = 1
        for c in self.terms.values():
            den = lcm(den, int(c.denominator))
        ints = [int(c * den) for c in self.terms.values()]
        g = 0
        for v in ints:
            g = gcd(g, v)
        _, lc = self.leading_term()
        s = mpq(den, g) * (1 if lc > 0 else -1)
        return self.scale(s)


class CommMatrix(Matrix):
    __slots__ = ()


# -- helpers -----------------------------------------------------------------

def _as_vectors(generators):
    """Accept polynomials or sequences of polynomials; return (ring, rank, vecs, ideal?)."""
    gens = list(generators)
    if not gens:
        return None, 0, [], True
    if isinstance(gens[0], Element):
        ring = gens[0].ring
        return ring, 1, [g.to_vector() for g in gens], True
    rank = len(gens[0])
    ring = None
    vecs = []
    for g in gens:
        if len(g) != rank:
            raise DimensionMismatch("generators live in different free modules")
        ring = ring or (g[0].ring if rank else None)
        vecs.append(vector_to_engine(g))
    return ring, rank, vecs, False


def _from_vectors(vecs, ring, rank, ideal):
    if ideal:
        return [engine_to_element(v, ring) for v in vecs]
    return [engine_to_vector(v, ring, rank) for v in vecs]


def _order(ring, order):
    return as_module_order(order if order is not None else ring.default_order)


# -- operations ---------------------------------------------------------------

def comm_gb(generators, order=None):
    """Reduced, monic Groebner basis of an ideal (list of polynomials) or a
    submodule (list of equal-length polynomial sequences)."""
    ring, rank, vecs, ideal = _as_vectors(generators)
    if ring is None:
        return []
    res = E.groebner(vecs, _order(ring, order), ring)
    return _from_vectors(res.basis, ring, rank, ideal)


def comm_nf(v, basis, order=None):
    """Normal form of ``v`` modulo a Groebner basis."""
    if isinstance(v, Element):
        ring, vv, ideal, rank = v.ring, v.to_vector(), True, 1
    else:
        ring, vv, ideal, rank = v[0].ring, vector_to_engine(v), False, len(v)
    for b in basis:
        blen = 1 if isinstance(b, Element) else len(b)
        if blen != rank:
            raise DimensionMismatch("basis vectors and v differ in rank")
    mo = _order(ring, order)
    idx = E._Basis(mo)
    for b in basis:
        bv = b.to_vector() if isinstance(b, Element) else vector_to_engine(b)
        if bv:
            idx.append(E._monic(bv, mo.key)[0])
    rem, _ = E._reduce(vv, idx, ring)
    return engine_to_element(rem, ring) if ideal else engine_to_vector(rem, ring, rank)


def comm_syz(generators, order=None):
    """Matrix whose columns generate the syzygies of ``generators``."""
    gens = list(generators)
    ring, rank, vecs, _ = _as_vectors(gens)
    m = len(gens)
    if ring is None:
        raise ValueError("comm_syz needs at least one generator to know the ring")
    syz = E.syzygy_vectors(vecs, _order(ring, order), ring)
    return CommMatrix.from_engine_columns(ring, m, syz)


def comm_lift(v, generators, order=None):
    """Coefficients ``c`` with ``v = sum c_i generators_i`` or ``None``."""
    gens = list(generators)
    ring, rank, vecs, ideal = _as_vectors(gens)
    vv = v.to_vector() if isinstance(v, Element) else vector_to_engine(v)
    res = E.groebner(vecs, _order(ring, order), ring, track=True)
    lift = res.lift(vv)
    if lift is None:
        return None
    return engine_to_vector(lift, ring, len(gens))


def _leading_sets(gens, ring, order=None):
    mo = _order(ring, order)
    res = E.groebner([g.to_vector() for g in gens if g], mo, ring)
    return [t[1] for t in res.leads]


def _monomial_dim(leads, nvars):
    """Krull dimension of Q[v]/(monomials): the largest variable subset that
    supports no leading monomial."""
    if any(not any(e) for e in leads):
        return -1
    supports = [frozenset(i for i, k in enumerate(e) if k) for e in leads]
    for size in range(nvars, -1, -1):
        for subset in itertools.combinations(range(nvars), size):
            s = set(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def ideal_dim(generators, ring=None, order=None):
    """Krull dimension of ``ring / (generators)``; ``-1`` for the unit ideal."""
    gens = [g for g in generators if g]
    if ring is None:
        if not generators:
            raise ValueError("ideal_dim of an empty list needs the ring")
        ring = generators[0].ring
    if not gens:
        return ring.nvars
    return _monomial_dim(_leading_sets(gens, ring, order), ring.nvars)


def monomial_module_dim(leads, rank, nvars):
    """Krull dimension of ``Q[v]^rank / (monomial submodule)``; ``-1`` if zero."""
    best = -1
    for comp in range(rank):
        mons = [e for c, e in leads if c == comp]
        best = max(best, _monomial_dim(mons, nvars) if mons else nvars)
    return best


def eliminate(generators, drop, ring=None):
    """Generators of ``(generators) ∩ Q[remaining variables]`` as polynomials
    of a new ring on the remaining variables."""
    ring = ring or generators[0].ring
    drop_idx = tuple(sorted(ring.variables.index(v) if isinstance(v, str) else v for v in drop))
    keep = [i for i in range(ring.nvars) if i not in drop_idx]
    sub = PolyRing(tuple(ring.variables[i] for i in keep))
    gens = [g for g in generators if g]
    if not gens:
        return []
    if not drop_idx:
        return [CommPoly(sub, dict(g.terms)) for g in comm_gb(gens)]
    basis = comm_gb(gens, EliminationOrder(drop_idx))
    out = []
    for g in basis:
        if all(e[i] == 0 for e in g.terms for i in drop_idx):
            out.append(CommPoly(sub, {tuple(e[i] for i in keep): c for e, c in g.terms.items()}))
    return out


def exact_divide(f, g):
    """Quotient ``q`` with ``f = q*g``; raises if ``g`` does not divide ``f``."""
    if g.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if f.is_zero():
        return f.ring.zero()
    order = f.ring.default_order
    lg, cg = g.leading_term(order)
    rem = dict(f.terms)
    quo = {}
    key = order.key
    while rem:
        e = max(rem, key=key)
        if not E.divides(lg, e):
            raise NotDivisible(f"{g} does not divide {f}")
        u = E.mono_div(e, lg)
        c = rem[e] / cg
        quo[u] = c
        for eg, k in g.terms.items():
            t = tuple(a + b for a, b in zip(u, eg))
            v = rem.get(t, 0) - c * k
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return CommPoly(f.ring, quo)


def determinant(rows):
    """Determinant of a square matrix of polynomials (fraction-free Bareiss)."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty determinant; use the ring's one()")
    a = [list(r) for r in rows]
    ring = a[0][0].ring
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_divide(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def fitting0(presentation: Matrix):
    """Generators of the ideal of maximal (``rows x rows``) minors."""
    q, p = presentation.rows, presentation.cols
    if q < 1:
        raise ValueError("fitting0 needs at least one generator")
    out = []
    seen = set()
    for cols in itertools.combinations(range(p), q):
        m = determinant([[presentation.entries[i][j] for j in cols] for i in range(q)])
        if m and m not in seen:
            seen.add(m)
            out.append(m)
    return out
