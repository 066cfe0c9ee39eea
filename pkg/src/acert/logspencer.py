"""Logarithmic derivations of a divisor ``f``, Saito's freeness criterion,
the operators ``delta - s (delta f)/f`` annihilating ``f^s``, the Spencer
complex built from them, and the formal action of ``D_n[s]`` on
``Q[x, s, 1/f]·f^s``.

Only a single ``f`` (so ``r = 1``) is handled.  Derivations are computed
globally on affine space as syzygies of ``(df/dx_1, ..., df/dx_n, f)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from gmpy2 import mpq

from .errors import (BracketClosureFailed, CompositionNonzero, InvariantViolation, LiftFailed,
                     NotDivisible, NotFree, WrongCount, InputError)
from .homlib import ChainComplex, PresentedModule, composition_defects
from .polycore import CommPoly, PolyRing, comm_gb, comm_lift, comm_nf, comm_syz, determinant, exact_divide
from .weyl import RingSignature, WeylElement, WeylMatrix


@dataclass(frozen=True)
class Divisor:
    """A nonzero polynomial ``f`` in ``Q[x_1..x_n]``.  Reducedness is not
    required."""

    f: CommPoly

    def __post_init__(self):
        if self.f.is_zero():
            raise InputError("the divisor polynomial must be nonzero")

    @classmethod
    def parse(cls, text, n):
        return cls(x_ring(n).parse(text))

    @property
    def n(self):
        return self.f.ring.nvars

    @property
    def signature(self):
        return RingSignature(self.n, 1)

    def __str__(self):
        return str(self.f)


def x_ring(n):
    return PolyRing(tuple(f"x{i}" for i in range(1, n + 1)))


def xs_ring(n):
    return PolyRing(tuple(f"x{i}" for i in range(1, n + 1)) + ("s1",))


@dataclass(frozen=True)
class LogDerivation:
    """``delta = sum a_i d_i`` with ``delta(f) = cofactor * f``."""

    coefficients: tuple
    cofactor: CommPoly

    def apply(self, g):
        out = g.ring.zero()
        for i, a in enumerate(self.coefficients):
            if a:
                out = out + a * g.diff(i)
        return out

    def check(self, f):
        return self.apply(f) == self.cofactor * f

    def bracket(self, other):
        """Coefficients of the commutator vector field ``[self, other]``."""
        out = []
        for k in range(len(self.coefficients)):
            out.append(self.apply(other.coefficients[k]) - other.apply(self.coefficients[k]))
        return tuple(out)

    def __str__(self):
        terms = [f"({a})*d{i + 1}" for i, a in enumerate(self.coefficients) if a]
        return " + ".join(terms) or "0"


def derivation_from_coefficients(D, coefficients):
    """Build a :class:`LogDerivation`, computing the cofactor by exact
    division; raises :class:`InvariantViolation` if it is not logarithmic."""
    ring = D.f.ring
    coeffs = tuple(ring(c) for c in coefficients)
    if len(coeffs) != D.n:
        raise WrongCount(f"expected {D.n} coefficients, got {len(coeffs)}")
    image = sum((a * D.f.diff(i) for i, a in enumerate(coeffs)), ring.zero())
    try:
        c = exact_divide(image, D.f)
    except NotDivisible:
        raise InvariantViolation(f"derivation does not preserve ({D.f})") from None
    return LogDerivation(coeffs, c)


def _primitive(coeffs):
    """Scale a coefficient vector to coprime integers with a positive leading
    coefficient on the first nonzero entry."""
    from math import gcd, lcm
    den, num = 1, 0
    for a in coeffs:
        for c in a.terms.values():
            den = lcm(den, int(c.denominator))
    for a in coeffs:
        for c in a.terms.values():
            num = gcd(num, int(c * den))
    lead = next(a for a in coeffs if a)
    sign = 1 if lead.leading_term()[1] > 0 else -1
    return tuple(a.scale(mpq(den * sign, num)) for a in coeffs)


def log_derivations(D):
    """Generators of ``Der(-log f)``: syzygies of ``(df/dx_1, ..., df/dx_n, f)``
    projected to their first ``n`` coordinates, then interreduced.  The
    cofactor is recovered by exact division (it equals minus the last syzygy
    coordinate)."""
    f = D.f
    n = D.n
    gens = [f.diff(i) for i in range(n)] + [f]
    syz = comm_syz(gens)
    projected = [tuple(col[:n]) for col in syz.columns()]
    projected = [v for v in projected if any(a for a in v)]
    if not projected:
        return []
    out = []
    for v in comm_gb(projected):
        out.append(derivation_from_coefficients(D, _primitive(v)))
    out.sort(key=lambda d: (max(a.total_degree() for a in d.coefficients),
                            next(i for i, a in enumerate(d.coefficients) if a)))
    return out


def coefficient_determinant(basis):
    rows = [list(d.coefficients) for d in basis]
    if not rows:
        raise WrongCount("empty basis")
    return determinant(rows)


def saito_check(D, basis):
    """Saito's criterion: ``det(coefficient matrix) = c·f`` with ``c`` a
    nonzero rational certifies that ``basis`` freely generates
    ``Der(-log f)``."""
    basis = list(basis)
    if len(basis) != D.n:
        raise WrongCount(f"Saito's criterion needs exactly {D.n} derivations, got {len(basis)}")
    if not all(der.check(D.f) for der in basis):
        return False
    det = coefficient_determinant(basis)
    if det.is_zero():
        return False
    try:
        q = exact_divide(det, D.f)
    except NotDivisible:
        return False
    return q.is_constant() and not q.is_zero()


def _minimal_generators(ders, n):
    """Drop derivations whose coefficient vector lies in the span of the
    others (largest first)."""
    order = sorted(range(len(ders)), key=lambda i: (max(a.total_degree() for a in ders[i].coefficients),
                                                    sum(len(a) for a in ders[i].coefficients)))
    kept = [ders[i] for i in order]
    i = len(kept) - 1
    while i >= 0 and len(kept) > n:
        others = [d.coefficients for j, d in enumerate(kept) if j != i]
        gb = comm_gb(others)
        r = comm_nf(kept[i].coefficients, gb)
        if all(a.is_zero() for a in r):
            del kept[i]
        i -= 1
    return kept


def saito_basis(D, ders=None):
    """Extract ``n`` derivations passing :func:`saito_check` from a generating
    set of ``Der(-log f)``; raises :class:`NotFree` if none is found."""
    ders = list(ders) if ders is not None else log_derivations(D)
    n = D.n
    candidates = ders if len(ders) <= n else _minimal_generators(ders, n)
    for pool in (candidates, ders):
        if len(pool) < n:
            continue
        for combo in combinations(range(len(pool)), n):
            basis = [pool[i] for i in combo]
            if saito_check(D, basis):
                return basis
    raise NotFree(f"no Saito basis found for {D.f}")


def _to_weyl(p, sig, s_factor=None):
    """Embed a polynomial in ``x`` (or ``x, s``) into ``D_n[s]``."""
    n = sig.n
    terms = {}
    for e, c in p.terms.items():
        xs = e[:n]
        s = e[n] if len(e) > n else 0
        terms[tuple(xs) + (0,) * n + (s,)] = c
    return WeylElement(sig, terms)


def theta_generators(D, ders):
    """``delta - s·cofactor`` for each derivation, in ``D_n[s]``."""
    sig = D.signature
    out = []
    for der in ders:
        if not der.check(D.f):
            raise InvariantViolation(f"{der} does not satisfy delta(f) = c·f")
        th = sig.zero()
        for i, a in enumerate(der.coefficients):
            th = th + _to_weyl(a, sig) * sig.d(i + 1)
        th = th - sig.s(1) * _to_weyl(der.cofactor, sig)
        out.append(th)
    return out


def structure_constants(D, basis):
    """``{(i, j): (c^1, ..., c^n)}`` for ``i < j`` with
    ``[delta_i, delta_j] = sum_k c^k delta_k``, solved by Groebner lifting
    against the coefficient vectors of ``basis``."""
    basis = list(basis)
    n = len(basis)
    vectors = [d.coefficients for d in basis]
    out = {}
    for i, j in combinations(range(n), 2):
        b = basis[i].bracket(basis[j])
        if all(a.is_zero() for a in b):
            out[(i, j)] = tuple(D.f.ring.zero() for _ in range(n))
            continue
        c = comm_lift(b, vectors)
        if c is None:
            raise LiftFailed(f"[delta_{i}, delta_{j}] is not in the span of the basis")
        for k in range(n):
            expect = sum((c[m] * vectors[m][k] for m in range(n)), D.f.ring.zero())
            if expect != b[k]:
                raise LiftFailed("bracket expansion does not verify")
        out[(i, j)] = tuple(c)
    return out


def _wedge_insert(k, rest):
    """Sign and sorted index tuple of ``e_k ∧ e_rest``; sign 0 if ``k`` in rest."""
    if k in rest:
        return 0, None
    pos = sum(1 for r in rest if r < k)
    return (-1) ** pos, tuple(sorted(rest + (k,)))


def spencer_differentials(sig, thetas, constants):
    """Matrices ``d_1 .. d_n`` of the Spencer complex.

    Slot ``k`` has basis the increasing ``k``-subsets ``I``; the image of
    ``1 ⊗ λ_I`` is ``sum_t (-1)^(t-1) λ_{i_t} ⊗ λ_{I - i_t}`` plus
    ``sum_{t<u} (-1)^(t+u) [λ_{i_t}, λ_{i_u}] ∧ λ_{I - {i_t, i_u}}`` with the
    bracket rewritten through the structure constants (``t, u`` 1-based).
    """
    n = len(thetas)
    bases = [list(combinations(range(n), k)) for k in range(n + 1)]
    index = [{I: p for p, I in enumerate(b)} for b in bases]
    maps = []
    for k in range(1, n + 1):
        rows, cols = len(bases[k - 1]), len(bases[k])
        entries = [[sig.zero() for _ in range(cols)] for _ in range(rows)]
        for col, I in enumerate(bases[k]):
            for t in range(k):
                J = I[:t] + I[t + 1:]
                sign = (-1) ** t
                row = index[k - 1][J]
                entries[row][col] = entries[row][col] + thetas[I[t]].scale(sign)
            for t, u in combinations(range(k), 2):
                sign = (-1) ** (t + u)  # 0-based t, u: (-1)^((t+1)+(u+1))
                J = tuple(x for p, x in enumerate(I) if p != t and p != u)
                coeffs = constants[(I[t], I[u])]
                for m, c in enumerate(coeffs):
                    if c.is_zero():
                        continue
                    s2, K = _wedge_insert(m, J)
                    if not s2:
                        continue
                    row = index[k - 1][K]
                    entries[row][col] = entries[row][col] + _to_weyl(c, sig).scale(sign * s2)
        maps.append(WeylMatrix(sig, rows, cols, entries))
    return maps


@dataclass
class SpencerComplexRecord:
    divisor: Divisor
    basis: list
    thetas: list
    constants: dict
    complex: ChainComplex
    composition_zero: bool
    bracket_closure: bool

    @property
    def ranks(self):
        return self.complex.ranks


def bracket_closure(sig, thetas, constants):
    for (i, j), coeffs in constants.items():
        lhs = thetas[i] * thetas[j] - thetas[j] * thetas[i]
        rhs = sig.zero()
        for k, c in enumerate(coeffs):
            if c:
                rhs = rhs + _to_weyl(c, sig) * thetas[k]
        if lhs != rhs:
            return False
    return True


def spencer_complex(D, basis=None):
    """The Spencer complex of a free divisor as a complex of free
    ``D_n[s]``-modules with slot ranks ``binomial(n, k)``."""
    basis = list(basis) if basis is not None else saito_basis(D)
    if not saito_check(D, basis):
        raise NotFree("supplied derivations fail Saito's criterion")
    sig = D.signature
    thetas = theta_generators(D, basis)
    constants = structure_constants(D, basis)
    if not bracket_closure(sig, thetas, constants):
        raise BracketClosureFailed("theta brackets do not match the structure constants")
    maps = spencer_differentials(sig, thetas, constants)
    ranks = tuple(m.cols for m in maps)
    ranks = (1,) + ranks
    C = ChainComplex(sig, ranks, tuple(maps))
    if composition_defects(C):
        raise CompositionNonzero("Spencer differentials do not compose to zero")
    return SpencerComplexRecord(D, basis, thetas, constants, C, True, True)


def mflog(D, ders=None):
    """``D_n[s] / D_n[s]·theta_f(s)`` as a cyclic presentation."""
    ders = list(ders) if ders is not None else log_derivations(D)
    sig = D.signature
    thetas = theta_generators(D, ders)
    return PresentedModule(sig, 1, WeylMatrix(sig, 1, len(thetas), [thetas]))


# -- action on f^s -------------------------------------------------------------

@dataclass(frozen=True)
class FsElement:
    """``(numerator / f^pole_order)·f^s`` with ``numerator`` in ``Q[x, s]``."""

    numerator: CommPoly
    pole_order: int = 0

    def is_zero(self):
        return self.numerator.is_zero()

    def __str__(self):
        if self.pole_order == 0:
            return f"({self.numerator})*f^s"
        return f"({self.numerator})/f^{self.pole_order}*f^s"


def _lift_f(D):
    R = xs_ring(D.n)
    return CommPoly(R, {e + (0,): c for e, c in D.f.terms.items()})


def canonical_fs(v, D):
    g, k = v.numerator, v.pole_order
    if g.is_zero():
        return FsElement(g, 0)
    F = _lift_f(D)
    while k > 0:
        try:
            g = exact_divide(g, F)
        except NotDivisible:
            break
        k -= 1
    return FsElement(g, k)


def fs_symbol(D):
    """The generator ``f^s`` itself."""
    return FsElement(xs_ring(D.n).one(), 0)


def _apply_d(i, v, D, F, Fi):
    g, k = v.numerator, v.pole_order
    s = g.ring.gen(D.n)
    return FsElement(F * g.diff(i) + (s - k) * g * Fi, k + 1)


def act_on_fs(P, v, D):
    """Action of ``P`` in ``D_n[s]`` on ``v``: ``d_i`` by the chain rule,
    ``x_i`` and ``s`` by multiplication."""
    n = D.n
    if P.ring.n != n or P.ring.r != 1:
        raise InputError(f"operator must live in D_{n}[s]")
    R = xs_ring(n)
    F = _lift_f(D)
    Fd = [F.diff(i) for i in range(n)]
    total_num = R.zero()
    total_k = 0
    parts = []
    for e, c in P.terms.items():
        a, b, sc = e[:n], e[n:2 * n], e[2 * n]
        w = FsElement(v.numerator * R.gen(n) ** sc, v.pole_order)
        for i in range(n):
            for _ in range(b[i]):
                w = _apply_d(i, w, D, F, Fd[i])
        mono = CommPoly(R, {tuple(a) + (0,): mpq(1)})
        parts.append(FsElement(w.numerator * mono * R.constant(c), w.pole_order))
    if not parts:
        return FsElement(R.zero(), 0)
    total_k = max(p.pole_order for p in parts)
    for p in parts:
        total_num = total_num + p.numerator * F ** (total_k - p.pole_order)
    return canonical_fs(FsElement(total_num, total_k), D)
