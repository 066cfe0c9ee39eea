"""Left Buchberger machinery shared by the commutative and Weyl rings.

A vector is a sparse dict mapping ``(component, exponents)`` to a nonzero
``mpq``.  A polynomial is a vector supported on component 0.  Ring objects
only have to supply ``mono_mul(a, b)``, returning the normally ordered
product of two monomials as a tuple of ``(exponents, integer)`` pairs, and a
``commutative`` flag.

Left multiplication by a monomial preserves leading terms exactly for every
global monomial order (the PBW property), so one Buchberger loop serves both
rings.
"""
from __future__ import annotations

import contextlib
import contextvars
import heapq
import time
from dataclasses import dataclass, field

from gmpy2 import mpq

from .errors import ResourceLimitExceeded

ONE = mpq(1)


@dataclass
class Guard:
    max_degree: int | None = None
    deadline: float | None = None
    peak_degree: int = 0
    basis_elements: int = 0

    def check(self, degree):
        self.basis_elements += 1
        if degree > self.peak_degree:
            self.peak_degree = degree
        if self.max_degree is not None and degree > self.max_degree:
            raise ResourceLimitExceeded(
                f"intermediate Groebner element of degree {degree} exceeds "
                f"max_degree={self.max_degree}", self.diagnostics())
        self.check_time()

    def check_time(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ResourceLimitExceeded("time budget exhausted", self.diagnostics())

    def diagnostics(self):
        return {"peak_degree": self.peak_degree, "basis_elements": self.basis_elements}


_GUARD: contextvars.ContextVar[Guard | None] = contextvars.ContextVar("acert_guard", default=None)


@contextlib.contextmanager
def resource_guard(max_degree=None, time_budget=None):
    """Bound the total degree of intermediate basis elements and wall time for
    every Groebner computation run inside the block."""
    deadline = None if time_budget is None else time.monotonic() + time_budget
    guard = Guard(max_degree, deadline)
    token = _GUARD.set(guard)
    try:
        yield guard
    finally:
        _GUARD.reset(token)


# -- vector arithmetic ------------------------------------------------------

def axpy(dst, coef, mono, src, ring):
    """``dst += coef * mono * src`` in place (``mono`` multiplies on the left)."""
    mul = ring.mono_mul
    get = dst.get
    for (comp, e), c in src.items():
        cc = coef * c
        for e2, k in mul(mono, e):
            t = (comp, e2)
            v = get(t)
            if v is None:
                dst[t] = cc * k
            else:
                v = v + cc * k
                if v:
                    dst[t] = v
                else:
                    del dst[t]


def add(a, b, scale=ONE):
    out = dict(a)
    for t, c in b.items():
        v = out.get(t, 0) + scale * c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def scale(v, c):
    return {t: c * x for t, x in v.items()} if c else {}


def mul_poly_vec(p, v, ring):
    """Left product of a polynomial (component-0 dict) with a vector."""
    out = {}
    for (_, e), c in p.items():
        axpy(out, c, e, v, ring)
    return out


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_div(b, a):
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def lead(v, key):
    return max(v, key=key)


def freeze(v):
    return frozenset(v.items())


# -- reduction --------------------------------------------------------------

class _Basis:
    """Monic basis vectors indexed by the component of their leading term."""

    def __init__(self, order):
        self.key = order.key
        self.vecs = []
        self.leads = []
        self.cofs = []
        self.by_comp = {}

    def append(self, vec, cof=None):
        t = lead(vec, self.key)
        idx = len(self.vecs)
        self.vecs.append(vec)
        self.leads.append(t)
        self.cofs.append(cof)
        self.by_comp.setdefault(t[0], []).append(idx)
        return idx

    def divisor(self, term, skip=-1):
        comp, e = term
        for i in self.by_comp.get(comp, ()):
            if i != skip and divides(self.leads[i][1], e):
                return i
        return None


def _reduce(f, basis, ring, *, full=True, track=False, skip=-1):
    """Reduce ``f`` by ``basis``.  Returns ``(remainder, lift)`` with
    ``f = remainder + lift * generators`` when cofactors are tracked."""
    f = dict(f)
    rem = {}
    lift = {} if track else None
    key = basis.key
    guard = _GUARD.get()
    steps = 0
    while f:
        t = max(f, key=key)
        i = basis.divisor(t, skip)
        if i is None:
            if not full:
                rem.update(f)
                break
            rem[t] = f.pop(t)
            continue
        c = f[t]
        u = mono_div(t[1], basis.leads[i][1])
        axpy(f, -c, u, basis.vecs[i], ring)
        if track:
            axpy(lift, c, u, basis.cofs[i], ring)
        steps += 1
        if guard is not None and not steps & 255:
            guard.check_time()
    return rem, lift


def _monic(v, key, cof=None):
    c = v[lead(v, key)]
    if c == 1:
        return v, cof
    inv = ONE / c
    return scale(v, inv), (None if cof is None else scale(cof, inv))


# -- Buchberger -------------------------------------------------------------

@dataclass
class GBResult:
    basis: list
    leads: list
    cofactors: list | None = None
    syzygies: list | None = None
    order: object = None
    ring: object = None
    _index: _Basis | None = field(default=None, repr=False)

    def reduce(self, v, track=False):
        """Full normal form of ``v``; with ``track`` also the lift."""
        return _reduce(v, self._index, self.ring, track=track)

    def lift(self, v):
        """Coefficients ``c`` (vector in A^m over the original generators) with
        ``v = sum c_i g_i``, or ``None`` if ``v`` is not in the submodule."""
        rem, lift = _reduce(v, self._index, self.ring, track=True)
        return None if rem else lift


def groebner(gens, order, ring, *, track=False, syzygies=False, reduced=True):
    """Left Groebner basis of the submodule generated by ``gens``.

    Pairs are processed smallest lcm first (ties by index pair) and pruned by
    Buchberger's chain criterion; the product criterion is only used for
    commutative ideals without syzygy tracking.  With ``syzygies`` the result
    carries generators of the syzygy module of ``gens`` (Schreyer: every S-pair
    reducing to zero plus the relations of inputs that reduced to zero).
    """
    track = track or syzygies
    key = order.key
    guard = _GUARD.get()
    B = _Basis(order)
    syz = [] if syzygies else None
    seen_syz = set()
    pending = set()
    heap = []
    comps_all_zero = all(t[0] == 0 for g in gens for t in g)
    product_crit = ring.commutative and comps_all_zero and not syzygies
    # once every component carries a unit, all remaining pairs reduce to zero
    needed = {t[0] for g in gens for t in g}
    units = set()

    def record_syz(s):
        if s:
            fs = freeze(s)
            if fs not in seen_syz:
                seen_syz.add(fs)
                syz.append(s)

    def insert(vec, cof):
        vec, cof = _monic(vec, key, cof)
        j = B.append(vec, cof)
        tj = B.leads[j]
        if guard is not None:
            guard.check(sum(tj[1]))
        if not any(tj[1]):
            units.add(tj[0])
        for i in B.by_comp[tj[0]]:
            if i == j:
                continue
            m = mono_lcm(B.leads[i][1], tj[1])
            heapq.heappush(heap, (key((tj[0], m)), i, j))
            pending.add((i, j))

    for idx, g in enumerate(gens):
        unit = {(idx, (0,) * ring.nvars): ONE} if track else None
        if not g:
            if syzygies:
                record_syz(unit)
            continue
        r, lift = _reduce(g, B, ring, track=track)
        cof = add(unit, lift, -ONE) if track else None
        if r:
            insert(r, cof)
        elif syzygies:
            record_syz(cof)
        if units >= needed:
            break

    while heap and not units >= needed:
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        comp = B.leads[i][0]
        li, lj = B.leads[i][1], B.leads[j][1]
        m = mono_lcm(li, lj)
        if product_crit and all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        if _chain_skip(B, comp, m, i, j, pending):
            continue
        ui, uj = mono_div(m, li), mono_div(m, lj)
        s = {}
        axpy(s, ONE, ui, B.vecs[i], ring)
        axpy(s, -ONE, uj, B.vecs[j], ring)
        cof = None
        if track:
            cof = {}
            axpy(cof, ONE, ui, B.cofs[i], ring)
            axpy(cof, -ONE, uj, B.cofs[j], ring)
        r, lift = _reduce(s, B, ring, track=track)
        if track:
            cof = add(cof, lift, -ONE)
        if r:
            insert(r, cof)
        elif syzygies:
            record_syz(cof)

    if needed and units >= needed:
        res = _reduced_basis(B, order, ring, track)
        if syzygies:
            syz = _split_syzygies(gens, res, ring)
        if not reduced:
            res = GBResult(list(B.vecs), list(B.leads), list(B.cofs) if track else None,
                           order=order, ring=ring, _index=B)
    elif reduced:
        res = _reduced_basis(B, order, ring, track)
    else:
        res = GBResult(list(B.vecs), list(B.leads), list(B.cofs) if track else None,
                       order=order, ring=ring, _index=B)
    res.syzygies = syz
    return res


def _split_syzygies(gens, res, ring):
    """Syzygies of ``gens`` when they generate the free module on their
    components.  With ``e_c = sum_i s_c[i] g_i`` the map ``e_c -> s_c`` splits
    the surjection, so ``e_j - sum_c g_j[c] * s_c`` generate its kernel."""
    zero = (0,) * ring.nvars
    section = {}
    for vec, (c, e), cof in zip(res.basis, res.leads, res.cofactors):
        if not any(e):
            if vec != {(c, zero): ONE}:
                raise AssertionError("reduced unit element is not a basis vector")
            section[c] = cof
    out, seen = [], set()
    for j, g in enumerate(gens):
        v = {(j, zero): ONE}
        parts = {}
        for (c, e), k in g.items():
            parts.setdefault(c, {})[(0, e)] = k
        for c, p in parts.items():
            v = add(v, mul_poly_vec(p, section[c], ring), -ONE)
        if v:
            fv = freeze(v)
            if fv not in seen:
                seen.add(fv)
                out.append(v)
    return out


def _chain_skip(B, comp, m, i, j, pending):
    for k in B.by_comp[comp]:
        if k == i or k == j:
            continue
        if not divides(B.leads[k][1], m):
            continue
        a, b = (i, k) if i < k else (k, i)
        c, d = (j, k) if j < k else (k, j)
        if (a, b) not in pending and (c, d) not in pending:
            return True
    return False


def _reduced_basis(B, order, ring, track):
    key = order.key
    n = len(B.vecs)
    keep = []
    for i in range(n):
        ci, li = B.leads[i]
        redundant = False
        for j in B.by_comp[ci]:
            if j == i:
                continue
            lj = B.leads[j][1]
            if divides(lj, li) and (lj != li or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    minimal = _Basis(order)
    for i in keep:
        minimal.append(B.vecs[i], B.cofs[i])
    out = _Basis(order)
    items = []
    for pos in range(len(keep)):
        r, lift = _reduce(minimal.vecs[pos], minimal, ring, track=track, skip=pos)
        cof = add(minimal.cofs[pos], lift, -ONE) if track else None
        r, cof = _monic(r, key, cof)
        items.append((key(minimal.leads[pos]), r, cof))
    items.sort(key=lambda it: it[0])
    for _, r, cof in items:
        out.append(r, cof)
    return GBResult(out.vecs, out.leads, out.cofs if track else None,
                    order=order, ring=ring, _index=out)


def syzygy_vectors(gens, order, ring):
    """Generators of the left syzygy module of ``gens`` as vectors in A^m."""
    return groebner(gens, order, ring, syzygies=True, reduced=False).syzygies
