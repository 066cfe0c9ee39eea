"""Sparse polynomial element base shared by :class:`CommPoly` and
:class:`WeylElement`, plus matrices and engine-vector conversion."""
from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq

from .errors import DimensionMismatch, SignatureMismatch


def to_q(c):
    if isinstance(c, Fraction):
        return mpq(c.numerator, c.denominator)
    if isinstance(c, str):
        return mpq(c)
    return mpq(c)


class Element:
    """Immutable finite map from exponent tuples to nonzero rationals."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms=None):
        self.ring = ring
        self.terms = {e: c for e, c in (terms or {}).items() if c}
        self._hash = None

    # construction helpers -------------------------------------------------
    def _new(self, terms):
        return type(self)(self.ring, terms)

    def _coerce(self, other):
        if isinstance(other, Element):
            if other.ring != self.ring:
                raise SignatureMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)) or type(other) is type(mpq(0)):
            return self.ring.constant(other)
        return NotImplemented

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        mul = self.ring.mono_mul
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                cab = ca * cb
                for e, k in mul(a, b):
                    out[e] = out.get(e, 0) + cab * k
        return self._new(out)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c):
        c = to_q(c)
        return self._new({e: c * v for e, v in self.terms.items()})

    # comparison -------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) or type(other) is type(mpq(0)):
            other = self.ring.constant(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.ring.nvars, mpq(0))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def leading_term(self, order=None):
        order = order or self.ring.default_order
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda t: self.ring.default_order.key(t[0]),
                           reverse=True))

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        return format_terms(self.terms, self.ring.names, self.ring.default_order)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"

    def to_vector(self, comp=0):
        return {(comp, e): c for e, c in self.terms.items()}


def format_terms(terms, names, order):
    if not terms:
        return "0"
    out = []
    for e in sorted(terms, key=order.key, reverse=True):
        c = terms[e]
        factors = []
        for name, k in zip(names, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not factors:
            body = str(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = str(a) + "*" + "*".join(factors)
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


# -- vectors and matrices ----------------------------------------------------

def vector_to_engine(entries):
    v = {}
    for i, p in enumerate(entries):
        for e, c in p.terms.items():
            v[(i, e)] = c
    return v


def engine_to_vector(v, ring, length):
    parts = [dict() for _ in range(length)]
    for (i, e), c in v.items():
        parts[i][e] = c
    return tuple(ring.element(p) for p in parts)


def engine_to_element(v, ring):
    return ring.element({e: c for (_, e), c in v.items()})


class Matrix:
    """Dense matrix of ring elements.  Column ``j`` is the image of the
    ``j``-th basis vector of the source under the module map it represents."""

    __slots__ = ("ring", "rows", "cols", "entries", "_hash")

    def __init__(self, ring, rows, cols, entries=None):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        if entries is None:
            entries = [[ring.zero() for _ in range(cols)] for _ in range(rows)]
        entries = tuple(tuple(row) for row in entries)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise DimensionMismatch(f"expected {rows}x{cols} entries")
        for row in entries:
            for x in row:
                if x.ring != ring:
                    raise SignatureMismatch("matrix entries from different rings")
        self.entries = entries
        self._hash = None

    @classmethod
    def from_columns(cls, ring, rows, columns):
        columns = [tuple(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise DimensionMismatch(f"column of length {len(c)}, expected {rows}")
        entries = [[columns[j][i] for j in range(len(columns))] for i in range(rows)]
        return cls(ring, rows, len(columns), entries)

    @classmethod
    def from_engine_columns(cls, ring, rows, vecs):
        return cls.from_columns(ring, rows, [engine_to_vector(v, ring, rows) for v in vecs])

    @classmethod
    def identity(cls, ring, k):
        return cls(ring, k, k, [[ring.one() if i == j else ring.zero() for j in range(k)]
                                for i in range(k)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def engine_columns(self):
        return [vector_to_engine(self.column(j)) for j in range(self.cols)]

    def transpose(self):
        return type(self)(self.ring, self.cols, self.rows,
                          [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def apply(self, v):
        """Image of the source vector ``v`` (left coefficients):
        ``sum_k v_k * column_k``."""
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.cols} columns")
        out = [self.ring.zero() for _ in range(self.rows)]
        for k, vk in enumerate(v):
            if vk.is_zero():
                continue
            for i in range(self.rows):
                if not self.entries[i][k].is_zero():
                    out[i] = out[i] + vk * self.entries[i][k]
        return tuple(out)

    def compose(self, inner):
        """Matrix of ``self o inner`` (apply ``inner`` first)."""
        if inner.rows != self.cols:
            raise DimensionMismatch("composition shape mismatch")
        cols = [self.apply(inner.column(j)) for j in range(inner.cols)]
        return type(self).from_columns(self.ring, self.rows, cols)

    def is_zero(self):
        return all(x.is_zero() for row in self.entries for x in row)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.ring == other.ring
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.rows, self.cols, self.entries))
        return self._hash

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.entries)
        return f"{type(self).__name__}({self.rows}x{self.cols}: [{body}])"


def check_ring(a, b):
    if a != b:
        raise SignatureMismatch(f"{a} vs {b}")

