"""Monomial and module orders.

An order is an immutable object whose ``key`` maps an exponent tuple to a
tuple comparable with the builtin ordering; the bigger key is the bigger
monomial.  Module orders additionally take the component index.
"""
from __future__ import annotations

from dataclasses import dataclass


class MonomialOrder:
    def key(self, exps):
        raise NotImplementedError

    def module(self, position="top"):
        return ModuleOrder(self, position)


@dataclass(frozen=True)
class Lex(MonomialOrder):
    """Lexicographic; ``priority`` lists variable indices from biggest down."""

    priority: tuple | None = None

    def key(self, exps):
        if self.priority is None:
            return tuple(exps)
        return tuple(exps[i] for i in self.priority)


@dataclass(frozen=True)
class DegRevLex(MonomialOrder):
    """Degree reverse lexicographic.  The last variable in ``priority`` is the
    smallest."""

    priority: tuple | None = None

    def key(self, exps):
        if self.priority is None:
            return (sum(exps), tuple(-e for e in reversed(exps)))
        return (sum(exps), tuple(-exps[i] for i in reversed(self.priority)))


@dataclass(frozen=True)
class WeightOrder(MonomialOrder):
    """Compare by a nonnegative weight first, then by ``tiebreak``."""

    weights: tuple
    tiebreak: MonomialOrder = DegRevLex()

    def key(self, exps):
        return (sum(w * e for w, e in zip(self.weights, exps)),) + self.tiebreak.key(exps)


@dataclass(frozen=True)
class EliminationOrder(MonomialOrder):
    """Block order: monomials in the ``drop`` variables dominate everything in
    the remaining ones.  Each block is ordered by degrevlex."""

    drop: tuple

    def key(self, exps):
        dropped = tuple(exps[i] for i in self.drop)
        kept = tuple(e for i, e in enumerate(exps) if i not in self.drop)
        return (DegRevLex().key(dropped), DegRevLex().key(kept))


class _KeyCache(dict):
    __slots__ = ("fn",)

    def __init__(self, fn):
        super().__init__()
        self.fn = fn

    def __missing__(self, term):
        k = self.fn(term)
        self[term] = k
        return k


class ModuleOrder:
    """Extension of a monomial order to free modules.

    ``position="top"`` (term over position) compares monomials first;
    ``"pot"`` compares components first.  Lower component index wins ties.
    Keys are memoized; the memo is a pure function cache.
    """

    def __init__(self, order: MonomialOrder, position: str = "top"):
        if position not in ("top", "pot"):
            raise ValueError(f"unknown module position rule {position!r}")
        self.order = order
        self.position = position
        mk = order.key
        if position == "top":
            fn = lambda t: (mk(t[1]), -t[0])  # noqa: E731
        else:
            fn = lambda t: (-t[0], mk(t[1]))  # noqa: E731
        self._cache = _KeyCache(fn)
        self.key = self._cache.__getitem__

    def __eq__(self, other):
        return (isinstance(other, ModuleOrder) and self.order == other.order
                and self.position == other.position)

    def __hash__(self):
        return hash((self.order, self.position))

    def __repr__(self):
        return f"ModuleOrder({self.order!r}, {self.position!r})"


def as_module_order(order) -> ModuleOrder:
    if isinstance(order, ModuleOrder):
        return order
    return ModuleOrder(order)
