"""Order filtration on ``D_n[s]``, associated graded presentations over
``Q[x, xi, s]`` and the dimensions of the characteristic variety and of its
projection to ``x``-space."""
from __future__ import annotations

from dataclasses import dataclass

from . import _engine as E
from ._poly import Matrix
from .errors import ZeroModuleError
from .orders import DegRevLex
from .polycore import CommPoly, PolyRing, eliminate, fitting0, ideal_dim, monomial_module_dim


@dataclass(frozen=True)
class FiltrationWeights:
    """Weights ``x -> 0``, ``d -> 1``, ``s -> 0`` for ``D_n[s^r]``."""

    n: int
    r: int

    @property
    def weights(self):
        return (0,) * self.n + (1,) * self.n + (0,) * self.r


def graded_ring(signature):
    n, r = signature.n, signature.r
    names = tuple(f"x{i}" for i in range(1, n + 1)) + tuple(f"xi{i}" for i in range(1, n + 1)) \
        + tuple(f"s{k}" for k in range(1, r + 1))
    # same variable priority as the Weyl default order, so leading monomials agree
    priority = tuple(range(n, 2 * n)) + tuple(range(n)) + tuple(range(2 * n, 2 * n + r))
    return PolyRing(names, DegRevLex(priority))


@dataclass(frozen=True)
class GradedPresentation:
    """``Q[x, xi, s]^generators`` modulo the columns of ``relations``; the
    columns form a Groebner basis under the filtration-refined order and
    ``leads`` are their leading terms ``(component, exponents)``."""

    ring: PolyRing
    generators: int
    relations: Matrix
    leads: tuple

    @property
    def dimension_of_ring(self):
        return self.ring.nvars

    def relation_columns(self):
        return self.relations.columns()


@dataclass(frozen=True)
class CharDimReport:
    ch_dim: int
    ox_support_dim: int
    grade_via_gr: int | None


def _initial_form(vec, weights):
    top = max(sum(w * e for w, e in zip(weights, exps)) for _, exps in vec)
    return {(c, exps): v for (c, exps), v in vec.items()
            if sum(w * e for w, e in zip(weights, exps)) == top}


def gr_presentation(M):
    """Associated graded presentation for the good filtration induced by the
    standard generators (all shifts zero)."""
    sig = M.signature
    mo = sig.filtration_order().module("top")
    ring = graded_ring(sig)
    vecs = [v for v in M.relation_vectors() if v]
    res = E.groebner(vecs, mo, sig) if vecs else None
    basis = res.basis if res else []
    weights = sig.filtration_weights
    cols = [_initial_form(v, weights) for v in basis]
    leads = tuple(res.leads) if res else ()
    rel = Matrix.from_engine_columns(ring, M.generators, cols) if cols else \
        Matrix(ring, M.generators, 0, [[] for _ in range(M.generators)])
    return GradedPresentation(ring, M.generators, rel, leads)


def ch_dim(M, *, graded=None):
    """Dimension of the characteristic variety; ``-1`` for the zero module.

    Computed from the leading monomials of the graded relations, which have
    the same Hilbert function as ``gr M``."""
    G = graded or gr_presentation(M)
    return monomial_module_dim(G.leads, G.generators, G.ring.nvars)


def characteristic_ideal(M, *, graded=None):
    """Generators of an ideal with the radical of ``ann(gr M)``: the initial
    ideal itself for cyclic modules, ``Fitt_0`` otherwise."""
    G = graded or gr_presentation(M)
    if G.generators == 1:
        return [G.relations.entries[0][j] for j in range(G.relations.cols)]
    if G.relations.cols < G.generators:
        return []
    return fitting0(G.relations)


def ch_dim_via_fitting(M):
    """``ideal_dim(Fitt_0(gr M))``: an independent route to :func:`ch_dim`."""
    G = gr_presentation(M)
    if G.generators == 0:
        return -1
    if G.relations.cols < G.generators:
        return G.ring.nvars
    return ideal_dim(fitting0(G.relations), G.ring)


def ox_support_dim(M, *, graded=None):
    """Dimension of the closure of the projection of the characteristic
    variety to ``x``-space; ``-1`` for the zero module."""
    G = graded or gr_presentation(M)
    if ch_dim(M, graded=G) < 0:
        return -1
    n = M.signature.n
    if n == 0:
        return 0
    J = characteristic_ideal(M, graded=G)
    drop = tuple(range(n, G.ring.nvars))
    if not any(J):
        return n
    rest = eliminate(J, drop, G.ring)
    x_ring = PolyRing(G.ring.variables[:n])
    return ideal_dim([CommPoly(x_ring, p.terms) for p in rest], x_ring)


def grade_via_gr(M):
    """``2n + r - ch_dim(M)``."""
    d = ch_dim(M)
    if d < 0:
        raise ZeroModuleError("grade_via_gr is undefined for the zero module")
    sig = M.signature
    return 2 * sig.n + sig.r - d


def char_dim_report(M):
    G = gr_presentation(M)
    d = ch_dim(M, graded=G)
    sig = M.signature
    return CharDimReport(d, ox_support_dim(M, graded=G),
                         None if d < 0 else 2 * sig.n + sig.r - d)
