import itertools
import random

import pytest

from acert.errors import InvariantViolation, NotFree, WrongCount
from acert.homlib import homology_is_zero
from acert.logspencer import (Divisor, FsElement, LogDerivation, act_on_fs, coefficient_determinant,
                              derivation_from_coefficients, fs_symbol, log_derivations, mflog,
                              saito_basis, saito_check, spencer_complex, spencer_differentials,
                              structure_constants, theta_generators, x_ring, xs_ring)
from acert.weyl import WeylMatrix, left_nf
from helpers import DIVISORS

R2 = x_ring(2)


def coeffs(D, der):
    return tuple(str(a) for a in der.coefficients)


def test_log_derivations_examples():
    D = Divisor.parse("x1", 1)
    ders = log_derivations(D)
    assert [coeffs(D, d) for d in ders] == [("x1",)]
    assert str(ders[0].cofactor) == "1"

    D = Divisor.parse("x1*x2", 2)
    found = {(coeffs(D, d), str(d.cofactor)) for d in log_derivations(D)}
    assert (("x1", "0"), "1") in found and (("0", "x2"), "1") in found

    D = Divisor.parse("x1^2 + x2^2", 2)
    found = {(coeffs(D, d), str(d.cofactor)) for d in log_derivations(D)}
    assert found == {(("x1", "x2"), "2"), (("x2", "-x1"), "0")}


@pytest.mark.parametrize("f,n", DIVISORS)
def test_log_derivation_invariant(f, n):
    D = Divisor.parse(f, n)
    for d in log_derivations(D):
        assert d.check(D.f)


def test_saito_examples():
    D = Divisor.parse("x1*x2", 2)
    dx = derivation_from_coefficients(D, ["x1", "0"])
    dy = derivation_from_coefficients(D, ["0", "x2"])
    assert saito_check(D, [dx, dy])
    assert coefficient_determinant([dx, dy]) == R2("x1*x2")
    D1 = Divisor.parse("x1", 1)
    assert saito_check(D1, log_derivations(D1))
    # x*d2 is not logarithmic for xy and the determinant is x^2
    x_dy = LogDerivation((R2("0"), R2("x1")), R2("0"))
    assert not saito_check(D, [dx, x_dy])
    assert coefficient_determinant([dx, x_dy]) == R2("x1^2")
    assert not saito_check(D, [dx, derivation_from_coefficients(D, ["0", "x1*x2"])])
    with pytest.raises(WrongCount):
        saito_check(D, [dx])


def test_non_logarithmic_rejected():
    D = Divisor.parse("x1*x2", 2)
    with pytest.raises(InvariantViolation):
        derivation_from_coefficients(D, ["1", "0"])
    bad = LogDerivation((R2("1"), R2("0")), R2("0"))
    with pytest.raises(InvariantViolation):
        theta_generators(D, [bad])


def test_saito_basis_extraction_for_normal_crossings():
    D = Divisor.parse("x1*x2", 2)
    basis = saito_basis(D)
    assert {coeffs(D, d) for d in basis} == {("x1", "0"), ("0", "x2")}


def test_not_free():
    D = Divisor.parse("x1^3 + x2^3 + x3^3", 3)
    with pytest.raises(NotFree):
        saito_basis(D)


@pytest.mark.parametrize("f,n", [f for f in DIVISORS if f[1] == 2])
def test_saito_invariant_under_unimodular_change(f, n):
    D = Divisor.parse(f, n)
    basis = saito_basis(D)
    rng = random.Random(7)
    ring = D.f.ring
    choices = [ring("0"), ring("1"), ring("x1"), ring("x2"), ring("x1 - 2*x2"), ring("x2^2")]
    for _ in range(5):
        p = rng.choice(choices)
        c = rng.choice([1, 2, -3])
        U = [[ring.constant(c), p], [ring.zero(), ring.one()]]
        if rng.random() < 0.5:
            U = [[ring.one(), ring.zero()], [p, ring.constant(c)]]
        new = []
        for i in range(2):
            co = [U[i][0] * basis[0].coefficients[k] + U[i][1] * basis[1].coefficients[k]
                  for k in range(2)]
            new.append(derivation_from_coefficients(D, co))
        assert saito_check(D, new)


def test_theta_examples():
    D = Divisor.parse("x1", 1)
    sig = D.signature
    assert theta_generators(D, log_derivations(D)) == [sig("x1*d1 - s1")]
    D = Divisor.parse("x1*x2", 2)
    sig = D.signature
    dx = derivation_from_coefficients(D, ["x1", "0"])
    assert theta_generators(D, [dx]) == [sig("x1*d1 - s1")]
    D = Divisor.parse("x1^2 + x2^2", 2)
    rot = derivation_from_coefficients(D, ["x2", "-x1"])
    assert theta_generators(D, [rot]) == [D.signature("x2*d1 - x1*d2")]


def test_structure_constant_examples():
    D = Divisor.parse("x1*x2", 2)
    sc = structure_constants(D, saito_basis(D))
    assert all(c.is_zero() for v in sc.values() for c in v)
    D = Divisor.parse("x1", 1)
    assert structure_constants(D, saito_basis(D)) == {}
    D = Divisor.parse("x1^2 + x2^2", 2)
    sc = structure_constants(D, saito_basis(D))
    assert all(c.is_zero() for v in sc.values() for c in v)


@pytest.mark.parametrize("f,n", DIVISORS)
def test_structure_constants_expand(f, n):
    D = Divisor.parse(f, n)
    basis = saito_basis(D)
    for (i, j), cs in structure_constants(D, basis).items():
        br = basis[i].bracket(basis[j])
        for k in range(n):
            assert sum((cs[m] * basis[m].coefficients[k] for m in range(n)), D.f.ring.zero()) == br[k]


def test_spencer_base_case():
    D = Divisor.parse("x1", 1)
    rec = spencer_complex(D)
    C = rec.complex
    assert C.ranks == (1, 1)
    assert C.maps[0] == D.signature.matrix([["x1*d1 - s1"]])


def test_spencer_normal_crossings():
    D = Divisor.parse("x1*x2", 2)
    rec = spencer_complex(D, [derivation_from_coefficients(D, ["x1", "0"]),
                              derivation_from_coefficients(D, ["0", "x2"])])
    C = rec.complex
    sig = D.signature
    assert C.ranks == (1, 2, 1)
    assert C.maps[0] == sig.matrix([["x1*d1 - s1", "x2*d2 - s1"]])
    assert C.maps[1] == WeylMatrix.from_columns(sig, 2, [[sig("-x2*d2 + s1"), sig("x1*d1 - s1")]])
    assert C.maps[0].compose(C.maps[1]).is_zero()


@pytest.mark.parametrize("f,n", DIVISORS)
def test_spencer_flags_ranks_and_acyclicity(f, n):
    D = Divisor.parse(f, n)
    rec = spencer_complex(D)
    assert rec.composition_zero and rec.bracket_closure
    assert rec.ranks == tuple(len(list(itertools.combinations(range(n), k))) for k in range(n + 1))
    for k in range(1, rec.complex.length):
        assert rec.complex.maps[k - 1].compose(rec.complex.maps[k]).is_zero()
    for q in range(1, n + 1):
        assert homology_is_zero(rec.complex, q)


def test_uniform_first_sum_sign_breaks_composition():
    # one sign for every term of the first sum makes d_1 d_2 pick up
    # -(theta_1 theta_2 + theta_2 theta_1), which does not cancel
    D = Divisor.parse("x1^3 - x2^2", 2)
    basis = saito_basis(D)
    sig = D.signature
    th = theta_generators(D, basis)
    sc = structure_constants(D, basis)
    assert any(not c.is_zero() for c in sc[(0, 1)])
    d1, d2 = spencer_differentials(sig, th, sc)
    assert d1.compose(d2).is_zero()
    uniform = WeylMatrix(sig, 2, 1, [[d2[0, 0]], [d2[1, 0] - th[0].scale(2)]])
    assert not d1.compose(uniform).is_zero()


def test_spencer_h0_matches_mflog():
    for f, n in DIVISORS:
        D = Divisor.parse(f, n)
        rec = spencer_complex(D)
        img = [rec.complex.maps[0][0, j] for j in range(rec.complex.maps[0].cols)]
        M = mflog(D)
        rels = [M.relations[0, j] for j in range(M.relations.cols)]
        assert all(left_nf(r, img).is_zero() for r in rels)
        assert all(left_nf(r, rels).is_zero() for r in img)


def test_mflog_examples():
    D = Divisor.parse("x1", 1)
    M = mflog(D)
    assert M.generators == 1 and M.relations.entries[0] == (D.signature("x1*d1 - s1"),)
    D = Divisor.parse("x1*x2", 2)
    rels = set(mflog(D).relations.entries[0])
    assert rels == {D.signature("x1*d1 - s1"), D.signature("x2*d2 - s1")}
    D = Divisor.parse("1", 2)
    rels = set(mflog(D).relations.entries[0])
    assert rels == {D.signature("d1"), D.signature("d2")}


def test_act_examples():
    D = Divisor.parse("x1", 1)
    sig = D.signature
    v = act_on_fs(sig("d1"), fs_symbol(D), D)
    assert v == FsElement(xs_ring(1)("s1"), 1)
    assert act_on_fs(sig("x1*d1 - s1"), fs_symbol(D), D).is_zero()
    assert act_on_fs(sig.one(), fs_symbol(D), D) == fs_symbol(D)


def test_act_is_a_module_action():
    D = Divisor.parse("x1^2 - x2^3", 2)
    sig = D.signature
    v = FsElement(xs_ring(2)("x1 + s1"), 1)
    for P, Q in [("d1", "x1"), ("d2", "d1*x2"), ("x1*d2 + s1", "d2^2")]:
        P, Q = sig(P), sig(Q)
        assert act_on_fs(P * Q, v, D) == act_on_fs(P, act_on_fs(Q, v, D), D)


@pytest.mark.parametrize("f,n", DIVISORS)
def test_thetas_annihilate_fs(f, n):
    D = Divisor.parse(f, n)
    for th in theta_generators(D, log_derivations(D)) + theta_generators(D, saito_basis(D)):
        assert act_on_fs(th, fs_symbol(D), D).is_zero()


def test_canonical_form():
    D = Divisor.parse("x1", 1)
    R = xs_ring(1)
    v = act_on_fs(D.signature("x1"), FsElement(R("1"), 1), D)
    assert v == FsElement(R("1"), 0)
