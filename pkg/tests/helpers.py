"""Shared fixtures data: signatures, the module suite, the divisor corpus and
a seeded family of small random complexes."""
import random

from acert.homlib import ChainComplex, PresentedModule
from acert.logspencer import Divisor, mflog
from acert.weyl import RingSignature, WeylMatrix, left_syz

D1 = RingSignature(1, 0)
D2 = RingSignature(2, 0)
D1S = RingSignature(1, 1)
D2S = RingSignature(2, 1)

DIVISORS = [
    ("x1", 1),
    ("x1*x2", 2),
    ("x1^2 + x2^2", 2),
    ("x1^3 - x2^2", 2),
    ("x1^4 + x1*x2^4 + x2^5", 2),
]


def module_suite():
    """Nonzero modules over D_1, D_2 and D_1[s] (plus two over D_2[s])."""
    return [
        ("A over D_1", PresentedModule.free(D1)),
        ("A over D_2", PresentedModule.free(D2)),
        ("A over D_1[s]", PresentedModule.free(D1S)),
        ("A/Ax over D_1", PresentedModule.cyclic(D1, ["x1"])),
        ("A/Ad over D_1", PresentedModule.cyclic(D1, ["d1"])),
        ("A/A(xd - s) over D_1[s]", PresentedModule.cyclic(D1S, ["x1*d1 - s1"])),
        ("A/A(xd - s, s) over D_1[s]", PresentedModule.cyclic(D1S, ["x1*d1 - s1", "s1"])),
        ("D_2/D_2(x1, x2)", PresentedModule.cyclic(D2, ["x1", "x2"])),
        ("D_2/D_2 x1", PresentedModule.cyclic(D2, ["x1"])),
        ("D_2/D_2(x1 d1, d2)", PresentedModule.cyclic(D2, ["x1*d1", "d2"])),
        ("mflog(xy)", mflog(Divisor.parse("x1*x2", 2))),
        ("A^2/(x, d)-twisted over D_1", PresentedModule.coker(
            D1.matrix([["x1", "0"], ["1", "d1"]]))),
    ]


_ATOMS = {
    D1: ["x1", "d1", "x1*d1", "x1^2", "d1^2", "1", "x1 + 1", "x1*d1 + 2"],
    D2: ["x1", "x2", "d1", "d2", "x1*d2", "x2*d1", "x1*x2", "d1*d2", "x1 - x2", "1"],
    D1S: ["x1", "d1", "s1", "x1*d1 - s1", "x1^2", "s1 + 1", "d1*s1", "1"],
}


def _random_element(sig, rng, zero_weight=0.35):
    if rng.random() < zero_weight:
        return sig.zero()
    atoms = _ATOMS[sig]
    e = sig(rng.choice(atoms))
    if rng.random() < 0.4:
        e = e + sig(rng.choice(atoms)).scale(rng.choice([1, -1, 2]))
    return e


def _random_matrix(sig, rng, rows, cols):
    return WeylMatrix(sig, rows, cols,
                      [[_random_element(sig, rng) for _ in range(cols)] for _ in range(rows)])


def random_complex(sig, rng, length):
    """A free complex of the given length with ``d o d = 0``.

    Length-2 complexes either take ``d_2`` from the syzygies of ``d_1``
    (then add a random right factor) or use complementary zero blocks."""
    if length == 1:
        r0, r1 = rng.randint(1, 2), rng.randint(1, 2)
        return ChainComplex(sig, (r0, r1), (_random_matrix(sig, rng, r0, r1),))
    r0, r1 = rng.randint(1, 2), 2
    if rng.random() < 0.5:
        d1 = _random_matrix(sig, rng, r0, r1)
        syz = left_syz(d1.columns(), signature=sig).columns()
        cols = []
        for c in syz[:2]:
            f = _random_element(sig, rng, zero_weight=0.0) if rng.random() < 0.3 else sig.one()
            cols.append(tuple(f * x for x in c))
        if not cols:
            cols = [(sig.zero(),) * r1]
        d2 = WeylMatrix.from_columns(sig, r1, cols)
    else:
        # d_1 kills the second coordinate, d_2 lands in it
        a = [_random_element(sig, rng) for _ in range(r0)]
        d1 = WeylMatrix(sig, r0, 2, [[a[i], sig.zero()] for i in range(r0)])
        b = _random_element(sig, rng)
        d2 = WeylMatrix(sig, 2, 1, [[sig.zero()], [b]])
    return ChainComplex(sig, (r0, r1, d2.cols), (d1, d2))


def random_family(seed=20260101, count=60):
    """``count`` complexes spread over D_1, D_2, D_1[s]; lengths never exceed
    ``n`` so every member is also a valid certifier input."""
    rng = random.Random(seed)
    out = []
    sigs = [D1, D2, D1S]
    for k in range(count):
        sig = sigs[k % 3]
        length = rng.randint(1, sig.n)
        out.append((f"{sig}#{k}", random_complex(sig, rng, length)))
    return out
