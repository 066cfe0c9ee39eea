"""Grade bounds on the homology of complexes over ``D_n[s]`` and the
acyclicity certificate built from projective-dimension and support bounds.

``verify`` mode computes every quantity; ``assert`` mode takes the support
dimensions from the caller and returns a conditional verdict.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .charvar import ox_support_dim
from .errors import IncompatibleComplex, InternalInconsistency, LengthExceedsDimension, MissingAssertion
from .homlib import (composition_defects, grade, homology, homology_is_zero,
                     is_zero, nonzero_homology_generator, pdim)
from .serialization import complex_hash

ACYCLIC = "Acyclic"
HYPOTHESES_FAIL = "HypothesesFail"
CONDITIONALLY_ACYCLIC = "ConditionallyAcyclic"


def check_complex(C):
    """True iff every consecutive composition vanishes."""
    return not composition_defects(C)


def _slot_pdim(C, q):
    """Projective dimension of slot ``q``; ``0`` for free slots and ``-1`` for
    a zero slot (which imposes nothing)."""
    if C.relations is None or C.relations[q] is None:
        return 0 if C.ranks[q] else -1
    M = C.slot_module(q)
    if is_zero(M):
        return -1
    return pdim(M)


@dataclass
class PdimCheck:
    slot: int
    pdim: int
    bound: int
    ok: bool

    def to_data(self):
        return {"slot": self.slot, "pdim": self.pdim, "bound": self.bound, "pass": self.ok}


@dataclass
class SupportCheck:
    slot: int
    dim: int
    bound: int
    ok: bool

    def to_data(self):
        return {"slot": self.slot, "dim": self.dim, "bound": self.bound, "pass": self.ok}


@dataclass
class GradeBoundReport:
    length: int
    largest_nonvanishing: int | None
    grade: int | None
    bound: int | None
    pdim_checks: list
    hypotheses_hold: bool
    verdict: str

    @property
    def tight(self):
        return self.grade is not None and self.grade == self.bound

    def to_data(self):
        return {
            "length": self.length,
            "largest_nonvanishing": self.largest_nonvanishing,
            "grade": self.grade,
            "bound": self.bound,
            "pdim_checks": [c.to_data() for c in self.pdim_checks],
            "hypotheses_hold": self.hypotheses_hold,
            "verdict": self.verdict,
        }


def lemma_grade_report(C):
    """Find the largest ``i > 0`` with ``H_i != 0``, its grade, and whether
    ``pdim(M_q) <= m - q`` holds for every slot; if the hypotheses hold the
    grade must not exceed ``m - i``."""
    if composition_defects(C):
        raise IncompatibleComplex("differentials do not compose to zero")
    m = C.length
    checks = []
    for q in range(m + 1):
        p = _slot_pdim(C, q)
        checks.append(PdimCheck(q, p, m - q, p <= m - q))
    hyp = all(c.ok for c in checks)
    largest = None
    for i in range(m, 0, -1):
        if not homology_is_zero(C, i):
            largest = i
            break
    if largest is None:
        return GradeBoundReport(m, None, None, None, checks, hyp, "acyclic")
    g = grade(homology(C, largest, check=False))
    bound = m - largest
    if g <= bound:
        verdict = "OK"
    elif hyp:
        raise InternalInconsistency(
            f"grade(H_{largest}) = {g} exceeds m - i = {bound} although every pdim bound holds",
            {"slot": largest, "grade": g, "bound": bound})
    else:
        verdict = "bound not applicable"
    return GradeBoundReport(m, largest, g, bound, checks, hyp, verdict)


@dataclass
class Certificate:
    complex_hash: str
    mode: str
    composition_zero: bool
    pdim_bounds: list
    support_mode: str
    support_dims: list
    conclusion: str
    details: list = field(default_factory=list)
    assumptions: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)

    @property
    def acyclic(self):
        return self.conclusion == ACYCLIC

    def to_data(self):
        return {
            "complex_hash": self.complex_hash,
            "mode": self.mode,
            "composition_zero": self.composition_zero,
            "pdim_bounds": [c.to_data() for c in self.pdim_bounds],
            "support_mode": self.support_mode,
            "support_dims": [c.to_data() for c in self.support_dims],
            "conclusion": self.conclusion,
            "details": list(self.details),
            "assumptions": list(self.assumptions),
            "witnesses": list(self.witnesses),
        }


def _witness(C, q):
    g = nonzero_homology_generator(C, q)
    return {"slot": q, "generator": None if g is None else [str(x) for x in g]}


def certify_acyclic(C, mode="verify", asserted_support=None):
    """Check ``pdim(M_q) <= n - q`` and ``dim supp H_i <= i - 1`` for a
    complex of length at most ``n``.

    ``asserted_support`` maps each positive slot to a dimension (a dict, or a
    sequence indexed from slot 1).
    """
    if mode not in ("verify", "assert"):
        raise ValueError(f"unknown mode {mode!r}")
    n = C.signature.n
    m = C.length
    if m > n:
        raise LengthExceedsDimension(f"complex of length {m} exceeds the dimension {n}")
    if composition_defects(C):
        raise IncompatibleComplex("differentials do not compose to zero")
    h = complex_hash(C)

    pchecks = []
    for q in range(m + 1):
        p = _slot_pdim(C, q)
        pchecks.append(PdimCheck(q, p, n - q, p <= n - q))

    if mode == "assert":
        if asserted_support is None:
            raise MissingAssertion("assert mode needs a support dimension for every positive slot")
        if isinstance(asserted_support, dict):
            values = {int(k): v for k, v in asserted_support.items()}
        else:
            values = {i + 1: v for i, v in enumerate(asserted_support)}
        missing = [i for i in range(1, m + 1) if i not in values]
        if missing:
            raise MissingAssertion(f"no asserted support dimension for slots {missing}")
        dims = {i: int(values[i]) for i in range(1, m + 1)}
    else:
        dims = {}
        for i in range(1, m + 1):
            dims[i] = -1 if homology_is_zero(C, i) else ox_support_dim(homology(C, i, check=False))
    schecks = [SupportCheck(i, dims[i], i - 1, dims[i] <= i - 1) for i in range(1, m + 1)]

    failed = [c for c in pchecks if not c.ok] + [c for c in schecks if not c.ok]
    details = [f"pdim(M_{c.slot}) = {c.pdim} > {c.bound}" for c in pchecks if not c.ok]
    details += [f"dim supp H_{c.slot} = {c.dim} > {c.bound}" for c in schecks if not c.ok]
    support_mode = "computed" if mode == "verify" else "asserted"

    if failed:
        witnesses = []
        for i in range(1, m + 1):
            if not homology_is_zero(C, i):
                witnesses.append(_witness(C, i))
        return Certificate(h, mode, True, pchecks, support_mode, schecks, HYPOTHESES_FAIL,
                           details, [], witnesses)

    if mode == "assert":
        assumptions = [f"dim supp H_{i} = {dims[i]}" for i in range(1, m + 1)]
        return Certificate(h, mode, True, pchecks, support_mode, schecks,
                           CONDITIONALLY_ACYCLIC, [], assumptions, [])

    for i in range(1, m + 1):
        if not homology_is_zero(C, i):
            raise InternalInconsistency(
                f"all hypotheses hold but H_{i} is nonzero",
                {"slot": i, "witness": _witness(C, i), "support_dims": dims,
                 "pdims": [c.pdim for c in pchecks]})
    return Certificate(h, mode, True, pchecks, support_mode, schecks, ACYCLIC)


def recheck(C, certificate_data):
    """Recompute a stored certificate's hypothesis checks; returns a list of
    mismatching field names (empty when the stored certificate is reproduced)."""
    mode = certificate_data.get("mode", "verify")
    asserted = None
    if mode == "assert":
        asserted = {c["slot"]: c["dim"] for c in certificate_data.get("support_dims", [])}
    fresh = certify_acyclic(C, mode, asserted).to_data()
    keys = ("complex_hash", "composition_zero", "pdim_bounds", "support_dims", "conclusion")
    return [k for k in keys if fresh.get(k) != certificate_data.get(k)]

