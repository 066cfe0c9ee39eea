"""``acert`` command-line front end.

Usage::

    acert <command> --job FILE [--order NAME] [--mode verify|assert]
                    [--out FILE] [--recheck REPORT]

A job file is JSON::

    {"ring": {"n": 2, "r": 1},
     "command": "spencer",
     "operands": {"divisor": "x1*x2"},
     "options": {"order": "degrevlex", "max_degree": 40, "time_budget": 600}}

Exit codes: 0 success / certified, 1 hypotheses fail or negative verdict,
2 input error, 3 resource guard tripped, 4 internal inconsistency.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time

from . import __version__
from . import charvar, certifier, homlib, logspencer, weyl
from ._engine import resource_guard
from .errors import (AcertError, ElementSyntaxError, InputError, InternalInconsistency,
                     ResourceLimitExceeded)
from .orders import Lex
from .serialization import (complex_from_data, complex_to_data, content_hash, element_from_data,
                            matrix_from_vectors, module_from_data, module_to_data,
                            signature_from_data, vectors_to_data)

COMMANDS = ("gb", "nf", "syz", "resolve", "ext", "grade", "pdim", "homology", "charvar",
            "suppdim", "certify", "report", "logder", "saito", "theta", "spencer", "mflog", "act")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE, EXIT_INTERNAL = 0, 1, 2, 3, 4


class Job:
    def __init__(self, data, order=None, mode=None):
        if not isinstance(data, dict):
            raise InputError("job file must contain an object")
        self.data = data
        self.signature = signature_from_data(data.get("ring", {}))
        self.command = data.get("command")
        self.operands = data.get("operands", {})
        if not isinstance(self.operands, dict):
            raise InputError("operands must be an object")
        opts = data.get("options", {}) or {}
        self.order_name = order or opts.get("order", "degrevlex")
        self.mode = mode or self.operands.get("mode") or opts.get("mode", "verify")
        self.max_degree = int(opts.get("max_degree", 40))
        self.time_budget = float(opts.get("time_budget", 600))

    def need(self, key):
        if key not in self.operands:
            raise InputError(f"command {self.command!r} needs operand {key!r}")
        return self.operands[key]

    @property
    def order(self):
        sig = self.signature
        name = self.order_name
        if name == "degrevlex":
            return sig.default_order
        if name == "lex":
            return Lex(sig.default_order.priority)
        if name in ("filtration", "weight"):
            return sig.filtration_order()
        raise InputError(f"unknown order {name!r} (degrevlex, lex, filtration)")

    def module(self, key="module"):
        return module_from_data(self.signature, self.need(key))

    def complex(self, key="complex"):
        return complex_from_data(self.signature, self.need(key))

    def divisor(self):
        sig = self.signature
        if sig.r not in (0, 1):
            raise InputError("divisor commands work over D_n[s] with a single s")
        text = self.need("divisor")
        if not isinstance(text, str):
            raise InputError("divisor must be a polynomial string")
        return logspencer.Divisor.parse(text, sig.n)

    def generators(self):
        """Either a list of element strings (an ideal) or a rank plus vectors."""
        gens = self.need("generators")
        sig = self.signature
        rank = self.operands.get("rank")
        if rank is None:
            return [element_from_data(sig, g) for g in gens], None
        m = matrix_from_vectors(sig, int(rank), gens)
        return m.columns(), int(rank)


def _vec_data(v):
    if isinstance(v, tuple):
        return [str(x) for x in v]
    return str(v)


def _num(x):
    return "infinity" if x == math.inf else x


def _der_data(d):
    return {"coefficients": [str(a) for a in d.coefficients], "cofactor": str(d.cofactor)}


# -- command handlers: each returns (result, exit code) ------------------------

def cmd_gb(job):
    gens, _ = job.generators()
    return {"basis": [_vec_data(b) for b in weyl.left_gb(gens, job.order)]}, EXIT_OK


def cmd_nf(job):
    gens, rank = job.generators()
    sig = job.signature
    v = job.need("element")
    if rank is None:
        v = element_from_data(sig, v)
    else:
        v = matrix_from_vectors(sig, rank, [v]).column(0)
    r = weyl.left_nf(v, gens, job.order)
    zero = r.is_zero() if rank is None else all(x.is_zero() for x in r)
    return {"normal_form": _vec_data(r), "member": zero}, EXIT_OK


def cmd_syz(job):
    gens, _ = job.generators()
    S = weyl.left_syz(gens, job.order, signature=job.signature)
    return {"syzygies": vectors_to_data(S)}, EXIT_OK


def cmd_resolve(job):
    M = job.module()
    length = int(job.operands.get("max_length", job.signature.global_dimension + 1))
    res = weyl.free_resolution(M.relations, length, job.order)
    return {"ranks": list(res.ranks), "maps": [vectors_to_data(d) for d in res.maps],
            "truncated": res.truncated}, EXIT_OK


def cmd_ext(job):
    M = job.module()
    k = int(job.need("k"))
    E = homlib.ext(M, k)
    return {"k": k, "zero": homlib.is_zero(E), "module": module_to_data(E)}, EXIT_OK


def cmd_grade(job):
    return {"grade": _num(homlib.grade(job.module()))}, EXIT_OK


def cmd_pdim(job):
    M = job.module()
    if homlib.is_zero(M):
        return {"pdim": None, "zero_module": True}, EXIT_FAIL
    return {"pdim": homlib.pdim(M)}, EXIT_OK


def cmd_homology(job):
    C = job.complex()
    slots = job.operands.get("slots", list(range(C.length + 1)))
    if homlib.composition_defects(C):
        raise InputError("differentials do not compose to zero")
    out = {}
    for q in slots:
        q = int(q)
        z = homlib.homology_is_zero(C, q)
        out[str(q)] = {"zero": z,
                       "module": module_to_data(homlib.PresentedModule.free(C.signature, 0)
                                                if z else homlib.homology(C, q, check=False))}
    return {"homology": out}, EXIT_OK


def cmd_charvar(job):
    M = job.module()
    G = charvar.gr_presentation(M)
    rep = charvar.char_dim_report(M)
    return {"graded_relations": vectors_to_data(G.relations),
            "graded_ring": list(G.ring.variables),
            "ch_dim": rep.ch_dim, "ox_support_dim": rep.ox_support_dim,
            "grade_via_gr": rep.grade_via_gr}, EXIT_OK


def cmd_suppdim(job):
    return {"ox_support_dim": charvar.ox_support_dim(job.module())}, EXIT_OK


def cmd_certify(job):
    C = job.complex()
    cert = certifier.certify_acyclic(C, job.mode, job.operands.get("asserted_support"))
    ok = cert.conclusion in (certifier.ACYCLIC, certifier.CONDITIONALLY_ACYCLIC)
    return {"certificate": cert.to_data()}, EXIT_OK if ok else EXIT_FAIL


def cmd_report(job):
    rep = certifier.lemma_grade_report(job.complex())
    return {"report": rep.to_data()}, EXIT_OK


def cmd_logder(job):
    D = job.divisor()
    return {"derivations": [_der_data(d) for d in logspencer.log_derivations(D)]}, EXIT_OK


def _basis(job, D):
    raw = job.operands.get("basis")
    if raw is None:
        return logspencer.saito_basis(D)
    return [logspencer.derivation_from_coefficients(D, [D.f.ring.parse(c) for c in coeffs])
            for coeffs in raw]


def cmd_saito(job):
    D = job.divisor()
    basis = _basis(job, D)
    ok = logspencer.saito_check(D, basis)
    return {"basis": [_der_data(d) for d in basis], "free": ok,
            "determinant": str(logspencer.coefficient_determinant(basis))}, \
        EXIT_OK if ok else EXIT_FAIL


def cmd_theta(job):
    D = job.divisor()
    raw = job.operands.get("basis")
    ders = logspencer.log_derivations(D) if raw is None else _basis(job, D)
    return {"theta": [str(t) for t in logspencer.theta_generators(D, ders)]}, EXIT_OK


def cmd_spencer(job):
    D = job.divisor()
    rec = logspencer.spencer_complex(D, _basis(job, D))
    return {"ring": {"n": D.n, "r": 1},
            "theta": [str(t) for t in rec.thetas],
            "structure_constants": {f"{i},{j}": [str(c) for c in v]
                                    for (i, j), v in sorted(rec.constants.items())},
            "complex": complex_to_data(rec.complex),
            "composition_zero": rec.composition_zero,
            "bracket_closure": rec.bracket_closure}, EXIT_OK


def cmd_mflog(job):
    D = job.divisor()
    raw = job.operands.get("basis")
    ders = logspencer.log_derivations(D) if raw is None else _basis(job, D)
    return {"module": module_to_data(logspencer.mflog(D, ders))}, EXIT_OK


def cmd_act(job):
    D = job.divisor()
    P = D.signature.parse(job.need("operator"))
    num = logspencer.xs_ring(D.n).parse(str(job.operands.get("numerator", "1")))
    k = int(job.operands.get("pole_order", 0))
    v = logspencer.act_on_fs(P, logspencer.FsElement(num, k), D)
    return {"numerator": str(v.numerator), "pole_order": v.pole_order, "zero": v.is_zero()}, \
        EXIT_OK


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


# -- driver -------------------------------------------------------------------

def _error(kind, exc, extra=None):
    out = {"kind": kind, "message": str(exc)}
    if isinstance(exc, ElementSyntaxError):
        out["kind"] = "SyntaxError"
        out["position"] = exc.position
    if extra:
        out.update(extra)
    return out


def run_job(data, command=None, order=None, mode=None):
    """Run a parsed job; returns ``(report, exit_code)``."""
    start = time.perf_counter()
    report = {"engine": {"name": "acert", "version": __version__}}
    try:
        job = Job(data, order, mode)
        cmd = command or job.command
        if job.command is not None and command is not None and job.command != command:
            raise InputError(f"job file is for {job.command!r}, not {command!r}")
        if cmd not in HANDLERS:
            raise InputError(f"unknown command {cmd!r}")
        report["command"] = cmd
        report["input"] = {"hash": content_hash(data), "job": data}
        with resource_guard(job.max_degree, job.time_budget):
            result, code = HANDLERS[cmd](job)
        report["result"] = result
    except InputError as exc:
        report["error"] = _error(type(exc).__name__, exc)
        code = EXIT_INPUT
    except ResourceLimitExceeded as exc:
        report["error"] = _error("ResourceLimitExceeded", exc, {"diagnostics": exc.diagnostics})
        code = EXIT_RESOURCE
    except InternalInconsistency as exc:
        report["error"] = _error("InternalInconsistency", exc, {"details": _jsonable(exc.details)})
        code = EXIT_INTERNAL
    except AcertError as exc:
        report["error"] = _error(type(exc).__name__, exc)
        code = EXIT_FAIL
    report["exit_code"] = code
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return report, code


def _jsonable(obj):
    return json.loads(json.dumps(obj, default=str))


def recheck_report(data, stored):
    """Replay the hypothesis checks of a stored certify report."""
    start = time.perf_counter()
    report = {"engine": {"name": "acert", "version": __version__}, "command": "recheck"}
    try:
        job = Job(data)
        cert = (stored.get("result") or {}).get("certificate")
        if cert is None:
            raise InputError("stored report has no certificate")
        with resource_guard(job.max_degree, job.time_budget):
            mismatches = certifier.recheck(job.complex(), cert)
        report["result"] = {"reproduced": not mismatches, "mismatches": mismatches}
        code = EXIT_OK if not mismatches else EXIT_FAIL
    except InputError as exc:
        report["error"] = _error(type(exc).__name__, exc)
        code = EXIT_INPUT
    except ResourceLimitExceeded as exc:
        report["error"] = _error("ResourceLimitExceeded", exc, {"diagnostics": exc.diagnostics})
        code = EXIT_RESOURCE
    except InternalInconsistency as exc:
        report["error"] = _error("InternalInconsistency", exc, {"details": _jsonable(exc.details)})
        code = EXIT_INTERNAL
    except AcertError as exc:
        report["error"] = _error(type(exc).__name__, exc)
        code = EXIT_FAIL
    report["exit_code"] = code
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return report, code


def _summary(report):
    if "error" in report:
        e = report["error"]
        return f"{report.get('command', '?')}: {e['kind']}: {e['message']}"
    res = report["result"]
    if "certificate" in res:
        return f"{report['command']}: {res['certificate']['conclusion']}"
    return f"{report['command']}: ok"


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from None


def main(argv=None):
    parser = argparse.ArgumentParser(prog="acert", description="Exact D-module computations "
                                     "and acyclicity certificates.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--job", required=True, help="JSON job file")
    parser.add_argument("--order", help="monomial order: degrevlex, lex or filtration")
    parser.add_argument("--mode", choices=("verify", "assert"))
    parser.add_argument("--out", help="write the JSON report here instead of stdout")
    parser.add_argument("--recheck", metavar="REPORT",
                        help="replay the checks of a stored certify report")
    args = parser.parse_args(argv)

    try:
        data = _load_json(args.job)
        stored = _load_json(args.recheck) if args.recheck else None
    except InputError as exc:
        print(f"acert: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if stored is not None:
        report, code = recheck_report(data, stored)
    else:
        report, code = run_job(data, args.command, args.order, args.mode)
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(_summary(report), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
