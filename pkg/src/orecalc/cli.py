"""Batch command-line front end.

Commands: gb, contract, desing, cdesing, orderbound, indicial, candidates,
appsing {detect,remove}, series.  Operators are given with repeatable --op
flags or one per line via --file (- for stdin).  Output is deterministic
text or stable-keyed JSON (schema 1).

Exit codes: 0 success, 1 usage error, 2 mathematical precondition failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .contraction import (ContractionError, completely_desingularized,
                          contraction_basis, desingularized_operator,
                          order_bound_shift, submodule_basis)
from .dfinite import (DFiniteError, WeylGB, detect_apparent,
                      exponent_candidates, indicial_polynomial,
                      remove_apparent, series_solutions, singular_locus,
                      weyl_gb)
from .orealg import (OreError, OreOperator, OreSignature, format_operator,
                     parse_operator)
from .pid_groebner import GroebnerError, buchberger, reduce_basis
from .polyring import PolyError, format_poly
from .scalars import DOMAINS, QQ, ScalarError

COMMANDS = ("gb", "contract", "desing", "cdesing", "orderbound", "indicial",
            "candidates", "appsing", "series")


class UsageError(Exception):
    pass


class ProblemSpec:
    def __init__(self, command, subcommand, algebra, coeff, vars, ops, bound,
                 fmt, exponents, cap):
        self.command = command
        self.subcommand = subcommand
        self.algebra = algebra
        self.coeff = coeff
        self.vars = vars
        self.ops = ops              # operator source strings
        self.bound = bound          # "auto" | int | None
        self.format = fmt
        self.exponents = exponents  # list of tuples | None
        self.cap = cap
        self.signature = None
        self.operators = None


def _build_argparser():
    ap = argparse.ArgumentParser(
        prog="orecalc", add_help=True,
        description="exact Ore-operator calculator")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("subcommand", nargs="?",
                    help="detect|remove (appsing only)")
    ap.add_argument("--algebra", choices=("shift", "diff", "weyl"),
                    default="shift")
    ap.add_argument("--coeff", choices=("ZZ", "QQ", "QQ_t"), default=None)
    ap.add_argument("--var", action="append", default=[])
    ap.add_argument("--op", action="append", default=[])
    ap.add_argument("--file", default=None,
                    help="file with one operator per line, - for stdin")
    ap.add_argument("--bound", default=None, help="auto or a nonnegative integer")
    ap.add_argument("--cap", type=int, default=None,
                    help="series truncation total degree")
    ap.add_argument("--exponents", default=None,
                    help='initial exponents, e.g. "0,0;0,1"')
    ap.add_argument("--format", choices=("text", "json"), default="text")
    return ap


def parse(argv) -> ProblemSpec:
    ap = _build_argparser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit:
        raise UsageError("invalid arguments")

    if ns.command == "appsing":
        if ns.subcommand not in ("detect", "remove"):
            raise UsageError("appsing requires a subcommand: detect or remove")
    elif ns.subcommand is not None:
        raise UsageError("unexpected positional argument %r" % ns.subcommand)

    coeff = ns.coeff
    if ns.command in ("indicial", "candidates", "appsing", "series") \
            or ns.algebra == "weyl":
        if ns.algebra != "weyl":
            raise UsageError("command %r requires --algebra weyl" % ns.command)
        if coeff is None:
            coeff = "QQ"
        if coeff != "QQ":
            raise UsageError("the weyl algebra works over QQ coefficients")
    if coeff is None:
        coeff = "ZZ"
    if ns.command in ("contract", "desing", "cdesing", "orderbound") \
            and ns.algebra == "weyl":
        raise UsageError("command %r needs --algebra shift or diff" % ns.command)

    vars = list(ns.var)
    if not vars:
        raise UsageError("at least one --var is required")
    if len(set(vars)) != len(vars):
        raise UsageError("duplicate variable names")
    for v in vars:
        if v == "t" or v.startswith("D"):
            raise UsageError("variable name %r collides with reserved tokens" % v)

    ops = list(ns.op)
    if ns.file is not None:
        data = sys.stdin.read() if ns.file == "-" else open(ns.file).read()
        ops.extend(line.strip() for line in data.splitlines() if line.strip())
    if not ops:
        raise UsageError("no operators given (--op or --file)")

    bound = None
    if ns.bound is not None:
        if ns.command not in ("contract", "desing", "cdesing"):
            raise UsageError("--bound applies to contract/desing/cdesing only")
        if ns.bound == "auto":
            if ns.algebra != "shift":
                raise UsageError("--bound auto requires the shift algebra")
            bound = "auto"
        else:
            try:
                bound = int(ns.bound)
            except ValueError:
                raise UsageError("--bound expects auto or an integer")
            if bound < 0:
                raise UsageError("--bound must be nonnegative")
    elif ns.command in ("contract", "desing", "cdesing"):
        if ns.algebra == "shift":
            bound = "auto"
        else:
            raise UsageError("command %r needs --bound for the differential case"
                             % ns.command)

    exponents = None
    if ns.exponents is not None:
        if ns.command != "appsing":
            raise UsageError("--exponents applies to appsing only")
        exponents = []
        for chunk in ns.exponents.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            try:
                exponents.append(tuple(int(c) for c in chunk.split(",")))
            except ValueError:
                raise UsageError("bad exponent tuple %r" % chunk)
        if any(len(u) != len(vars) or any(c < 0 for c in u)
               for u in exponents):
            raise UsageError("exponent tuples must be nonnegative and match "
                             "the variable count")
    elif ns.command == "appsing" and ns.subcommand == "remove":
        raise UsageError("appsing remove requires --exponents")

    cap = ns.cap
    if cap is not None and ns.command != "series":
        raise UsageError("--cap applies to series only")
    if ns.command == "series":
        if cap is None:
            cap = 6
        if cap < 0:
            raise UsageError("--cap must be nonnegative")

    spec = ProblemSpec(ns.command, ns.subcommand, ns.algebra, coeff, vars,
                       ops, bound, ns.format, exponents, cap)
    dom = DOMAINS[spec.coeff]
    if spec.algebra == "shift":
        sig = OreSignature.shift(dom, spec.vars)
    else:
        sig = OreSignature.diff(dom, spec.vars)
    spec.signature = sig
    try:
        spec.operators = [parse_operator(s, sig) for s in spec.ops]
    except (PolyError, ScalarError, OreError) as exc:
        raise UsageError(str(exc))
    for i, op in enumerate(spec.operators):
        if op.is_zero:
            raise UsageError("operator %d is zero" % (i + 1,))
    return spec


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------

def _op_sort_key(op: OreOperator):
    deg = max((sum(a) for (a, _) in op.terms), default=-1)
    return (op.order(), deg, format_operator(op))


def _basis_strings(ops):
    return [format_operator(op) for op in sorted(ops, key=_op_sort_key)]


def run(spec: ProblemSpec):
    """Dispatch; returns (exit_code, report dict)."""
    try:
        return 0, _dispatch(spec)
    except (ContractionError, DFiniteError, GroebnerError, OreError,
            ScalarError, PolyError) as exc:
        return 2, {"schema": 1, "command": spec.command, "error": str(exc)}


def _resolve_bound(spec, L):
    if spec.bound == "auto":
        return order_bound_shift(L)
    return spec.bound


def _single(spec):
    if len(spec.operators) != 1:
        raise UsageError("command %r takes exactly one operator" % spec.command)
    return spec.operators[0]


def _dispatch(spec: ProblemSpec):
    report = {"schema": 1, "command": spec.command}
    if spec.command == "gb":
        if spec.algebra == "weyl":
            G = weyl_gb(spec.operators)
            report["basis"] = _basis_strings(G.generators)
        else:
            gb = reduce_basis(buchberger(spec.operators, keep_certs=False))
            report["basis"] = _basis_strings(gb.elements)
        return report

    if spec.command == "orderbound":
        report["bound"] = order_bound_shift(_single(spec))
        return report

    if spec.command == "contract":
        L = _single(spec)
        k = _resolve_bound(spec, L)
        res = contraction_basis(L, k)
        report["bound"] = res.bound_used
        report["saturation_constant"] = str(res.sat_constant)
        report["desingularized"] = format_operator(res.desing)
        report["basis"] = _basis_strings(list(res.basis))
        return report

    if spec.command == "desing":
        L = _single(spec)
        k = _resolve_bound(spec, L)
        report["bound"] = k
        report["operator"] = format_operator(desingularized_operator(L, k))
        return report

    if spec.command == "cdesing":
        L = _single(spec)
        k = _resolve_bound(spec, L)
        T = completely_desingularized(L, k)
        report["bound"] = k
        report["operator"] = format_operator(T)
        return report

    if spec.command == "indicial":
        report["indicial"] = [format_poly(indicial_polynomial(op))
                              for op in spec.operators]
        return report

    G = weyl_gb(spec.operators)
    if spec.command == "candidates":
        cands = exponent_candidates(G)
        report["candidates"] = [list(u) for u in sorted(cands.candidates)]
        return report

    if spec.command == "series":
        sols = series_solutions(G, spec.cap)
        report["cap"] = spec.cap
        report["series"] = [
            {" ".join(str(c) for c in u): str(s.coeffs[u])
             for u in sorted(s.coeffs)} for s in sols]
        report["series_text"] = [str(s) for s in sols]
        return report

    if spec.command == "appsing" and spec.subcommand == "remove":
        M = remove_apparent(G, spec.exponents)
        report["command"] = "appsing remove"
        report["basis"] = _basis_strings(M.generators)
        report["head_coefficients"] = sorted(
            {format_poly(h) for h in M.head_coefficients()})
        return report

    if spec.command == "appsing" and spec.subcommand == "detect":
        f = singular_locus(G)
        if not f.constant_term().is_zero:
            raise DFiniteError("the origin is not a singularity "
                               "(singular locus %s)" % format_poly(f))
        verdict, B, M = detect_apparent(G, candidates=spec.exponents)
        report["command"] = "appsing detect"
        report["verdict"] = verdict
        report["witness"] = sorted([list(u) for u in B]) if B else None
        if M is not None:
            report["basis"] = _basis_strings(M.generators)
            report["head_coefficients"] = sorted(
                {format_poly(h) for h in M.head_coefficients()})
        return report

    raise UsageError("unknown command %r" % spec.command)


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------

def emit(report, fmt) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"
    lines = []
    cmd = report.get("command", "")
    if "error" in report:
        lines.append("error: %s" % report["error"])
    elif cmd == "orderbound":
        lines.append(str(report["bound"]))
    elif cmd in ("desing", "cdesing"):
        lines.append(report["operator"])
    elif cmd == "indicial":
        lines.extend(report["indicial"])
    elif cmd == "candidates":
        lines.extend(",".join(str(c) for c in u) for u in report["candidates"])
    elif cmd == "series":
        lines.extend(report["series_text"])
    elif cmd == "appsing detect":
        lines.append(report["verdict"])
        if report.get("witness"):
            lines.append("witness: " + "; ".join(
                ",".join(str(c) for c in u) for u in report["witness"]))
        for h in report.get("head_coefficients", []):
            lines.append("HC: " + h)
    else:
        if "bound" in report:
            lines.append("bound: %d" % report["bound"])
        if "saturation_constant" in report:
            lines.append("saturation constant: %s" % report["saturation_constant"])
        if "desingularized" in report:
            lines.append("desingularized: %s" % report["desingularized"])
        for b in report.get("basis", []):
            lines.append(b)
        for h in report.get("head_coefficients", []):
            lines.append("HC: " + h)
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        spec = parse(argv)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 1
    try:
        code, report = run(spec)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 1
    out = emit(report, spec.format)
    if code == 0:
        sys.stdout.write(out)
    else:
        sys.stderr.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
