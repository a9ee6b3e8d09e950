"""Command-line interface.

Exit codes: 0 success, 1 a mathematical hypothesis fails, 2 usage or parse
error, 3 a degree bound or cap was exceeded (after any retries).
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Callable, List, Optional

from . import endomorph as em
from . import lndkit
from .config import Bounds
from .errors import BoundExceeded, DerautoError, HypothesisError, NotLNDError
from .lemmas import format_table, lemma_suite
from .liederiv import apply, bracket, graded_decompose
from .parsing import ParseError, parse_deriv, parse_endo, parse_poly
from .recover import main_theorem_roundtrip, recover_automorphism, retry_doubling

EXIT_OK, EXIT_MATH, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3


class Outcome:
    """What a command produced: JSON-able result, text rendering, trace."""

    def __init__(self, result: dict, text: str, trace: Optional[list] = None, ok: bool = True):
        self.result = result
        self.text = text
        self.trace = trace or []
        self.ok = ok


def _matrix_rows(M) -> List[List[str]]:
    return [[str(e) for e in row] for row in M]


def _endo_json(sigma: em.PolyEndo) -> dict:
    return {f"x{i}": str(p) for i, p in enumerate(sigma.images, start=1)}


# commands ------------------------------------------------------------------

def cmd_bracket(a, n, dmax, cap):
    d, e = parse_deriv(a.exprs[0], n), parse_deriv(a.exprs[1], n)
    r = bracket(d, e)
    return Outcome({"bracket": str(r)}, str(r))


def cmd_apply(a, n, dmax, cap):
    d, p = parse_deriv(a.exprs[0], n), parse_poly(a.exprs[1], n)
    r = apply(d, p)
    return Outcome({"value": str(r)}, str(r))


def cmd_grade(a, n, dmax, cap):
    parts = graded_decompose(parse_deriv(a.exprs[0], n))
    comps = [{"weight": list(w), "component": str(c)} for w, c in parts.items()]
    text = "\n".join(f"{tuple(w)}: {c}" for w, c in parts.items()) or "0"
    return Outcome({"components": comps}, text)


def cmd_jacobian(a, n, dmax, cap):
    J = _matrix_rows(em.jacobian(parse_endo(a.exprs[0], n)))
    return Outcome({"jacobian": J}, "\n".join("[" + ", ".join(r) + "]" for r in J))


def cmd_det(a, n, dmax, cap):
    det = em.jacobian_det(parse_endo(a.exprs[0], n))
    return Outcome({"det": str(det), "unit": det.is_constant() and not det.is_zero()}, str(det))


def cmd_invert(a, n, dmax, cap):
    tau = em.invert_bounded(parse_endo(a.exprs[0], n), dmax)
    return Outcome({"inverse": _endo_json(tau)}, str(tau))


def cmd_conjugate(a, n, dmax, cap):
    sigma, d = parse_endo(a.exprs[0], n), parse_deriv(a.exprs[1], n)
    r = em.conjugate_derivation(sigma, d, dmax)
    return Outcome({"conjugate": str(r)}, str(r))


def cmd_lnd_check(a, n, dmax, cap):
    d = parse_deriv(a.exprs[0], n)
    idx = {}
    for i in range(1, n + 1):
        k = lndkit.nilpotency_index(d, em.Polynomial.var(n, i), cap)
        idx[f"x{i}"] = k
    if any(v is None for v in idx.values()):
        bad = ", ".join(k for k, v in idx.items() if v is None)
        raise NotLNDError(f"not locally nilpotent within cap {cap} (no power kills {bad})", cap=cap)
    text = "locally nilpotent; indices " + ", ".join(f"{k}: {v}" for k, v in idx.items())
    return Outcome({"lnd": True, "indices": idx, "cap": cap}, text)


def _kernel_outcome(ker) -> Outcome:
    basis = [str(p) for p in ker.basis]
    return Outcome({"basis": basis, "dim": ker.dim, "degree_bound": ker.degree_bound}, "\n".join(basis))


def cmd_kernel(a, n, dmax, cap):
    return _kernel_outcome(lndkit.kernel_basis_bounded(parse_deriv(a.exprs[0], n), dmax))


def cmd_common_kernel(a, n, dmax, cap):
    return _kernel_outcome(lndkit.common_kernel_bounded([parse_deriv(t, n) for t in a.exprs], dmax))


def cmd_slice(a, n, dmax, cap):
    d = parse_deriv(a.exprs[0], n)
    if a.seed is not None:
        cert = lndkit.local_slice(d, parse_poly(a.seed, n), cap)
    else:
        cert = lndkit.find_slice(d, cap, lndkit.default_seeds(n, dmax))
    res = {"slice": str(cert.slice), "witness": str(cert.witness), "steps": cert.steps,
           "constant": str(cert.constant)}
    return Outcome(res, str(cert.slice))


def cmd_recover(a, n, dmax, cap):
    ds = [parse_deriv(t, n) for t in a.exprs]
    rep = recover_automorphism(ds, dmax, cap, method=a.method)
    res = {"sigma": _endo_json(rep.sigma),
           "coords": [str(p) for p in rep.coords.coords],
           "lambda": [[str(v) for v in row] for row in rep.coords.lam],
           "shift_normalized": rep.shift_normalized}
    return Outcome(res, str(rep.sigma), rep.trace)


def cmd_roundtrip(a, n, dmax, cap):
    sigma = parse_endo(a.exprs[0], n)
    ok, rep = main_theorem_roundtrip(sigma, dmax, cap, method=a.method)
    res = {"roundtrip": ok, "tau": _endo_json(rep.sigma),
           "partials_image": [str(d) for d in rep.coords.duals]}
    text = ("roundtrip closes: tau^-1 sigma is a shift" if ok else "roundtrip FAILED") + f"\ntau: {rep.sigma}"
    return Outcome(res, text, rep.trace, ok)


def cmd_verify_lemmas(a, n, dmax, cap):
    checks = lemma_suite(n, degree=min(dmax, 6), closure_degree=min(dmax, 4), samples=a.samples, seed=a.seed)
    rows = [{"check": c.name, "passed": c.passed, "detail": c.detail} for c in checks]
    ok = all(c.passed for c in checks)
    return Outcome({"checks": rows}, format_table(checks), ok=ok)


COMMANDS = {
    "bracket": (cmd_bracket, 2, "bracket of two derivations"),
    "apply": (cmd_apply, 2, "apply a derivation to a polynomial"),
    "grade": (cmd_grade, 1, "Z^n-graded components of a derivation"),
    "jacobian": (cmd_jacobian, 1, "Jacobian matrix J[i][j] = d x_j' / d x_i"),
    "det": (cmd_det, 1, "Jacobian determinant"),
    "invert": (cmd_invert, 1, "inverse of an automorphism (degree <= --max-deg)"),
    "conjugate": (cmd_conjugate, 2, "sigma d sigma^-1"),
    "lnd-check": (cmd_lnd_check, 1, "local nilpotency within --cap"),
    "kernel": (cmd_kernel, 1, "kernel of a derivation up to --max-deg"),
    "common-kernel": (cmd_common_kernel, -1, "common kernel up to --max-deg"),
    "slice": (cmd_slice, 1, "local slice x with d x = 1"),
    "recover": (cmd_recover, -1, "automorphism from n commuting LNDs"),
    "roundtrip": (cmd_roundtrip, 1, "conjugate, recover, and compare up to shift"),
    "verify-lemmas": (cmd_verify_lemmas, 0, "bounded-degree structural checks"),
}


def build_parser() -> argparse.ArgumentParser:
    defaults = Bounds()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", type=int, required=True, help="number of variables")
    common.add_argument("--max-deg", type=int, default=defaults.max_deg,
                        help=f"degree bound (default {defaults.max_deg})")
    common.add_argument("--cap", type=int, default=defaults.cap,
                        help=f"nilpotency cap (default {defaults.cap})")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--retry-doubling", action="store_true",
                        help=f"double --max-deg on 'degree bound exceeded', up to {defaults.retries} retries")
    parser = argparse.ArgumentParser(prog="derauto", description="Derivations and automorphisms of Q[x1..xn].")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, arity, help_) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_)
        if arity > 0:
            p.add_argument("exprs", nargs=arity, metavar="EXPR")
        elif arity < 0:
            p.add_argument("exprs", nargs="+", metavar="EXPR")
        if name == "slice":
            p.add_argument("--seed", default=None, help="seed polynomial")
        if name in ("recover", "roundtrip"):
            p.add_argument("--method", choices=("proof", "direct"), default="proof")
        if name == "verify-lemmas":
            p.add_argument("--samples", type=int, default=5)
            p.add_argument("--seed", type=int, default=0)
    return parser


def _read_stdin_placeholders(exprs: List[str], stdin) -> List[str]:
    """Replace each '-' argument by the next non-empty line of stdin."""
    if "-" not in exprs:
        return exprs
    lines = [ln.strip() for ln in stdin.read().splitlines() if ln.strip()]
    if exprs.count("-") == 1 and len(lines) > 1:
        lines = [" ".join(lines)]
    out = []
    for e in exprs:
        if e == "-":
            if not lines:
                raise ParseError("stdin exhausted for '-' placeholder")
            out.append(lines.pop(0))
        else:
            out.append(e)
    return out


_NEGATIVE_EXPR = re.compile(r"^-[0-9(xd]")


def _protect_negative_exprs(argv: List[str]) -> List[str]:
    """Keep argparse from reading expressions like '-d1' as options."""
    return [" " + a if _NEGATIVE_EXPR.match(a) else a for a in argv]


def _emit(args, payload: dict, text: str, out) -> None:
    if args.format == "json":
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    elif text:
        out.write(text + "\n")


def main(argv: Optional[List[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        argv = sys.argv[1:] if argv is None else list(argv)
        args = parser.parse_args(_protect_negative_exprs(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.n < 1 or args.max_deg < 0 or args.cap < 1:
        stderr.write("error: need -n >= 1, --max-deg >= 0, --cap >= 1\n")
        return EXIT_USAGE
    fn: Callable = COMMANDS[args.command][0]
    used = args.max_deg

    def fail(code: int, kind: str, exc: Exception) -> int:
        stderr.write(f"error: {exc}\n")
        payload = {"ok": False, "error": {"kind": kind, "message": str(exc)},
                   "result": {}, "degree_bound_used": used, "trace": []}
        if args.format == "json":
            _emit(args, payload, "", stdout)
        return code

    try:
        if hasattr(args, "exprs"):
            args.exprs = _read_stdin_placeholders([e.strip() for e in args.exprs], stdin)
        retries = Bounds().retries if args.retry_doubling else 0
        outcome, used = retry_doubling(lambda d: fn(args, args.n, d, args.cap), args.max_deg, retries)
    except ParseError as exc:
        return fail(EXIT_USAGE, "parse", exc)
    except HypothesisError as exc:
        return fail(EXIT_MATH, type(exc).__name__, exc)
    except BoundExceeded as exc:
        used = exc.bound if exc.bound is not None else used
        return fail(EXIT_BOUND, type(exc).__name__, exc)
    except DerautoError as exc:
        return fail(EXIT_MATH, type(exc).__name__, exc)
    except (ValueError, IndexError) as exc:
        return fail(EXIT_USAGE, "usage", exc)

    payload = {"ok": outcome.ok, "result": outcome.result, "degree_bound_used": used, "trace": outcome.trace}
    _emit(args, payload, outcome.text, stdout)
    return EXIT_OK if outcome.ok else EXIT_MATH


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
