"""Command-line front end: ``reeskit COMMAND -f SESSION [options]``.

Exit codes: 0 success, 1 input error, 2 a checked assertion failed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from importlib import resources
from pathlib import Path

from . import rees
from .algebra import format_polynomial
from .detclosure import MaxRoundsExceeded, det_closure
from .groebner import Ideal, elimination_ideal, elimination_order
from .session import Session, SessionError, parse_session

SCHEMA = "reeskit.report/1"


class CheckFailed(Exception):
    """A command ran but the property it verifies does not hold."""

    def __init__(self, message: str, payload: dict):
        super().__init__(message)
        self.payload = payload


def _polys(gens) -> list:
    return [format_polynomial(g) for g in gens]


def _degrees(lo: int, hi: int, single: int | None):
    return [single] if single is not None else list(range(lo, hi + 1))


# -- commands -----------------------------------------------------------------
# Each takes (session, args) and returns (payload, warnings).

def cmd_gb(s: Session, a):
    I = s.ideal(a.ideal)
    order = s.ring.ring.lex() if a.order == "lex" else s.ring.ring.degrevlex()
    handle = Ideal(I.gens + s.ring.relations, order, s.ring.ring)
    return {"order": a.order, "basis": _polys(handle.gb)}, []


def cmd_member(s: Session, a):
    I = s.ideal(a.ideal)
    f = s.ring.parse(a.poly)
    return {"member": f in I.ambient()}, []


def cmd_elim(s: Session, a):
    I = s.ideal(a.ideal)
    drop = [v for v in a.vars.split(",") if v]
    for v in drop:
        if v not in s.variables:
            raise ValueError(f"unknown variable {v!r}")
    ring = s.ring.ring
    handle = Ideal(I.gens + s.ring.relations, elimination_order(ring, drop), ring)
    return {"eliminated": drop, "generators": _polys(elimination_ideal(handle, drop).gens)}, []


def cmd_rees(s: Session, a):
    P = rees.rees_ideal(s.ideal(a.ideal))
    eqs = {}
    for n, gens in sorted(P.by_degree().items()):
        eqs[str(n)] = _polys(sorted(gens, key=format_polynomial))
    return {"t_variables": list(P.t_names), "equations": eqs}, []


def cmd_reltype(s: Session, a):
    report = rees.fresh_generators(rees.rees_ideal(s.ideal(a.ideal)))
    return {"relation_type": report.relation_type}, report.warnings


def cmd_fresh(s: Session, a):
    P = rees.rees_ideal(s.ideal(a.ideal))
    top = P.max_degree()
    report = rees.fresh_generators(P, a.cap if a.cap < top else None)
    payload = report.to_dict()
    payload["truncated"] = a.cap < top
    return payload, report.warnings


def cmd_rednum(s: Session, a):
    return {"reduction_number": rees.reduction_number(s.ideal(a.J), s.ideal(a.I), a.cap)}, []


def cmd_chain(s: Session, a):
    I = s.ideal(a.I)
    report = rees.colon_chain(s.ideal(a.J), I, s.y_index(a.I, a.y_index), a.max or a.cap)
    warnings = [] if report.exact else ["colon quotient counts use greedy irredundant generators"]
    return report.to_dict(), warnings


def cmd_tn(s: Session, a):
    I = s.ideal(a.ideal)
    xs = I.without(s.y_index(a.ideal, a.y_index)).gens
    out = {str(n): rees.check_Tn(xs, I, n) for n in _degrees(2, a.cap, a.n)}
    return {"holds": out, "all": all(all(v) for v in out.values())}, []


def cmd_vv(s: Session, a):
    sub, I = s.ideal(a.J), s.ideal(a.I)
    out = {str(n): rees.vv_module_zero(sub, I, n) for n in _degrees(1, a.cap, a.n)}
    return {"zero": out}, []


def cmd_keralpha(s: Session, a):
    P = rees.rees_ideal(s.ideal(a.ideal))
    out = {}
    witnesses = {}
    for n in _degrees(2, a.cap, a.n):
        w = rees.ker_alpha_witness(P, n)
        out[str(n)] = w is None
        if w is not None:
            witnesses[str(n)] = format_polynomial(w)
    return {"zero": out, "witnesses": witnesses}, []


def cmd_kerbeta(s: Session, a):
    P = rees.rees_ideal(s.ideal(a.ideal))
    out = {}
    witnesses = {}
    for n in _degrees(2, a.cap, a.n):
        w = rees.ker_beta_witness(P, n)
        out[str(n)] = w is None
        if w is not None:
            witnesses[str(n)] = format_polynomial(w)
    return {"zero": out, "witnesses": witnesses}, []


def cmd_fiber(s: Session, a):
    F = rees.fiber_ideal(rees.rees_ideal(s.ideal(a.ideal)))
    report = rees.fresh_of_ideal(F)
    return {"generators": _polys(F.gens), "relation_type": report.relation_type}, []


def cmd_graded(s: Session, a):
    G = rees.graded_ideal(rees.rees_ideal(s.ideal(a.ideal)))
    report = rees.fresh_of_ideal(G)
    return report.to_dict(), []


def cmd_obstructions(s: Session, a):
    I = s.ideal(a.ideal)
    o1 = [rees.obstruction_O1(I, i, a.p) for i in range(len(I.gens))]
    o2 = rees.obstruction_O2(I, a.p) if len(I.gens) >= 3 else None
    return {"p": a.p, "O1": o1, "O2": o2}, []


def cmd_thmA(s: Session, a):
    report = rees.theorem_a_report(s.ideal(a.ideal), s.y_index(a.ideal, a.y_index), a.cap)
    payload = report.to_dict()
    if not report.ok:
        raise CheckFailed("fresh counts and colon quotients disagree", payload)
    return payload, report.warnings


def cmd_thmB(s: Session, a):
    report = rees.theorem_b_report(s.ideal(a.ideal), s.y_index(a.ideal, a.y_index), a.p)
    payload = report.to_dict()
    if not report.implication_holds:
        raise CheckFailed("vanishing in the top degree did not propagate", payload)
    return payload, report.warnings


def cmd_detclosure(s: Session, a):
    I = s.ideal(a.ideal)
    try:
        result = det_closure(I, a.rounds)
    except MaxRoundsExceeded as exc:
        raise CheckFailed(str(exc), _closure_payload(exc.result, I)) from None
    return _closure_payload(result, I), []


def _closure_payload(result, I) -> dict:
    Q = rees.rees_ideal(I)
    return {
        "rounds": len(result.trace),
        "forms": _polys(result.forms),
        "equals_rees_ideal": result.ideal.equals(Q.gb),
        "trace": result.trace,
    }


def cmd_quotient(s: Session, a):
    I = s.ideal(a.ideal)
    y = s.ring.parse(a.poly)
    target = rees.quotient_by_element(s.ring, y)
    image = rees.image_ideal(I, target)
    before = rees.fresh_generators(rees.rees_ideal(I)).relation_type
    after = rees.fresh_generators(rees.rees_ideal(image)).relation_type if image.gens else 1
    return {
        "relation_type": before,
        "quotient_relation_type": after,
        "quotient_generators": _polys(image.gens),
    }, []


COMMANDS = {
    "gb": (cmd_gb, ["ideal", "order"]),
    "member": (cmd_member, ["ideal", "poly"]),
    "elim": (cmd_elim, ["ideal", "vars"]),
    "rees": (cmd_rees, ["ideal"]),
    "reltype": (cmd_reltype, ["ideal"]),
    "fresh": (cmd_fresh, ["ideal"]),
    "rednum": (cmd_rednum, ["J", "I"]),
    "chain": (cmd_chain, ["J", "I", "max"]),
    "tn": (cmd_tn, ["ideal", "n"]),
    "vv": (cmd_vv, ["J", "I", "n"]),
    "keralpha": (cmd_keralpha, ["ideal", "n"]),
    "kerbeta": (cmd_kerbeta, ["ideal", "n"]),
    "fiber": (cmd_fiber, ["ideal"]),
    "graded": (cmd_graded, ["ideal"]),
    "obstructions": (cmd_obstructions, ["ideal", "p"]),
    "thmA": (cmd_thmA, ["ideal"]),
    "thmB": (cmd_thmB, ["ideal", "p"]),
    "detclosure": (cmd_detclosure, ["ideal"]),
    "quotient": (cmd_quotient, ["ideal", "poly"]),
}

_OPTIONS = {
    "ideal": (("--ideal",), dict(required=True, help="ideal name")),
    "order": (("--order",), dict(choices=["degrevlex", "lex"], default="degrevlex")),
    "poly": (("--poly",), dict(required=True, help="polynomial text")),
    "vars": (("--vars",), dict(required=True, help="comma-separated variables to eliminate")),
    "J": (("--J",), dict(required=True, help="name of the smaller ideal")),
    "I": (("--I",), dict(required=True, help="name of the larger ideal")),
    "max": (("--max",), dict(type=int, default=None, help="last n of the chain (default: --cap)")),
    "n": (("--n",), dict(type=int, default=None, help="single degree (default: all up to --cap)")),
    "p": (("--p",), dict(type=int, required=True, help="degree")),
}


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-f", "--file", required=True, help="session file")
    common.add_argument("--field", type=int, default=None, help="override the prime")
    common.add_argument("--cap", type=int, default=8, help="degree cap (default 8)")
    common.add_argument("--rounds", type=int, default=10, help="closure round cap (default 10)")
    common.add_argument("--y-index", type=int, default=None, dest="y_index",
                        help="1-based position of y (default: role line or last generator)")
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reeskit", description=__doc__.splitlines()[0])
    parser.add_argument("--suite", nargs="*", metavar="FILE",
                        help="run the expectations of session files (default: shipped corpus)")
    parser.add_argument("--field", type=int, default=None, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command")
    common = _common()
    for name, (_, opts) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common])
        for opt in opts:
            flags, kw = _OPTIONS[opt]
            sp.add_argument(*flags, **kw)
    return parser


# -- execution ----------------------------------------------------------------

ASSERTION_ERRORS = (CheckFailed, rees.TnFailed, rees.HypothesisFailed, rees.NotAReductionWithinCap)


def _arguments(args) -> dict:
    skip = {"file", "json", "command", "suite"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def run(command: str, session: Session, args) -> tuple:
    """Execute ``command``; returns ``(report dict, exit code)``."""
    fn, _ = COMMANDS[command]
    digest = hashlib.sha256(
        json.dumps([session.canonical(), command, _arguments(args)], sort_keys=True).encode()
    ).hexdigest()
    report = {"schema": SCHEMA, "command": command, "arguments": _arguments(args), "input_hash": digest}
    start = time.perf_counter()
    code = 0
    try:
        payload, warnings = fn(session, args)
        report["result"] = payload
        report["warnings"] = list(warnings)
    except ASSERTION_ERRORS as exc:
        code = 2
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, CheckFailed):
            report["result"] = exc.payload
    except (ValueError, KeyError, IndexError) as exc:
        code = 1
        report["error"] = {"type": type(exc).__name__, "message": str(exc).strip("'\"")}
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return report, code


def render_text(report: dict) -> str:
    lines = [f"{report['command']}"]
    if "error" in report:
        lines.append(f"  error: {report['error']['type']}: {report['error']['message']}")
    for key, value in sorted(report.get("result", {}).items()):
        if key == "trace":
            value = f"{len(value)} rounds"
        elif isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"  {key:<20} {value}")
    for w in report.get("warnings", []):
        lines.append(f"  warning: {w}")
    return "\n".join(lines)


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def load_session(path: str, modulus: int | None = None) -> Session:
    return parse_session(Path(path).read_text(encoding="utf-8"), modulus)


def _lookup(obj, path: str):
    for part in path.split("."):
        if isinstance(obj, list):
            obj = obj[int(part)]
        else:
            obj = obj[part]
    return obj


def corpus_files() -> list:
    root = resources.files("reeskit") / "corpus"
    return sorted(str(p) for p in root.iterdir() if p.name.endswith(".rk"))


def run_expectations(path: str, modulus: int | None = None) -> list:
    """``(file, line, description, passed, detail)`` for every expectation in ``path``."""
    session = load_session(path, modulus)
    parser = build_parser()
    out = []
    for exp in session.expectations:
        argv = [exp.command, "-f", path, *exp.args]
        args = parser.parse_args(argv)
        report, code = run(exp.command, session, args)
        desc = f"{exp.command} {' '.join(exp.args)} : {exp.path}"
        try:
            got = _lookup(report.get("result", {}), exp.path)
        except (KeyError, IndexError, ValueError, TypeError):
            got = report.get("error", "missing")
        out.append((Path(path).name, exp.line, desc, got == exp.value, got))
    return out


def run_suite(paths, modulus: int | None = None, out=sys.stdout) -> int:
    paths = paths or corpus_files()
    with ThreadPoolExecutor() as pool:
        results = list(pool.map(lambda p: run_expectations(p, modulus), paths))
    failures = 0
    for rows in results:
        for name, line, desc, ok, got in rows:
            failures += not ok
            status = "PASS" if ok else "FAIL"
            extra = "" if ok else f"  (got {json.dumps(got, sort_keys=True)})"
            print(f"{status} {name}:{line} {desc}{extra}", file=out)
    total = sum(len(r) for r in results)
    print(f"{total - failures}/{total} expectations hold", file=out)
    return 0 if failures == 0 else 2


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.suite is not None:
        try:
            return run_suite(args.suite, args.field)
        except (OSError, SessionError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    if not args.command:
        parser.print_help()
        return 1
    try:
        session = load_session(args.file, args.field)
    except (OSError, SessionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report, code = run(args.command, session, args)
    print(dumps(report) if args.json else render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
