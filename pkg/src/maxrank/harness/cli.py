"""Command line interface.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for an invalid invocation.
"""

from __future__ import annotations

import argparse
import sys

from .. import ideal_oracle as oracle
from ..exact.field import DEFAULT_PRIME
from ..schemes import TwoCurvilinear, verify_general
from ..staircase import Staircase, specialization_chain
from . import report
from .config import Config
from .suites import SUITES, run_suite
from .typespec import parse_types

ORACLE_OPS = ("trace", "flatstairs", "tflat", "fiber", "codimform", "espbloc", "horace")


class UsageError(Exception):
    pass


def _stairs(text: str) -> Staircase:
    try:
        return Staircase(tuple(int(v) for v in text.split(",") if v))
    except ValueError as exc:
        raise UsageError(f"bad staircase {text!r}: {exc}") from None


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", metavar="PATH", help="write a JSON report")

    ap = argparse.ArgumentParser(prog="maxrank",
                                 description="Maximal rank checks for multiplicity-two schemes.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", parents=[common], help="rank of a general collection")
    v.add_argument("--types", required=True, help="e.g. A1*3,A2,P,C10:7,H2:2,1:1")
    v.add_argument("--degree", type=int, required=True)
    v.add_argument("--trials", type=int, default=5)

    c = sub.add_parser("chain", parents=[common], help="specialization chain of (N, ell)")
    c.add_argument("N", type=int)
    c.add_argument("L", type=int)

    s = sub.add_parser("suite", parents=[common], help="run a named suite")
    s.add_argument("name", choices=sorted(SUITES))
    s.add_argument("--trials", type=int, default=5)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--csv", metavar="PATH", help="write the rank reports as CSV")

    o = sub.add_parser("oracle", parents=[common], help="one ideal-oracle check",
                       description="ops: trace E p | flatstairs E p | tflat E | fiber E t1,t2,.. | "
                                   "codimform E s m | espbloc E s | horace E p  (E as 5,2)")
    o.add_argument("op", choices=ORACLE_OPS)
    o.add_argument("args", nargs="*")
    o.add_argument("--order", type=int, default=None, help="truncation order override")
    return ap


def _emit(args, payload: dict, ok: bool, text: str) -> int:
    print(text)
    if args.json:
        report.write_json(payload, args.json)
    return 0 if ok else 1


def _verify(args) -> int:
    comps = parse_types(args.types)
    v = verify_general(comps, args.degree, args.trials, args.prime, args.seed)
    last = v.reports[-1]
    warn = [f"warning: {c} has 5*ell < 3*N" for c in comps
            if isinstance(c, TwoCurvilinear) and 5 * c.ell < 3 * c.N]
    for w in warn:
        print(w)
    text = (f"{','.join(map(str, comps))} in degree {args.degree}: {v} "
            f"(length {last.total_length}, ambient {last.ambient}, rank {last.rank}, "
            f"expected dimension {last.ambient - last.expected - 1})")
    return _emit(args, {"types": args.types, "degree": args.degree, **v.to_dict()}, v.certified, text)


def _chain(args) -> int:
    rep = specialization_chain(args.N, args.L)
    lines = [f"(N, ell) = ({args.N}, {args.L}), k = {rep.k}"]
    lines += [f"  {st.label}: H_{{{st.m},{st.E},{st.s}}}" for st in rep.stages]
    lines.append(f"  certified: {rep.certified}, needs direct check: {rep.needs_direct_check}")
    lines += [f"  note: {n}" for n in rep.notes]
    return _emit(args, rep.to_dict(), rep.certified, "\n".join(lines))


def _suite(args) -> int:
    cfg = Config(prime=args.prime, seed=args.seed, trials=args.trials, samples=args.samples,
                 workers=args.workers)
    rep = run_suite(args.name, cfg)
    d = rep.to_dict()
    lines = [f"suite {args.name}: {len(rep.cases)} cases, "
             f"{len(rep.failures())} failed -> {'PASS' if rep.passed else 'FAIL'}"]
    for f in rep.failures():
        lines.append(f"  FAIL {f['case']}: {f.get('failure') or f.get('error')}")
    if args.csv:
        report.write_csv(d, args.csv)
    return _emit(args, d, rep.passed, "\n".join(lines))


def _need(args, n: int, usage: str):
    if len(args.args) != n:
        raise UsageError(f"oracle {args.op} expects: {usage}")


def _oracle(args) -> int:
    import numpy as np
    op, a, M, p = args.op, args.args, args.order, args.prime
    payload: dict = {"op": op, "args": a}
    try:
        if op == "trace":
            _need(args, 2, "E p")
            val = oracle.trace_dim(_stairs(a[0]), int(a[1]), M, p)
            ok, text = True, f"trace colength {val}"
            payload["trace"] = val
        elif op == "flatstairs":
            _need(args, 2, "E p")
            data = oracle.flatstairs_data(_stairs(a[0]), int(a[1]), M, p)
            ok = oracle.verify_flatstairs(_stairs(a[0]), int(a[1]), M, p)
            payload.update(data)
            text = f"flatstairs {ok}: " + ", ".join(f"{k}={v}" for k, v in sorted(data.items()))
        elif op == "tflat":
            _need(args, 1, "E")
            ok = oracle.verify_t_flat(_stairs(a[0]), M, p)
            text = f"t-flat {ok}"
        elif op == "fiber":
            _need(args, 2, "E t1,t2,...")
            ts = [int(v) for v in a[1].split(",")]
            ok = oracle.fiber_lengths_constant(_stairs(a[0]), ts, M, p)
            text = f"fiber lengths constant {ok}"
        elif op == "codimform":
            _need(args, 3, "E s m")
            ok = oracle.verify_codimform(_stairs(a[0]), int(a[1]), int(a[2]), M, p, args.seed)
            text = f"codimform {ok}"
        elif op == "espbloc":
            _need(args, 2, "E s")
            o = oracle.verify_espbloc_limit(_stairs(a[0]), int(a[1]), M, p, args.seed)
            ok = bool(o)
            m, E, s = o.target
            payload.update(branch=o.branch, target=[m, list(E.stairs), s], rows_match=o.rows_match,
                           limit_staircase=list(o.limit_staircase.stairs))
            text = (f"espbloc branch {o.branch} -> H_{{{m},{E},{s}}}: rows match {o.rows_match}, "
                    f"limit staircase {o.limit_staircase}, {ok}")
        else:
            _need(args, 2, "E p")
            E, pp = _stairs(a[0]), int(a[1])
            rng = np.random.default_rng(args.seed)
            V = oracle.horace_instance(E, pp, rng, prime=p)
            o = oracle.verify_diff_horace(E, pp, V, M=M)
            ok = o.ok
            payload["kernel_dim"] = o.kernel_dim
            text = f"differential Horace {ok} (kernel dimension {o.kernel_dim}, dim V {len(V)})"
    except oracle.HypothesisViolation as exc:
        ok, text = False, f"hypothesis violated: {exc}"
        payload["hypothesis"] = exc.failures
    payload["pass"] = bool(ok)
    return _emit(args, payload, ok, text)


def main(argv=None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    handlers = {"verify": _verify, "chain": _chain, "suite": _suite, "oracle": _oracle}
    try:
        return handlers[args.cmd](args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
