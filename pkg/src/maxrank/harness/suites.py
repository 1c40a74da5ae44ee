"""Named verification suites.

A suite is a list of independent cases.  Each case is a top-level function
plus keyword arguments, so it can be shipped to a worker process and re-run
in isolation from its record alone.  Results are merged in input order.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb
from typing import Callable

import numpy as np

from .. import ideal_oracle as oracle
from ..exact.jets import jet_space
from ..schemes import Cusp, Tacnode, TwoCurvilinear, expected_dimension, verify_general
from ..staircase import (Staircase, espbloc_step, m0, mainthm_check, specialization_chain,
                         staircases_up_to)
from .config import Config
from .realizations import enumerate_realizations, extremal_realization, random_realization
from .typespec import format_types, parse_types

LASTTHM_ROWS = [(11, 78, 47), (10, 66, 40), (9, 55, 33), (9, 55, 34), (8, 45, 27), (8, 45, 28),
                (7, 36, 22), (7, 36, 23), (6, 28, 17), (6, 28, 18), (5, 21, 13), (5, 21, 14)]

# extremal collections for three of the rows
NAMED_COLLECTIONS = {(9, 55, 33): "A2*11", (8, 45, 27): "A2*9", (10, 66, 40): "A2*10,A4*2"}

# H-scheme certificates: extra components plus one member of H_{m,E,s}
H_ROUTES = {
    (11, 78, 47): "H10:17,6:5",
    (10, 66, 40): "A2,H8:17,8:4",
    (9, 55, 34): "H8:14,5:4",
    (8, 45, 27): "A2*2,H6:9,5:3",
    (8, 45, 28): "A2,H6:13,6:3",
    (7, 36, 22): "A2*3,H4:7,4:2",
    (7, 36, 23): "H6:11,4:3",
    (6, 28, 18): "A2,H4:9,4:2",
    (5, 21, 14): "H4:8,3:2",
}

NODE_EXCEPTIONS = {(2, 2), (5, 4)}


@dataclass
class SuiteReport:
    suite: str
    config: dict
    cases: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.cases)

    def failures(self) -> list[dict]:
        return [c for c in self.cases if not c["pass"]]

    def to_dict(self) -> dict:
        return {"suite": self.suite, "config": self.config, "cases": self.cases,
                "pass": self.passed}


@dataclass(frozen=True)
class Case:
    label: str
    fn: Callable[..., dict]
    kwargs: dict


def _run(case: Case) -> dict:
    try:
        out = case.fn(**case.kwargs)
    except Exception as exc:  # recorded, never swallowed silently
        out = {"pass": False, "error": f"{type(exc).__name__}: {exc}"}
    return {"case": case.label, "inputs": _jsonable(case.kwargs), **out}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Staircase):
        return list(obj.stairs)
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


# ----------------------------------------------------------------------
# case functions (top level so worker processes can import them)


def rank_case(types: str, degree: int, trials: int, prime: int, seed: int,
              expect: str = "maximal") -> dict:
    """``expect`` is ``maximal`` or ``deficient`` (every trial deficient)."""
    comps = parse_types(types)
    v = verify_general(comps, degree, trials, prime, seed, stop_early=(expect == "maximal"))
    out = {"verdict": v.kind, "trial": v.trial, "min_deficiency": v.min_deficiency,
           "expected_dimension": expected_dimension(degree, comps),
           "reports": [r.to_dict() for r in v.reports]}
    flags = [f"{c} has 5*ell < 3*N" for c in comps
             if isinstance(c, TwoCurvilinear) and 5 * c.ell < 3 * c.N]
    if flags:
        out["flags"] = flags
    if expect == "maximal":
        ok = v.certified and v.reports[-1].dimension == expected_dimension(degree, comps)
        if not ok:
            out["failure"] = f"rank gap {v.min_deficiency} over {len(v.reports)} trials"
    else:
        ok = not v.certified and v.min_deficiency >= 1
        if not ok:
            out["failure"] = f"expected a deficient system, trial {v.trial} reached maximal rank"
    out["pass"] = ok
    return out


def chains_case(N: int, prime: int = 0, seed: int = 0) -> dict:
    """Every ``(N, ell)`` with the main inequality and ``N - ell >= 2`` is certified."""
    checked, bad = 0, []
    for ell in range(2, N + 1):
        if N - ell < 2 or not mainthm_check(N, ell):
            continue
        checked += 1
        rep = specialization_chain(N, ell)
        if not rep.certified:
            bad.append({"ell": ell, "notes": rep.notes})
    out = {"checked": checked, "pass": not bad}
    if bad:
        out["failure"] = f"ell={bad[0]['ell']}: {'; '.join(bad[0]['notes'])}"
        out["uncertified"] = bad
    return out


def chain_row_case(d: int, N: int, ell: int, trials: int, prime: int, seed: int) -> dict:
    """Direct certificate for a low-degree row whose chain needs one.

    The row's H-scheme route (extra components plus one member of
    ``H_{m,E,s}``) is checked first; it covers every realization containing
    the extra components.  Realizations it does not cover are checked one by
    one.
    """
    out = {"chain": specialization_chain(N, ell).to_dict()}
    route = H_ROUTES.get((d, N, ell))
    reals = enumerate_realizations(N, ell)
    ok = True
    extra: list = []
    if route is not None:
        r = rank_case(route, d, trials, prime, seed)
        extra = parse_types(route)[:-1]
        ok = r["pass"]
        out.update(route=route, route_verdict=r["verdict"])
        if not ok:
            out["failure"] = f"route {route}: {r.get('failure')}"
    covered = [comps for comps in reals if route is not None and ok and _contains(comps, extra)]
    rest = [comps for comps in reals if not (route is not None and ok and _contains(comps, extra))]
    ss = np.random.SeedSequence([seed, N, ell])
    bad = []
    for comps, child in zip(rest, ss.spawn(len(rest))):
        v = verify_general(comps, d, trials, prime, int(child.generate_state(1)[0]))
        if not v.certified:
            bad.append(format_types(comps))
    out.update(realizations=len(reals), covered_by_route=len(covered), checked_directly=len(rest))
    if bad:
        out["failure"] = f"not certified: {bad[0]}"
    out["pass"] = ok and not bad
    return out


def _contains(comps, extra) -> bool:
    pool = [str(c) for c in comps]
    for c in extra:
        if str(c) not in pool:
            return False
        pool.remove(str(c))
    return True


def flatstairs_case(E: tuple, p: int, prime: int, seed: int = 0) -> dict:
    r = oracle.flatstairs_data(Staircase(E), p, prime=prime)
    ok = (r["residual_is_sigma"] and r["residual_colength"] == r["sigma_colength"]
          and r["trace"] == r["trace_expected"] and r["conservation"])
    out = {**r, "pass": ok}
    if not ok:
        out["failure"] = ", ".join(k for k in ("residual_is_sigma", "conservation") if not r[k]) \
            or f"trace {r['trace']} != h(p-1) = {r['trace_expected']}"
    return out


def tflat_case(E: tuple, prime: int, seed: int = 0) -> dict:
    return {"pass": bool(oracle.verify_t_flat(Staircase(E), prime=prime))}


def fiber_case(E: tuple, prime: int, seed: int) -> dict:
    rng = np.random.default_rng(seed)
    ts = [0] + [int(v) for v in rng.integers(1, prime, size=3)]
    return {"t_values": ts, "pass": bool(oracle.fiber_lengths_constant(Staircase(E), ts, prime=prime))}


def codimform_case(E: tuple, s: int, m: int, prime: int, seed: int) -> dict:
    return {"pass": bool(oracle.verify_codimform(Staircase(E), s, m, prime=prime, seed=seed))}


def espbloc_case(E: tuple, s: int, prime: int, seed: int) -> dict:
    o = oracle.verify_espbloc_limit(Staircase(E), s, prime=prime, seed=seed)
    out = {"branch": o.branch, "target": [o.target[0], list(o.target[1].stairs), o.target[2]],
           "rows_match": o.rows_match, "length_match": o.length_match,
           "limit_staircase": None if o.limit_staircase is None else list(o.limit_staircase.stairs),
           "pass": bool(o)}
    if not o:
        out["failure"] = "flat limit differs from the predicted H-scheme"
    return out


def horace_case(E: tuple, p: int, prime: int, seed: int) -> dict:
    rng = np.random.default_rng(seed)
    for attempt in range(20):
        V = oracle.horace_instance(Staircase(E), p, rng, prime=prime)
        try:
            o = oracle.verify_diff_horace(Staircase(E), p, V)
        except oracle.InstanceSkipped:
            continue
        out = {"kernel_dim": o.kernel_dim, "dim_V": len(V), "attempts": attempt + 1, "pass": o.ok}
        if not o.ok:
            out["failure"] = "a kernel element at t=0 is not y times a residual element"
        return out
    return {"pass": False, "failure": "no instance met the injectivity hypothesis"}


def negative_controls_case(prime: int, seed: int = 0) -> dict:
    """Checks that must refuse or fail on purpose."""
    sp = jet_space(2, 8, prime)
    x, y = sp.gens()
    res = {}
    try:
        oracle.verify_finideterm(Staircase((3, 3)), 3, 1, y, x, y, x + y)
        res["finideterm_rejects"] = False
    except oracle.HypothesisViolation:
        res["finideterm_rejects"] = True
    rng = np.random.default_rng(seed)
    V = [x + y, sp.random(rng, max_degree=5)]
    try:
        oracle.verify_diff_horace(Staircase((5, 2)), 3, V)
        res["horace_rejects_noninjective"] = False
    except oracle.InstanceSkipped:
        res["horace_rejects_noninjective"] = True
    try:
        oracle.trace_dim(Staircase((3, 3)), 1, prime=prime)
        res["flatstairs_rejects"] = False
    except oracle.HypothesisViolation:
        res["flatstairs_rejects"] = True
    return {**res, "pass": all(res.values())}


# ----------------------------------------------------------------------
# suite builders


def _nodes_grid(cfg: Config) -> list[Case]:
    cases = []
    for r in range(1, 21):
        for d in range(1, 16):
            expect = "deficient" if (r, d) in NODE_EXCEPTIONS else "maximal"
            trials = max(cfg.trials, 20) if expect == "deficient" else cfg.trials
            cases.append(Case(f"nodes r={r} d={d}", rank_case,
                              dict(types=f"A1*{r}", degree=d, trials=trials, expect=expect)))
    return cases


def tacnode_partitions(total: int = 5) -> list[str]:
    out = []
    for n in range(1, total + 1):
        for ks in combinations_with_replacement(range(total, 0, -1), n):
            if sum(ks) == total:
                out.append(",".join(f"A{2 * k - 1}" for k in ks))
    return out


def _exceptions(cfg: Config) -> list[Case]:
    t = max(cfg.trials, 20)
    cases = [Case("2 nodes d=2", rank_case, dict(types="A1*2", degree=2, trials=t, expect="deficient")),
             Case("2 cusps d=3", rank_case, dict(types="A2*2", degree=3, trials=t, expect="deficient"))]
    for spec in tacnode_partitions(5):
        cases.append(Case(f"tacnodes {spec} d=4", rank_case,
                          dict(types=spec, degree=4, trials=t, expect="deficient")))
    # a single A3 is the coalesced form of two nodes (tacnode orders adding up to 2)
    cases.append(Case("A3 d=2", rank_case, dict(types="A3", degree=2, trials=t, expect="deficient")))
    return cases


def _lastthm(cfg: Config) -> list[Case]:
    cases = []
    for d, N, ell in LASTTHM_ROWS:
        tag = f"d={d} N={N} l={ell}"
        named = [NAMED_COLLECTIONS[(d, N, ell)]] if (d, N, ell) in NAMED_COLLECTIONS else []
        named.append(format_types(extremal_realization(N, ell)))
        for spec in dict.fromkeys(named):
            cases.append(Case(f"{tag} extremal {spec}", rank_case,
                              dict(types=spec, degree=d, trials=cfg.trials)))
        rng = np.random.default_rng(cfg.case_seed("lastthm-sampler", N * 1000 + ell))
        for i in range(cfg.samples):
            spec = format_types(random_realization(N, ell, rng))
            cases.append(Case(f"{tag} random#{i}", rank_case,
                              dict(types=spec, degree=d, trials=cfg.trials)))
        for i, comps in enumerate(enumerate_realizations(N, ell)):
            spec = format_types(comps)
            cases.append(Case(f"{tag} all#{i}", rank_case,
                              dict(types=spec, degree=d, trials=cfg.trials)))
    return cases


def random_collection(target: int, rng: np.random.Generator, max_k: int = 12) -> str:
    """``A_k`` schemes (no simple points) of total length at most ``target``,
    added until none fits."""
    comps = []
    left = target
    while left >= 3:
        k = int(rng.integers(1, max_k + 1))
        c = Tacnode((k + 1) // 2) if k % 2 else Cusp((k + 2) // 2)
        if c.N > left:
            k = 1 if left < 5 else int(rng.choice([1, 2]))
            c = Tacnode(1) if k == 1 else Cusp(2)
        comps.append(c)
        left -= c.N
    return format_types(sorted(comps, key=str))


def _secondthm(cfg: Config) -> list[Case]:
    cases = []
    for d, count in ((13, 50), (14, 25)):
        rng = np.random.default_rng(cfg.case_seed("secondthm-sampler", d))
        top = comb(d + 2, 2)
        for i in range(count):
            spec = random_collection(int(rng.integers(top - 15, top + 1)), rng)
            cases.append(Case(f"d={d} random#{i}", rank_case,
                              dict(types=spec, degree=d, trials=cfg.trials)))
    return cases


def _chains(cfg: Config) -> list[Case]:
    cases = [Case(f"chains N={N}", chains_case, dict(N=N)) for N in range(2, 301)]
    for d, N, ell in LASTTHM_ROWS:
        cases.append(Case(f"direct d={d} N={N} l={ell}", chain_row_case,
                          dict(d=d, N=N, ell=ell, trials=cfg.trials)))
    return cases


def _oracle(cfg: Config) -> list[Case]:
    cases = []
    stairs = list(staircases_up_to(12))
    flat = [E for E in stairs if not oracle.flatstairs_hypothesis(E)]
    for E in flat:
        for p in range(1, E.ell(0) + 1):
            cases.append(Case(f"flatstairs {E} p={p}", flatstairs_case, dict(E=E.stairs, p=p)))
        cases.append(Case(f"tflat {E}", tflat_case, dict(E=E.stairs)))
    rng = np.random.default_rng(cfg.case_seed("oracle-sampler", 0))
    for i in range(50):
        E = flat[int(rng.integers(len(flat)))]
        cases.append(Case(f"fiber#{i} {E}", fiber_case, dict(E=E.stairs)))
    for i in range(200):
        l1 = int(rng.integers(0, 4))
        E = Staircase((l1 + int(rng.integers(1, 6)), l1))
        s = int(rng.integers(1, 4))
        m = m0(E, s) - 1 + int(rng.integers(0, 3))
        cases.append(Case(f"codimform#{i} {E} s={s} m={m}", codimform_case,
                          dict(E=E.stairs, s=s, m=max(m, 0))))
    for E in stairs:
        if E.height != 2:
            continue
        for s in (1, 2):
            try:
                espbloc_step(E, s)
            except ValueError:
                continue
            cases.append(Case(f"espbloc {E} s={s}", espbloc_case, dict(E=E.stairs, s=s)))
    small = [E for E in flat if sum(E.stairs) <= 9]
    for i in range(50):
        E = small[int(rng.integers(len(small)))]
        p = int(rng.integers(1, E.ell(0) + 1))
        cases.append(Case(f"horace#{i} {E} p={p}", horace_case, dict(E=E.stairs, p=p)))
    cases.append(Case("negative controls", negative_controls_case, {}))
    return cases


def _low_degree(cfg: Config) -> list[Case]:
    """Every collection of ``A_k`` schemes fitting in degree ``d <= 4``.

    A collection fits when its length is at most ``C(d+2,2)``; the known
    deficient ones are asserted deficient, all others maximal.
    """
    deficient = {("A1*2", 2), ("A3", 2), ("A2*2", 3)} | {(s, 4) for s in tacnode_partitions(5)}
    cases = []
    for d in range(1, 5):
        top = comb(d + 2, 2)
        for comps in _a_collections(top):
            spec = format_types(comps)
            canon = _canonical(spec)
            expect = "deficient" if (canon, d) in {(_canonical(s), dd) for s, dd in deficient} \
                else "maximal"
            t = max(cfg.trials, 20) if expect == "deficient" else cfg.trials
            cases.append(Case(f"d={d} {spec}", rank_case,
                              dict(types=spec, degree=d, trials=t, expect=expect)))
    return cases


def _a_collections(max_len: int) -> list[list]:
    kinds = []
    k = 1
    while True:
        c = Tacnode((k + 1) // 2) if k % 2 else Cusp((k + 2) // 2)
        if c.N > max_len:
            break
        kinds.append(c)
        k += 1
    out = []

    def rec(start, left, acc):
        if acc:
            out.append(list(acc))
        for i in range(start, len(kinds)):
            if kinds[i].N <= left:
                acc.append(kinds[i])
                rec(i, left - kinds[i].N, acc)
                acc.pop()
    rec(0, max_len, [])
    return out


def _canonical(spec: str) -> str:
    return format_types(sorted(parse_types(spec), key=str))


SUITES: dict[str, Callable[[Config], list[Case]]] = {
    "nodes-grid": _nodes_grid,
    "exceptions": _exceptions,
    "lastthm-table": _lastthm,
    "secondthm-smoke": _secondthm,
    "chains": _chains,
    "oracle": _oracle,
    "low-degree": _low_degree,
}

# bounds the prime must exceed, per suite
_BOUNDS = {"nodes-grid": 16, "exceptions": 10, "lastthm-table": 60, "secondthm-smoke": 60,
           "chains": 60, "oracle": 60, "low-degree": 20}


def build_cases(name: str, cfg: Config) -> list[Case]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    cfg.validate(_BOUNDS[name])
    cases = SUITES[name](cfg)
    # fill in the shared parameters and a per-case seed
    full = []
    for i, c in enumerate(cases):
        kw = dict(c.kwargs)
        kw.setdefault("prime", cfg.prime)
        kw.setdefault("seed", cfg.case_seed(name, i))
        if c.fn is rank_case or c.fn is chain_row_case:
            kw.setdefault("trials", cfg.trials)
        full.append(Case(c.label, c.fn, kw))
    return full


def run_suite(name: str, config: Config | None = None,
              select: Callable[[Case], bool] | None = None) -> SuiteReport:
    """Run a named suite; ``select`` filters cases by their label and inputs."""
    cfg = Config() if config is None else config
    cases = build_cases(name, cfg)
    if select is not None:
        cases = [c for c in cases if select(c)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            records = list(pool.map(_run, cases, chunksize=8))
    else:
        records = [_run(c) for c in cases]
    return SuiteReport(name, cfg.to_dict(), records)
