"""Staircases and the closed-form combinatorics built on them.

A staircase ``E`` is a subset of the quadrant closed under adding quadrant
vectors.  When its complement is finite it is encoded by the weakly
decreasing list of stair lengths ``stairs[i] = min{e : (e, i) in E}``;
the complement then has ``sum(stairs)`` cells.  ``heights`` is the dual
encoding by columns.

Everything here is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, isqrt
from typing import Iterator


@dataclass(frozen=True, order=True)
class Staircase:
    stairs: tuple[int, ...] = ()

    def __post_init__(self):
        s = tuple(int(v) for v in self.stairs)
        if any(v < 0 for v in s):
            raise ValueError(f"negative stair length in {s}")
        if any(s[i] < s[i + 1] for i in range(len(s) - 1)):
            raise ValueError(f"stairs must be weakly decreasing, got {s}")
        while s and s[-1] == 0:
            s = s[:-1]
        object.__setattr__(self, "stairs", s)

    def __repr__(self):
        return f"Staircase{self.stairs!r}"

    def __str__(self):
        return "(" + ",".join(map(str, self.stairs)) + ")"

    def __len__(self):
        return len(self.stairs)

    @property
    def height(self) -> int:
        """h(0): number of nonzero stairs."""
        return len(self.stairs)

    def ell(self, i: int) -> int:
        return self.stairs[i] if 0 <= i < len(self.stairs) else 0

    def ell_hat(self, i: int) -> int:
        return self.ell(i) - self.ell(i + 1)

    def h(self, i: int) -> int:
        return sum(1 for v in self.stairs if v > i)

    def h_hat(self, i: int) -> int:
        return self.h(i) - self.h(i + 1)

    def cells(self) -> Iterator[tuple[int, int]]:
        """Complement cells ``(e1, e2)``, row by row."""
        for j, length in enumerate(self.stairs):
            for i in range(length):
                yield (i, j)

    def __contains__(self, point) -> bool:
        e1, e2 = point
        return e1 >= self.ell(e2)


def make_staircase(stairs) -> Staircase:
    return stairs if isinstance(stairs, Staircase) else Staircase(tuple(stairs))


def heights(E: Staircase) -> list[int]:
    """Column heights ``h(0..stairs[0]-1)``."""
    E = make_staircase(E)
    return [E.h(i) for i in range(E.ell(0))]


def from_heights(hs) -> Staircase:
    hs = list(hs)
    if any(hs[i] < hs[i + 1] for i in range(len(hs) - 1)):
        raise ValueError(f"heights must be weakly decreasing, got {hs}")
    top = hs[0] if hs else 0
    return Staircase(tuple(sum(1 for h in hs if h > j) for j in range(top)))


def sigma(E: Staircase, p: int) -> Staircase:
    """Delete the ``p``-th slice (1-based), i.e. drop ``heights[p-1]``.

    With this indexing the complement splits as
    ``complement(E) = complement(sigma(E, p)) + heights(E)[p-1]``.
    """
    E = make_staircase(E)
    if not 1 <= p <= E.ell(0):
        raise ValueError(f"slice index p={p} outside 1..{E.ell(0)}")
    hs = heights(E)
    del hs[p - 1]
    return from_heights(hs)


def complement_size(E: Staircase) -> int:
    return sum(make_staircase(E).stairs)


def min_generators(E: Staircase) -> list[tuple[int, int]]:
    """Inner corners of ``E``, i.e. exponents of the minimal monomial generators."""
    E = make_staircase(E)
    gens = []
    prev = None
    for j in range(E.height + 1):
        length = E.ell(j)
        if prev is None or length < prev:
            gens.append((length, j))
        prev = length
    return gens


def m0(E: Staircase, s: int) -> int:
    E = make_staircase(E)
    if E.height == 0:
        raise ValueError("m0 is undefined for the empty staircase")
    if s < 1:
        raise ValueError("s must be positive")
    return min(e1 + s * e2 for e1, e2 in min_generators(E))


def scheme_length(m: int, E: Staircase) -> int:
    """``C(m+1, 2) + #complement``: the length of the schemes in ``H_{m,E,s}``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return comb(m + 1, 2) + complement_size(E)


def wins_check(E: Staircase, m: int, s: int) -> bool:
    """Sufficient condition for general members of ``H_{m,E,s}`` to have maximal rank."""
    E = make_staircase(E)
    if E.height > 2:
        raise ValueError("wins_check needs a staircase of height at most two")
    return E.ell(0) > m and 2 * E.ell(1) <= m and m >= m0(E, s)


def mainthm_check(N: int, ell: int) -> bool:
    """Exact integer form of ``N <= 2*ell - 1 - 3*sqrt(N - ell)``."""
    if not 0 <= ell <= N:
        raise ValueError(f"need 0 <= ell <= N, got N={N}, ell={ell}")
    slack = 2 * ell - 1 - N
    return slack >= 0 and slack * slack >= 9 * (N - ell)


def corollary_staircase(N: int, ell: int, k: int) -> Staircase:
    """The staircase ``E_k`` with stairs ``(ell - k(k+1), N - ell - k^2)``."""
    if k < 1:
        raise ValueError("k must be positive")
    failures = []
    if not 2 * ell - N > 2 * k:
        failures.append(f"2*ell - N > 2k fails: {2 * ell - N} <= {2 * k}")
    if not ell >= k * (k + 1):
        failures.append(f"ell >= k(k+1) fails: {ell} < {k * (k + 1)}")
    if not N - ell >= k * k:
        failures.append(f"N - ell >= k^2 fails: {N - ell} < {k * k}")
    if failures:
        raise ValueError("; ".join(failures))
    return Staircase((ell - k * (k + 1), N - ell - k * k))


@dataclass(frozen=True)
class EspblocStep:
    branch: int
    m: int
    E: Staircase
    s: int


def espbloc_step(E: Staircase, s: int) -> EspblocStep:
    """One block specialization ``H_{2s,E,s} -> H_{2s+i,E_i,s+1}``."""
    E = make_staircase(E)
    if E.height > 2:
        raise ValueError("espbloc_step needs a staircase of height at most two")
    failures = []
    if E.ell_hat(0) < s + 2:
        failures.append(f"ell_hat(0) >= s+2 fails: {E.ell_hat(0)} < {s + 2}")
    if E.ell(1) < s:
        failures.append(f"ell(1) >= s fails: {E.ell(1)} < {s}")
    if failures:
        raise ValueError("; ".join(failures))
    if E.ell(1) <= 2 * s:
        return EspblocStep(1, 2 * s + 1, Staircase((E.ell(0) - s - 1, E.ell(1) - s)), s + 1)
    return EspblocStep(2, 2 * s + 2, Staircase((E.ell(0) - 2 * s - 2, E.ell(1) - 2 * s - 1)), s + 1)


@dataclass(frozen=True)
class Stage:
    """A scheme family ``H_{m,E,s}`` reached by the chain."""
    m: int
    E: Staircase
    s: int
    label: str

    def as_tuple(self):
        return (self.m, self.E.stairs, self.s)


@dataclass
class ChainReport:
    N: int
    ell: int
    k: int | None = None
    stages: list[Stage] = field(default_factory=list)
    terminal: Stage | None = None
    certified: bool = False
    needs_direct_check: bool = False
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "N": self.N, "ell": self.ell, "k": self.k,
            "stages": [{"label": st.label, "m": st.m, "E": list(st.E.stairs), "s": st.s}
                       for st in self.stages],
            "terminal": None if self.terminal is None else
            {"m": self.terminal.m, "E": list(self.terminal.E.stairs), "s": self.terminal.s},
            "certified": self.certified,
            "needs_direct_check": self.needs_direct_check,
            "notes": list(self.notes),
        }


def specialization_chain(N: int, ell: int) -> ChainReport:
    """Follow the specializations of a 2-curvilinear class ``(N, ell)`` down to
    a family ``H_{m,E,s}`` and decide whether ``wins_check`` certifies it.

    When the main inequality fails the chain stops at the corollary stage
    ``H_{2k,E_k,k}`` and the report asks for a direct rank computation.
    """
    rep = ChainReport(N, ell)
    if not 0 <= ell <= N:
        rep.notes.append(f"invalid invariants: need 0 <= ell <= N, got ({N}, {ell})")
        return rep
    if N > 2 * ell:
        rep.notes.append(f"invalid invariants: N={N} > 2*ell={2 * ell}")
        return rep
    if N - ell <= 1:
        rep.notes.append("N - ell <= 1: curvilinear or height-one case, handled by the classical result")
        return rep

    main = mainthm_check(N, ell)
    k = isqrt(N - ell)
    rep.k = k
    try:
        Ek = corollary_staircase(N, ell, k)
    except ValueError as exc:
        rep.notes.append(f"corollary stage unavailable: {exc}")
        rep.needs_direct_check = True
        return rep
    first = Stage(2 * k, Ek, k, "corollary")
    rep.stages.append(first)

    if not main:
        rep.terminal = first
        rep.needs_direct_check = True
        rep.notes.append("main inequality fails: needs direct rank verification of the corollary stage")
        rep.notes.append(f"wins_check on corollary stage: {wins_check(Ek, 2 * k, k)}")
        return rep

    if N - ell <= k * (k + 1):
        rep.terminal = first
    else:
        try:
            step = espbloc_step(Ek, k)
        except ValueError as exc:
            rep.notes.append(f"espbloc step unavailable: {exc}")
            rep.terminal = first
            rep.certified = False
            return rep
        second = Stage(step.m, step.E, step.s, f"espbloc-branch{step.branch}")
        rep.stages.append(second)
        rep.terminal = second
        rep.notes.append(
            f"espbloc gives ell(0)={step.E.ell(0)}; the closed form ell-(k+1)^2-1 gives {ell - (k + 1) ** 2 - 1}")
    t = rep.terminal
    rep.certified = wins_check(t.E, t.m, t.s)
    if not rep.certified:
        rep.notes.append("wins_check fails on the terminal stage")
    return rep


def staircases(size: int) -> Iterator[Staircase]:
    """All staircases whose complement has exactly ``size`` cells."""
    def parts(n, most):
        if n == 0:
            yield ()
            return
        for first in range(min(n, most), 0, -1):
            for tail in parts(n - first, first):
                yield (first,) + tail
    for st in parts(size, size):
        yield Staircase(st)


def staircases_up_to(size: int) -> Iterator[Staircase]:
    for n in range(1, size + 1):
        yield from staircases(n)
