"""Linear conditions imposed on plane curves by multiplicity-two schemes.

A degree-``d`` curve is a polynomial ``F(X, Y)`` in the affine chart; its
coefficients are indexed by the graded-lex monomials of ``jet_space(2, d+1)``.
Each component sits at a random base point ``(a, b)`` with a random linear
frame ``A``: local coordinates ``(u, v)`` are given by
``(X, Y) = (a, b) + A (u, v)``.  A component is described by a list of
linear functionals on local jets in ``(u, v)``; the global rows are obtained
by composing with the local expansion of every global monomial.

Two local shapes are used:

* a staircase ``E`` along a smooth germ ``v = phi(u)``: with ``w = v - phi(u)``,
  every coefficient of ``u^e w^j`` with ``(e, j)`` outside ``E`` must vanish.
  Tacnodes, cusps and 2-curvilinear schemes are of this form.
* ``H_{m,E,s}``: multiplicity ``m`` at the base point, then in the blow-up
  chart ``u = xb*yb, v = yb`` the virtual transform ``F / yb^m`` must lie in
  ``(xb^e1 (yb + psi(xb))^e2)`` for ``(e1, e2)`` in ``E``, where ``psi`` has
  order exactly ``s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence, Union

import numpy as np

from .exact import linalg
from .exact.field import DEFAULT_PRIME, binomial_table, check_prime
from .exact.jets import ideal_span, jet_space, multiplication_matrix
from .staircase import Staircase, complement_size, m0, make_staircase, scheme_length


# ----------------------------------------------------------------------
# component types


@dataclass(frozen=True)
class Tacnode:
    """``A_{2k-1}``: local ideal ``(y^2, y x^k, x^{2k})``; ``k=1`` is a node."""
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("Tacnode needs k >= 1")

    @property
    def N(self) -> int:
        return 3 * self.k

    @property
    def ell(self) -> int:
        return 2 * self.k

    @property
    def staircase(self) -> Staircase:
        return Staircase((2 * self.k, self.k))

    def __str__(self):
        return f"A{2 * self.k - 1}"


@dataclass(frozen=True)
class Cusp:
    """``A_{2k-2}``: local ideal ``(y^2, y x^k, x^{2k-1})``; ``k=2`` is an ordinary cusp."""
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("Cusp needs k >= 2")

    @property
    def N(self) -> int:
        return 3 * self.k - 1

    @property
    def ell(self) -> int:
        return 2 * self.k - 1

    @property
    def staircase(self) -> Staircase:
        return Staircase((2 * self.k - 1, self.k))

    def __str__(self):
        return f"A{2 * self.k - 2}"


@dataclass(frozen=True)
class TwoCurvilinear:
    """A scheme inside the double of a smooth germ, with length ``N`` and contact ``ell``."""
    n: int
    l: int

    def __post_init__(self):
        if not 0 <= self.l <= self.n <= 2 * self.l:
            raise ValueError(f"need 0 <= ell <= N <= 2 ell, got N={self.n}, ell={self.l}")

    @property
    def N(self) -> int:
        return self.n

    @property
    def ell(self) -> int:
        return self.l

    @property
    def staircase(self) -> Staircase:
        return Staircase((self.l, self.n - self.l))

    def __str__(self):
        return f"C{self.n}:{self.l}"


@dataclass(frozen=True)
class SimplePoint:
    @property
    def N(self) -> int:
        return 1

    @property
    def ell(self) -> int:
        return 1

    @property
    def staircase(self) -> Staircase:
        return Staircase((1,))

    def __str__(self):
        return "P"


@dataclass(frozen=True)
class HmesComponent:
    """A member of ``H_{m,E,s}``; the placement is sampled at assembly time."""
    m: int
    E: Staircase
    s: int

    def __post_init__(self):
        E = make_staircase(self.E)
        object.__setattr__(self, "E", E)
        if self.s < 1:
            raise ValueError("s must be positive")
        if E.height > 2:
            raise ValueError("H_{m,E,s} needs a staircase of height at most two")
        if E.height and self.m < m0(E, self.s) - 1:
            raise ValueError(f"m={self.m} below the validity bound m0-1={m0(E, self.s) - 1}")

    @property
    def N(self) -> int:
        return scheme_length(self.m, self.E)

    @property
    def ell(self) -> int:
        return self.E.ell(0)

    def __str__(self):
        return f"H{self.m}:{self.E.ell(0)},{self.E.ell(1)}:{self.s}"


Component = Union[Tacnode, Cusp, TwoCurvilinear, SimplePoint, HmesComponent]


def is_multiplicity_two(c: Component) -> bool:
    return isinstance(c, (Tacnode, Cusp))


def contact_order(c: Component) -> int:
    """Largest local degree a component's functionals can see."""
    if isinstance(c, HmesComponent):
        return c.m + max((c.E.ell(j) + j for j in range(c.E.height)), default=0)
    E = c.staircase
    return max(E.ell(j) + j for j in range(E.height))


# ----------------------------------------------------------------------
# placements


@dataclass(frozen=True)
class Placement:
    """Base point, local frame and germ coefficients of one component.

    ``germ[i]`` is the coefficient of ``u^(i+1)`` in the smooth germ
    ``v = phi(u)``; for ``H_{m,E,s}`` it holds ``psi`` in the same way, with
    the first ``s-1`` entries zero and ``germ[s-1] != 0``.
    """
    a: int
    b: int
    frame: tuple[tuple[int, int], tuple[int, int]]
    germ: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"point": [self.a, self.b], "frame": [list(r) for r in self.frame],
                "germ": list(self.germ)}


def sample_placement(c: Component, rng: np.random.Generator, p: int) -> Placement:
    while True:
        A = rng.integers(0, p, size=(2, 2), dtype=np.int64)
        if (int(A[0, 0]) * int(A[1, 1]) - int(A[0, 1]) * int(A[1, 0])) % p:
            break
    a, b = (int(v) for v in rng.integers(0, p, size=2, dtype=np.int64))
    J = contact_order(c) + 2
    germ = [int(v) for v in rng.integers(0, p, size=J, dtype=np.int64)]
    if isinstance(c, HmesComponent):
        germ[:c.s - 1] = [0] * (c.s - 1)
        germ[c.s - 1] = int(rng.integers(1, p))
    frame = ((int(A[0, 0]), int(A[0, 1])), (int(A[1, 0]), int(A[1, 1])))
    return Placement(a, b, frame, tuple(germ))


def _series_powers(coeffs: Sequence[int], n_pow: int, order: int, p: int) -> np.ndarray:
    """``P[k, e]`` = coefficient of ``u^e`` in ``(sum coeffs[i] u^(i+1))^k``, ``e < order``."""
    base = np.zeros(order, dtype=np.int64)
    for i, c in enumerate(coeffs):
        if i + 1 < order:
            base[i + 1] = c % p
    P = np.zeros((n_pow + 1, order), dtype=np.int64)
    if order:
        P[0, 0] = 1
    for k in range(1, n_pow + 1):
        P[k] = (np.convolve(P[k - 1].astype(object), base.astype(object))[:order] % p).astype(np.int64)
    return P


# ----------------------------------------------------------------------
# local functionals


def staircase_functionals(E: Staircase, germ: Sequence[int], order: int, p: int) -> np.ndarray:
    """Rows on ``k[u,v]/m^order`` for the monomial conditions of ``E`` along ``v = phi(u)``."""
    sp = jet_space(2, order, p)
    E = make_staircase(E)
    top = E.ell(0) + 1
    phi = _series_powers(germ, order, top, p)
    C = binomial_table(order, p)
    rows = []
    for j in range(E.height):
        for e in range(E.ell(j)):
            row = np.zeros(sp.dim, dtype=np.int64)
            for idx in range(sp.dim):
                al, be = int(sp.exps[idx, 0]), int(sp.exps[idx, 1])
                if be < j or al > e:
                    continue
                val = phi[be - j, e - al]
                if val:
                    row[idx] = C[be, j] * val % p
            rows.append(row)
    return np.array(rows, dtype=np.int64).reshape(-1, sp.dim)


def hmes_functionals(h: HmesComponent, psi: Sequence[int], order: int, p: int) -> np.ndarray:
    """Rows on ``k[u,v]/m^order`` for a member of ``H_{m,E,s}`` at the origin.

    The blow-up chart is ``u = xb*yb, v = yb``, so the exceptional divisor is
    ``yb = 0`` and the infinitely near base point is the ``v`` direction.
    """
    sp = jet_space(2, order, p)
    m, E = h.m, h.E
    rows = []
    # multiplicity m at the origin
    for idx in range(sp.dim):
        if sp.degs[idx] < m:
            row = np.zeros(sp.dim, dtype=np.int64)
            row[idx] = 1
            rows.append(row)
    if E.height:
        top = E.ell(0) + 1
        neg_psi = [(-c) % p for c in psi]
        P = _series_powers(neg_psi, order, top, p)
        C = binomial_table(order, p)
        for j in range(E.height):
            for e in range(E.ell(j)):
                row = np.zeros(sp.dim, dtype=np.int64)
                for idx in range(sp.dim):
                    al, be = int(sp.exps[idx, 0]), int(sp.exps[idx, 1])
                    n = al + be - m
                    if n < j or al > e:
                        continue
                    val = P[n - j, e - al]
                    if val:
                        row[idx] = C[n, j] * val % p
                rows.append(row)
    return np.array(rows, dtype=np.int64).reshape(-1, sp.dim)


def local_functionals(c: Component, pl: Placement, order: int, p: int) -> np.ndarray:
    if isinstance(c, HmesComponent):
        return hmes_functionals(c, pl.germ, order, p)
    return staircase_functionals(c.staircase, pl.germ, order, p)


def local_expansion(pl: Placement, d: int, order: int, p: int) -> np.ndarray:
    """Matrix ``T`` (local dim x global dim): column ``g`` holds the expansion of
    the ``g``-th global monomial in the local coordinates of ``pl``."""
    sp = jet_space(2, order, p)
    glob = jet_space(2, d + 1, p)
    (a00, a01), (a10, a11) = pl.frame
    X = sp.from_dict({(0, 0): pl.a, (1, 0): a00, (0, 1): a01})
    Y = sp.from_dict({(0, 0): pl.b, (1, 0): a10, (0, 1): a11})
    MX = multiplication_matrix(X)
    MY = multiplication_matrix(Y)
    ypow = np.zeros((d + 1, sp.dim), dtype=np.int64)
    ypow[0, 0] = 1
    for j in range(1, d + 1):
        ypow[j] = linalg.matmul(ypow[j - 1:j], MY, p)[0]
    T = np.zeros((sp.dim, glob.dim), dtype=np.int64)
    cur = ypow
    for i in range(d + 1):
        for j in range(d + 1 - i):
            T[:, glob.index((i, j))] = cur[j]
        if i < d:
            cur = linalg.matmul(cur[:d - i], MX, p)
    return T


def component_rows(c: Component, pl: Placement, d: int, p: int = DEFAULT_PRIME) -> np.ndarray:
    """Condition rows (``N(c)`` of them) on the coefficients of degree-``d`` curves."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    if len(pl.germ) < contact_order(c) - 1:
        raise ValueError(f"germ jet of length {len(pl.germ)} too short for {c}")
    order = min(contact_order(c), d + 1)
    L = local_functionals(c, pl, contact_order(c), p)
    L = L[:, :jet_space(2, order, p).dim]
    return linalg.matmul(L, local_expansion(pl, d, order, p), p)


def hmes_rows(h: HmesComponent, pl: Placement, d: int, p: int = DEFAULT_PRIME) -> np.ndarray:
    return component_rows(h, pl, d, p)


# ----------------------------------------------------------------------
# rank experiments


def expected_dimension(d: int, components: Sequence[Component]) -> int:
    """Expected (affine-count minus one) dimension of the linear system."""
    return max(-1, d * (d + 3) // 2 - sum(c.N for c in components))


@dataclass
class RankReport:
    degree: int
    components: list[str]
    total_length: int
    ambient: int
    rank: int
    prime: int
    seed: int | None
    trials: int = 1

    @property
    def expected(self) -> int:
        return min(self.total_length, self.ambient)

    @property
    def deficiency(self) -> int:
        return self.expected - self.rank

    @property
    def maximal(self) -> bool:
        return self.deficiency == 0

    @property
    def dimension(self) -> int:
        """Projective dimension of the system actually observed."""
        return self.ambient - self.rank - 1

    def to_dict(self) -> dict:
        return {"degree": self.degree, "components": list(self.components),
                "total_length": self.total_length, "ambient": self.ambient,
                "rank": self.rank, "expected": self.expected,
                "deficiency": self.deficiency, "maximal": self.maximal,
                "prime": self.prime, "seed": self.seed, "trials": self.trials}


def _distinct_placements(components, rng, p) -> list[Placement]:
    while True:
        pls = [sample_placement(c, rng, p) for c in components]
        if len({(pl.a, pl.b) for pl in pls}) == len(pls):
            return pls


def condition_matrix(components: Sequence[Component], placements: Sequence[Placement],
                     d: int, p: int = DEFAULT_PRIME) -> np.ndarray:
    amb = comb(d + 2, 2)
    blocks = [component_rows(c, pl, d, p) for c, pl in zip(components, placements)]
    return np.vstack(blocks) if blocks else np.zeros((0, amb), dtype=np.int64)


def assemble_and_rank(components: Sequence[Component], d: int, prime: int = DEFAULT_PRIME,
                      seed=None) -> RankReport:
    """One randomized rank experiment in degree ``d``."""
    components = list(components)
    if not components:
        raise ValueError("need at least one component")
    bound = max([d] + [contact_order(c) for c in components])
    p = check_prime(prime, bound)
    rng = np.random.default_rng(seed)
    pls = _distinct_placements(components, rng, p)
    M = condition_matrix(components, pls, d, p)
    return RankReport(d, [str(c) for c in components], sum(c.N for c in components),
                      comb(d + 2, 2), linalg.rank(M, p), p,
                      seed if isinstance(seed, int) else None)


@dataclass
class Verdict:
    """One-sided outcome of :func:`verify_general`.

    ``certified`` means some trial reached the expected rank, which proves
    maximal rank for general position.  Otherwise ``min_deficiency`` is the
    smallest deficiency observed.
    """
    certified: bool
    trial: int | None
    min_deficiency: int
    reports: list[RankReport] = field(default_factory=list)

    @property
    def kind(self) -> str:
        return "CertifiedMaximal" if self.certified else "ProbablyDeficient"

    def __str__(self):
        if self.certified:
            return f"CertifiedMaximal(trial {self.trial})"
        return f"ProbablyDeficient({self.min_deficiency})"

    def to_dict(self) -> dict:
        return {"verdict": self.kind, "trial": self.trial,
                "min_deficiency": self.min_deficiency,
                "reports": [r.to_dict() for r in self.reports]}


def trial_seeds(seed, trials: int) -> list[int]:
    ss = np.random.SeedSequence(seed)
    return [int(c.generate_state(1, dtype=np.uint32)[0]) for c in ss.spawn(trials)]


def verify_general(components: Sequence[Component], d: int, trials: int = 5,
                   prime: int = DEFAULT_PRIME, seed=0, stop_early: bool = True) -> Verdict:
    """Try up to ``trials`` random placements and stop at the first maximal one."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    reports = []
    for t, s in enumerate(trial_seeds(seed, trials), start=1):
        rep = assemble_and_rank(components, d, prime, s)
        reports.append(rep)
        if rep.maximal and stop_early:
            return Verdict(True, t, 0, reports)
    best = min(r.deficiency for r in reports)
    for t, r in enumerate(reports, start=1):
        if r.maximal:
            return Verdict(True, t, 0, reports)
    return Verdict(False, None, best, reports)


# ----------------------------------------------------------------------
# initial ideals


def neglex_column_order(order: int, p: int = DEFAULT_PRIME) -> np.ndarray:
    """Monomial indices of ``k[x,y]/m^order`` from largest to smallest in the
    local lexicographic ordering: fewer ``x`` is larger, then fewer ``y``."""
    sp = jet_space(2, order, p)
    return np.lexsort((sp.exps[:, 1], sp.exps[:, 0]))


def _initial_staircase(gens, order: int) -> tuple[Staircase, int]:
    sp = jet_space(2, order, gens[0].space.prime)
    gens = [g.truncate(order) if g.space.order >= order else _lift(g, sp) for g in gens]
    S = ideal_span(gens, sp)
    std = S.standard_monomials(neglex_column_order(order, sp.prime))
    exps = sp.exps[std]
    stairs = []
    for j in range(order):
        row = exps[exps[:, 1] == j]
        if row.size == 0:
            break
        stairs.append(int(row[:, 0].max()) + 1)
    return Staircase(tuple(stairs)), len(std)


def _lift(g, sp):
    return sp.from_dict(g.terms())


def initial_ideal_neglex(gens, order: int) -> Staircase:
    """Staircase of the initial ideal of a finite-colength local ideal.

    Computed at ``order`` and ``order + 2``; a change between the two means
    the ideal does not contain ``m^order`` and raises ``ValueError``.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need generators")
    E1, n1 = _initial_staircase(gens, order)
    E2, n2 = _initial_staircase(gens, order + 2)
    if E1 != E2 or n1 != complement_size(E1):
        raise ValueError("complement not stable: the ideal has no finite colength below this order")
    return E1
