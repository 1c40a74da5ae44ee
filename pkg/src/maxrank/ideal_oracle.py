"""Brute-force checks of the local algebra behind the specializations.

Everything is computed on truncated jet spaces with the primitives of
:mod:`maxrank.exact`, independently of the closed forms in
:mod:`maxrank.staircase`.  The ideals ``I_E = (x^e1 (x+y+t)^e2)`` are
homogeneous in ``(x, y, t)``, so truncation commutes with sums, colons and
substitutions degree by degree; every dimension is nevertheless recomputed
at a second order and compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exact import linalg
from .exact.field import DEFAULT_PRIME
from .exact.jets import (Jet, JetSpace, OrderBudgetError, Subspace, add, colon,
                         ideal_span, jet_compose, jet_set_var_zero, jet_space, set_var_zero)
from .schemes import HmesComponent, hmes_functionals, initial_ideal_neglex
from .staircase import (Staircase, complement_size, espbloc_step, heights, m0,
                        make_staircase, min_generators, scheme_length, sigma)


class HypothesisViolation(ValueError):
    """Raised when the input does not meet the hypotheses of a check."""

    def __init__(self, failures):
        if isinstance(failures, str):
            failures = [failures]
        self.failures = list(failures)
        super().__init__("; ".join(self.failures))


class StabilityError(RuntimeError):
    """A dimension changed between two truncation orders."""


# ----------------------------------------------------------------------
# I_E and its truncations


def flatstairs_hypothesis(E: Staircase) -> list[str]:
    """Failures of ``ell_hat(i) >= 2`` for ``i < h(0) - 1``."""
    E = make_staircase(E)
    return [f"ell_hat({i}) = {E.ell_hat(i)} < 2" for i in range(E.height - 1) if E.ell_hat(i) < 2]


def _require_flatstairs(E: Staircase):
    fails = flatstairs_hypothesis(E)
    if fails:
        raise HypothesisViolation(fails)


def ie_generators(E: Staircase, space: JetSpace, with_t: bool = True) -> list[Jet]:
    """``x^e1 f^e2`` over the minimal generators, ``f = x + y (+ t)``."""
    x, y = space.var(0), space.var(1)
    f = x + y + space.var(2) if with_t else x + y
    return [x ** e1 * f ** e2 for e1, e2 in min_generators(E)]


def ie_span(E: Staircase, order: int, prime: int = DEFAULT_PRIME, with_t: bool = True) -> Subspace:
    sp = jet_space(3 if with_t else 2, order, prime)
    return ideal_span(ie_generators(E, sp, with_t), sp)


def default_order(E: Staircase, p: int = 1) -> int:
    """Smallest order at which every computation on ``I_E`` is exact, plus slack."""
    E = make_staircase(E)
    top = max((E.ell(j) + j for j in range(E.height)), default=0)
    return max(top, E.h(p - 1) + p) + 2


def _stable(fn, order: int, *args):
    a = fn(order, *args)
    b = fn(order + 2, *args)
    if a != b:
        raise StabilityError(f"value changed from {a} to {b} between orders {order} and {order + 2}")
    return a


# ----------------------------------------------------------------------
# trace and residual


def trace_subspace(E: Staircase, p: int, order: int, prime: int = DEFAULT_PRIME) -> Subspace:
    """``((I_t + (y)) : t^(p-1))_0 / (y)`` inside ``k[x]/x^(order-p+1)``."""
    sp = jet_space(3, order, prime)
    S = ideal_span(ie_generators(E, sp) + [sp.var(1)], sp)
    C = colon(S, sp.var(2) ** (p - 1), order - p + 1)
    return set_var_zero(set_var_zero(C, 2), 1)


def residual_subspace(E: Staircase, p: int, order: int, prime: int = DEFAULT_PRIME) -> Subspace:
    """``((I_t + (t^p)) : y)_0`` inside ``k[x,y]/m^(order-1)``."""
    sp = jet_space(3, order, prime)
    S = ideal_span(ie_generators(E, sp) + [sp.var(2) ** p], sp)
    return set_var_zero(colon(S, sp.var(1), order - 1), 2)


def trace_dim(E: Staircase, p: int, M: int | None = None, prime: int = DEFAULT_PRIME) -> int:
    """Colength of the ``p``-trace of ``I_E`` with respect to ``y``."""
    E = make_staircase(E)
    if p < 1:
        raise ValueError("p must be positive")
    _require_flatstairs(E)
    M = default_order(E, p) if M is None else M

    def colength(order):
        T = trace_subspace(E, p, order, prime)
        n = T.quotient_dim()
        if n >= T.space.order:
            raise OrderBudgetError(f"trace not visible below order {T.space.order}")
        return n

    return _stable(colength, M)


def flatstairs_data(E: Staircase, p: int, M: int | None = None, prime: int = DEFAULT_PRIME) -> dict:
    """Residual, trace and their colengths for the ``p``-th slice of ``I_E``."""
    E = make_staircase(E)
    if not 1 <= p <= E.ell(0):
        raise HypothesisViolation(f"p={p} outside 1..{E.ell(0)}")
    _require_flatstairs(E)
    M = default_order(E, p) if M is None else M
    Es = sigma(E, p)

    def compare(order):
        R = residual_subspace(E, p, order, prime)
        target = ideal_span(ie_generators(Es, R.space, with_t=False), R.space) if Es.height \
            else Subspace.full(R.space)
        return R == target, R.quotient_dim()

    same, colen = _stable(compare, M)
    tr = trace_dim(E, p, M, prime)
    return {"residual_is_sigma": same, "residual_colength": colen,
            "sigma_colength": complement_size(Es), "trace": tr, "trace_expected": E.h(p - 1),
            "conservation": complement_size(E) == tr + colen}


def verify_flatstairs(E: Staircase, p: int, M: int | None = None, prime: int = DEFAULT_PRIME) -> bool:
    """Residual equals ``I_sigma(E,p)`` at ``t=0`` and the trace has colength ``h(p-1)``."""
    r = flatstairs_data(E, p, M, prime)
    return (r["residual_is_sigma"] and r["residual_colength"] == r["sigma_colength"]
            and r["trace"] == r["trace_expected"] and r["conservation"])


def verify_t_flat(E: Staircase, M: int | None = None, prime: int = DEFAULT_PRIME) -> bool:
    """``t`` is a non-zero-divisor mod ``I_t``: ``(I_t : t) = I_t``."""
    E = make_staircase(E)
    M = default_order(E) if M is None else M

    def check(order):
        S = ie_span(E, order, prime)
        return colon(S, S.space.var(2), order - 1) == S.truncate(order - 1)

    return _stable(check, M)


def fiber_lengths_constant(E: Staircase, t_values: Sequence[int], M: int | None = None,
                           prime: int = DEFAULT_PRIME) -> bool:
    """Affine colength of ``(x^e1 (x+y+c)^e2)`` is ``#complement(E)`` for every ``c``."""
    E = make_staircase(E)
    _require_flatstairs(E)
    M = default_order(E) if M is None else M
    target = complement_size(E)
    for c in t_values:
        def colength(order, c=c):
            sp = jet_space(2, order, prime)
            x, y = sp.gens()
            f = x + y + sp.const(c)
            gens = [x ** e1 * f ** e2 for e1, e2 in min_generators(E)]
            return ideal_span(gens, sp, local=False).quotient_dim()
        if _stable(colength, M) != target:
            return False
    return True


# ----------------------------------------------------------------------
# finite determinacy


def _power_ideal(f: Jet, g: Jet, n: int) -> Subspace:
    sp = f.space
    if n <= 0:
        return Subspace.full(sp)
    return ideal_span([f ** i * g ** (n - i) for i in range(n + 1)], sp)


def i_efg(E: Staircase, f: Jet, g: Jet) -> Subspace:
    """``I_(E,f,g) = (g^e1 f^e2)``."""
    return ideal_span([g ** e1 * f ** e2 for e1, e2 in min_generators(E)], f.space)


def finideterm_failures(E, alpha, beta, f, g, f2, g2) -> list[str]:
    E = make_staircase(E)
    fails = []
    if ideal_span([f, g]) != ideal_span([f2, g2]):
        fails.append("(f, g) != (f', g')")
    if not _power_ideal(f, g, alpha).contains(f - f2):
        fails.append(f"f - f' not in (f, g)^{alpha}")
    if not _power_ideal(f, g, beta).contains(g - g2):
        fails.append(f"g - g' not in (f, g)^{beta}")
    for i in range(E.height):
        if E.ell_hat(i) > alpha:
            fails.append(f"ell_hat({i}) = {E.ell_hat(i)} > alpha = {alpha}")
    for i in range(E.ell(0)):
        if E.h_hat(i) > beta:
            fails.append(f"h_hat({i}) = {E.h_hat(i)} > beta = {beta}")
    return fails


def verify_finideterm(E: Staircase, alpha: int, beta: int, f: Jet, g: Jet, f2: Jet, g2: Jet,
                      M: int | None = None) -> bool:
    """``I_(E,f,g) = I_(E,f',g')`` under the determinacy hypotheses.

    The jets may live in any 2-variable space; they are re-read as
    polynomials at the working orders.
    """
    E = make_staircase(E)
    prime = f.space.prime
    M = default_order(E) + 1 if M is None else M

    def at(order):
        sp = jet_space(2, order, prime)
        return [sp.from_dict(j.terms()) for j in (f, g, f2, g2)]

    fails = finideterm_failures(E, alpha, beta, *at(M))
    if fails:
        raise HypothesisViolation(fails)

    def compare(order):
        a, b, a2, b2 = at(order)
        return i_efg(E, a, b) == i_efg(E, a2, b2)

    return _stable(compare, M)


# ----------------------------------------------------------------------
# codimension formula


def _psi(rng: np.random.Generator, s: int, length: int, p: int) -> list[int]:
    """Coefficients of ``psi = c_s x^s + ...`` with ``c_s != 0`` (entry ``i`` is ``x^(i+1)``)."""
    c = [int(v) for v in rng.integers(0, p, size=length)]
    c[:s - 1] = [0] * (s - 1)
    c[s - 1] = int(rng.integers(1, p))
    return c


def _hmes_order(m: int, E: Staircase) -> int:
    return m + max((E.ell(j) + j for j in range(E.height)), default=0)


def verify_codimform(E: Staircase, s: int, m: int, M: int | None = None,
                     prime: int = DEFAULT_PRIME, seed=0) -> bool:
    """The local conditions of a random member of ``H_{m,E,s}`` are independent."""
    E = make_staircase(E)
    if E.height and m < m0(E, s) - 1:
        raise HypothesisViolation(f"m={m} < m0-1={m0(E, s) - 1}")
    h = HmesComponent(m, E, s)
    M = _hmes_order(m, E) if M is None else M
    psi = _psi(np.random.default_rng(seed), s, M + 3, prime)

    def rk(order):
        return linalg.rank(hmes_functionals(h, psi, order, prime), prime)

    return _stable(rk, M) == scheme_length(m, E)


# ----------------------------------------------------------------------
# flat limits of the block specialization


def _interpolate(samples: list[np.ndarray], points: Sequence[int], p: int) -> list[np.ndarray]:
    """Coefficient arrays of the polynomial (in ``t``) through ``(points[k], samples[k])``."""
    n = len(points)
    V = np.array([[pow(int(a), k, p) for k in range(n)] for a in points], dtype=np.int64)
    aug = np.hstack([V, np.eye(n, dtype=np.int64)])
    R, piv = linalg.rref(aug, p, ncols_pivot=n)
    if piv.size != n:
        raise ValueError("interpolation points must be distinct")
    Vinv = R[:, n:]
    stack = np.stack([s.reshape(-1) for s in samples])
    coeffs = linalg.matmul(Vinv, stack, p)
    return [c.reshape(samples[0].shape) for c in coeffs]


def row_space_limit(coeffs: list[np.ndarray], p: int, budget: int = 10_000) -> np.ndarray:
    """Limit at ``t = 0`` of the row space of ``sum_q coeffs[q] t^q``.

    The rows must be independent over ``k(t)``.  A row is replaced by
    ``(c . L(t)) / t`` whenever ``c . L(0) = 0``; the span over ``k(t)`` is
    unchanged and the loop stops once ``L(0)`` has full rank.
    """
    L = [c.copy() % p for c in coeffs]
    r = L[0].shape[0]
    for _ in range(budget):
        K = linalg.left_nullspace(L[0], p)
        if K.shape[0] == 0:
            return L[0]
        c = K[0]
        i = int(np.nonzero(c)[0][0])
        shifted = [linalg.matmul(c.reshape(1, -1), Lq, p)[0] for Lq in L[1:]]
        if not any(v.any() for v in shifted):
            raise ValueError("rows are dependent over k(t)")
        for q in range(len(L)):
            L[q][i] = shifted[q] if q < len(shifted) else 0
    raise OrderBudgetError(f"row saturation did not finish within {budget} steps (r={r})")


@dataclass
class EspblocOutcome:
    branch: int
    target: tuple
    rows_match: bool
    length_match: bool
    limit_staircase: Staircase | None
    notes: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.rows_match and self.length_match and (
            self.limit_staircase is None or self.limit_staircase == self.target[1])


def _limit_rows(E: Staircase, s: int, psi: list[int], order: int, p: int) -> np.ndarray:
    fam = HmesComponent(2 * s, E, s)
    D = order + 1
    points = list(range(1, D + 2))
    samples = []
    for t in points:
        psi_t = list(psi)
        psi_t[s - 1] = (psi_t[s - 1] + t) % p
        samples.append(hmes_functionals(fam, psi_t, order, p))
    coeffs = _interpolate(samples, points, p)
    if linalg.rank(samples[0], p) != samples[0].shape[0]:
        raise ValueError("family rows are dependent at t = 1")
    return row_space_limit(coeffs, p)


def pullback_staircase(rows: np.ndarray, m: int, psi: list[int], order: int, p: int) -> Staircase:
    """Staircase of the ideal at the infinitely near point defined by the kernel of ``rows``.

    Each kernel element ``F`` (order ``>= m``) becomes ``F(xb*yb, yb) / yb^m``,
    rewritten in the coordinates ``(xb, w)`` with ``w = yb + psi(xb)``.
    """
    sp = jet_space(2, order, p)
    K = linalg.nullspace(rows, p)
    big = jet_space(2, 2 * order + 2, p)
    xb, w = big.gens()
    psi_poly = big.from_dict({(i + 1, 0): c for i, c in enumerate(psi) if i + 1 < big.order})
    yb = w - psi_poly
    polys = [dict() for _ in range(K.shape[0])]
    for r in range(K.shape[0]):
        for idx in np.nonzero(K[r])[0]:
            a, b = (int(v) for v in sp.exps[idx])
            if a + b < m:
                raise ValueError("kernel element below the base multiplicity")
            polys[r][(a, a + b - m)] = int(K[r, idx])
    for a in range(order + 1):
        polys.append({(a, order - m): 1})
    two = jet_space(2, 2 * order + 2, p)
    gens = [jet_compose(two.from_dict(P), [xb, yb]) for P in polys]
    return initial_ideal_neglex(gens, 2 * order)


def verify_espbloc_limit(E: Staircase, s: int, M: int | None = None, prime: int = DEFAULT_PRIME,
                         seed=0, read_staircase: bool = True) -> EspblocOutcome:
    """Flat limit of ``H_{2s,E,s}`` along ``f_t = f + t xb^s`` is the predicted ``H_{2s+i,E_i,s+1}``."""
    E = make_staircase(E)
    try:
        step = espbloc_step(E, s)
    except ValueError as exc:
        raise HypothesisViolation(str(exc)) from None
    target = HmesComponent(step.m, step.E, step.s)
    base = max(_hmes_order(2 * s, E), _hmes_order(step.m, step.E))
    M = base if M is None else M
    rng = np.random.default_rng(seed)
    psi = _psi(rng, s + 1, M + 4, prime)

    def compare(order):
        lim = Subspace.span(jet_space(2, order, prime), _limit_rows(E, s, psi, order, prime))
        tgt = Subspace.span(jet_space(2, order, prime), hmes_functionals(target, psi, order, prime))
        return lim == tgt

    rows_match = _stable(compare, M)
    length_match = scheme_length(2 * s, E) == scheme_length(step.m, step.E)
    stair = None
    if read_staircase:
        lim = _limit_rows(E, s, psi, M, prime)
        stair = pullback_staircase(lim, step.m, psi, M, prime)
    return EspblocOutcome(step.branch, (step.m, step.E, step.s), rows_match, length_match, stair)


# ----------------------------------------------------------------------
# differential Horace inclusion


class InstanceSkipped(HypothesisViolation):
    """The injectivity hypothesis fails for this instance."""


@dataclass
class HoraceOutcome:
    kernel_dim: int
    ok: bool

    def __bool__(self):
        return self.ok


def verify_diff_horace(E: Staircase, p: int, V_generators: Sequence[Jet], T: int | None = None,
                       M: int | None = None, require_injective: bool = True) -> HoraceOutcome:
    """``(Ker phi_t)_0 ⊂ y Ker phi_check_p`` on ``V ⊗ k[t]_{<=T}``.

    ``V_generators`` are polynomials in ``(x, y)``.  The kernel
    ``(V ⊗ k[t]_{<=T}) ∩ I_t`` is enumerated exactly: ``I_t`` is
    homogeneous, so membership of a polynomial of degree below the working
    order is decided by its truncation.  ``require_injective=False`` skips the
    hypothesis check (negative controls only).
    """
    E = make_staircase(E)
    _require_flatstairs(E)
    T = p + 2 if T is None else T
    V = [g for g in V_generators if not g.is_zero()]
    if not V:
        return HoraceOutcome(0, True)
    prime = V[0].space.prime
    D = max(g.degree() for g in V) + 1
    M = max(D + T + 1, default_order(E, p)) if M is None else M
    if M <= D + T:
        raise OrderBudgetError(f"order {M} too small for degree {D - 1} jets with t-degree {T}")

    # injectivity of phi_p: images in k[x] are independent modulo x^tau
    tau = trace_dim(E, p, prime=prime)
    line = jet_space(1, max(D, tau) + 1, prime)
    img = np.array([line.from_dict({(a,): c for (a, b), c in g.terms().items() if b == 0}).coeffs
                    for g in V], dtype=np.int64)
    if require_injective and linalg.rank(img, prime) != linalg.rank(img[:, :tau], prime):
        raise InstanceSkipped("phi_p is not injective on V / (V ∩ (y))")

    sp = jet_space(3, M, prime)
    S = ideal_span(ie_generators(E, sp), sp)
    tvar = sp.var(2)
    lifted = [sp.from_dict({(a, b, 0): c for (a, b), c in g.terms().items()}) for g in V]
    cols = []
    for j in range(T + 1):
        tj = tvar ** j
        for g in lifted:
            cols.append((g * tj).coeffs)
    A = np.array(cols, dtype=np.int64)
    K = linalg.left_nullspace(S.reduce(A), prime)
    if K.shape[0] == 0:
        return HoraceOutcome(0, True)

    res = residual_subspace(E, p, M, prime)
    flat = jet_space(2, M - 1, prime)
    n = len(V)

    def combine(c):
        terms: dict = {}
        for ci, g in zip(c, V):
            if ci:
                for e, v in g.terms().items():
                    terms[e] = (terms.get(e, 0) + int(ci) * v) % prime
        return {e: v for e, v in terms.items() if v}

    ok = True
    for row in K:
        # f_t lies in (y, t^p): F_0, ..., F_{p-1} must be divisible by y
        parts = [combine(row[j * n:(j + 1) * n]) for j in range(min(p, T + 1))]
        if any(b == 0 for F in parts for (a, b) in F):
            ok = False
            break
        quotient = flat.from_dict({(a, b - 1): v for (a, b), v in parts[0].items()})
        if not res.contains(quotient):
            ok = False
            break
    return HoraceOutcome(int(K.shape[0]), ok)


def horace_instance(E: Staircase, p: int, rng: np.random.Generator, degree: int | None = None,
                    n_free: int | None = None, prime: int = DEFAULT_PRIME) -> list[Jet]:
    """A random space ``V`` meant to satisfy the injectivity hypothesis.

    ``V`` is spanned by random combinations of ``y`` times the monomials of
    degree below ``degree - 1`` together with ``n_free`` unrestricted random
    jets (at most the trace colength, so that ``phi_p`` can be injective).
    No kernel element is planted; the kernel comes from dimension count.
    """
    E = make_staircase(E)
    degree = default_order(E, p) if degree is None else degree
    tau = E.h(p - 1)
    n_free = int(rng.integers(0, tau + 1)) if n_free is None else n_free
    flat = jet_space(2, degree, prime)
    small = jet_space(2, degree - 1, prime)
    y = flat.var(1)
    mult = [y * flat.monomial(tuple(int(v) for v in e)) for e in small.exps]
    A = np.array([g.coeffs for g in mult], dtype=np.int64)
    mix = rng.integers(0, prime, size=(len(mult), len(mult)), dtype=np.int64)
    parts = [flat.from_vector(v) for v in linalg.matmul(mix, A, prime)]
    for _ in range(n_free):
        parts.append(flat.random(rng, max_degree=degree - 1))
    return parts
