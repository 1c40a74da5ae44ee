"""Truncated power series (jets) and subspaces of jet spaces.

A :class:`JetSpace` is ``k[v_1..v_n] / m^M`` realised as the coefficient space
of monomials of total degree ``< M``.  Monomials are indexed in graded-lex
order: by total degree, then lexicographically descending in the exponent
vector (``1, x, y, x^2, xy, y^2, ...``).  This indexing is fixed for the
whole package, and a space of lower order is an index prefix of a space of
higher order with the same variables.

Ideals are handled as :class:`Subspace` objects: echelonized spans of
truncated elements.  Two ways of spanning an ideal are offered:

* ``local`` (default): span of the truncations of ``g*m`` for all monomials
  ``m``; this is ``(I + m^M) / m^M`` in the power series ring.
* ``global``: span of the products ``g*m`` whose full degree stays below
  ``M``; this is the Macaulay matrix of the polynomial ideal and is used to
  measure global (affine) colengths.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from . import linalg
from .field import DEFAULT_PRIME


class OrderBudgetError(ValueError):
    """A truncated computation would need terms beyond the available order."""


def _graded_lex_exponents(nvars: int, order: int) -> np.ndarray:
    out = []

    def rec(prefix, remaining, left):
        if left == 1:
            out.append(prefix + [remaining])
            return
        for a in range(remaining, -1, -1):
            rec(prefix + [a], remaining - a, left - 1)

    for n in range(order):
        rec([], n, nvars)
    return np.array(out, dtype=np.int64).reshape(-1, nvars)


def _index_formula(E: np.ndarray) -> np.ndarray:
    """Closed-form graded-lex index of exponent rows (1 to 3 variables)."""
    v = E.shape[1]
    n = E.sum(axis=1)
    if v == 1:
        return n
    if v == 2:
        return n * (n + 1) // 2 + E[:, 1]
    if v == 3:
        r = E[:, 1] + E[:, 2]
        return n * (n + 1) * (n + 2) // 6 + r * (r + 1) // 2 + E[:, 2]
    raise ValueError("jet spaces support 1 to 3 variables")


class JetSpace:
    """``k[vars]/m^order`` over GF(prime)."""

    def __init__(self, nvars: int, order: int, prime: int = DEFAULT_PRIME,
                 names: tuple[str, ...] | None = None):
        if not 1 <= nvars <= 3:
            raise ValueError("jet spaces support 1 to 3 variables")
        if order < 0:
            raise ValueError("order must be non-negative")
        self.nvars = nvars
        self.order = order
        self.prime = prime
        self.names = names or ("x", "y", "t")[:nvars]
        self.exps = _graded_lex_exponents(nvars, order)
        self.degs = self.exps.sum(axis=1) if self.exps.size else np.zeros(0, dtype=np.int64)
        self.dim = comb(order - 1 + nvars, nvars) if order > 0 else 0
        assert self.exps.shape[0] == self.dim
        self._shift_cache: dict[int, np.ndarray] = {}

    def __repr__(self):
        return f"JetSpace({'.'.join(self.names)}, order={self.order}, p={self.prime})"

    def __eq__(self, other):
        return (isinstance(other, JetSpace) and self.nvars == other.nvars
                and self.order == other.order and self.prime == other.prime)

    def __hash__(self):
        return hash((self.nvars, self.order, self.prime))

    # indexing ---------------------------------------------------------
    def index(self, exps) -> int:
        e = np.asarray(exps, dtype=np.int64).reshape(1, self.nvars)
        if e.sum() >= self.order:
            raise KeyError(f"monomial {tuple(exps)} beyond order {self.order}")
        return int(_index_formula(e)[0])

    def shift(self, i: int) -> np.ndarray:
        """Target index of ``mono_i * mono_j`` for every ``j`` (``-1`` if truncated)."""
        out = self._shift_cache.get(i)
        if out is None:
            E = self.exps + self.exps[i]
            out = np.where(E.sum(axis=1) < self.order, _index_formula(E), -1)
            self._shift_cache[i] = out
        return out

    # construction -----------------------------------------------------
    def zero(self) -> "Jet":
        return Jet(self, np.zeros(self.dim, dtype=np.int64))

    def const(self, c: int) -> "Jet":
        v = np.zeros(self.dim, dtype=np.int64)
        if self.dim:
            v[0] = c % self.prime
        return Jet(self, v)

    def monomial(self, exps, coeff: int = 1) -> "Jet":
        v = np.zeros(self.dim, dtype=np.int64)
        if sum(exps) < self.order:
            v[self.index(exps)] = coeff % self.prime
        return Jet(self, v)

    def var(self, i: int) -> "Jet":
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(e)

    def gens(self) -> tuple["Jet", ...]:
        return tuple(self.var(i) for i in range(self.nvars))

    def from_dict(self, terms: dict) -> "Jet":
        v = np.zeros(self.dim, dtype=np.int64)
        for e, c in terms.items():
            if sum(e) < self.order:
                i = self.index(e)
                v[i] = (v[i] + c) % self.prime
        return Jet(self, v)

    def from_vector(self, vec) -> "Jet":
        return Jet(self, np.asarray(vec, dtype=np.int64) % self.prime)

    def random(self, rng: np.random.Generator, min_order: int = 0, max_degree: int | None = None) -> "Jet":
        v = rng.integers(0, self.prime, size=self.dim, dtype=np.int64)
        mask = self.degs < min_order
        if max_degree is not None:
            mask |= self.degs > max_degree
        v[mask] = 0
        return Jet(self, v)

    def with_order(self, order: int) -> "JetSpace":
        return jet_space(self.nvars, order, self.prime)


@lru_cache(maxsize=None)
def jet_space(nvars: int, order: int, prime: int = DEFAULT_PRIME) -> JetSpace:
    return JetSpace(nvars, order, prime)


@dataclass(frozen=True, eq=False)
class Jet:
    """An element of a :class:`JetSpace`; arithmetic truncates at the order."""

    space: JetSpace
    coeffs: np.ndarray

    @property
    def p(self) -> int:
        return self.space.prime

    def _check(self, other: "Jet"):
        if self.space != other.space:
            raise ValueError(f"incompatible jet spaces {self.space} and {other.space}")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.space.const(other)
        self._check(other)
        return Jet(self.space, (self.coeffs + other.coeffs) % self.p)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.space, (-self.coeffs) % self.p)

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.space.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return Jet(self.space, self.coeffs * (int(other) % self.p) % self.p)
        return jet_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.space.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        return isinstance(other, Jet) and self.space == other.space and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.space, self.coeffs.tobytes()))

    def __repr__(self):
        terms = self.terms()
        if not terms:
            return "Jet(0)"
        parts = []
        for e, c in list(terms.items())[:8]:
            mono = "*".join(f"{n}^{k}" if k > 1 else n for n, k in zip(self.space.names, e) if k)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        more = " + ..." if len(terms) > 8 else ""
        return f"Jet({' + '.join(parts)}{more})"

    def terms(self) -> dict:
        nz = np.nonzero(self.coeffs)[0]
        return {tuple(int(a) for a in self.space.exps[i]): int(self.coeffs[i]) for i in nz}

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def ord(self) -> int:
        """Lowest degree of a nonzero term (``order`` of the space if zero)."""
        nz = np.nonzero(self.coeffs)[0]
        return int(self.space.degs[nz[0]]) if nz.size else self.space.order

    def degree(self) -> int:
        nz = np.nonzero(self.coeffs)[0]
        return int(self.space.degs[nz[-1]]) if nz.size else -1

    def coeff(self, exps) -> int:
        if sum(exps) >= self.space.order:
            return 0
        return int(self.coeffs[self.space.index(exps)])

    def truncate(self, order: int) -> "Jet":
        sp = self.space.with_order(order)
        if order <= self.space.order:
            return Jet(sp, self.coeffs[:sp.dim].copy())
        v = np.zeros(sp.dim, dtype=np.int64)
        v[:self.space.dim] = self.coeffs
        return Jet(sp, v)


def jet_mul(a: Jet, b: Jet) -> Jet:
    a._check(b)
    sp, p = a.space, a.p
    out = np.zeros(sp.dim, dtype=np.int64)
    bnz = b.coeffs != 0
    for i in np.nonzero(a.coeffs)[0]:
        tgt = sp.shift(int(i))
        ok = bnz & (tgt >= 0)
        if not ok.any():
            continue
        out[tgt[ok]] = (out[tgt[ok]] + int(a.coeffs[i]) * b.coeffs[ok]) % p
    return Jet(sp, out)


def jet_compose(F: Jet, subs: list[Jet] | tuple[Jet, ...], order: int | None = None) -> Jet:
    """``F(subs[0], subs[1], ...)`` truncated in the common space of ``subs``.

    ``F`` is read as a polynomial: all its terms are used, whatever their
    degree.  The substituted jets need not vanish at the origin when ``F``
    is a polynomial; the result is exact up to the target order.
    """
    if len(subs) != F.space.nvars:
        raise ValueError("need one substitution per variable of F")
    target = subs[0].space
    for s in subs:
        s._check(subs[0])
    if order is not None and order != target.order:
        target = target.with_order(order)
        subs = [s.truncate(order) for s in subs]
    powers: list[list[Jet]] = [[target.const(1)] for _ in subs]

    def pw(i, k):
        lst = powers[i]
        while len(lst) <= k:
            lst.append(lst[-1] * subs[i])
        return lst[k]

    out = np.zeros(target.dim, dtype=np.int64)
    p = target.prime
    for e, c in F.terms().items():
        term = pw(0, e[0])
        for i in range(1, len(e)):
            if e[i]:
                term = term * pw(i, e[i])
        out = (out + c * term.coeffs) % p
    return Jet(target, out)


def jet_partial(F: Jet, var: int) -> Jet:
    """Formal partial derivative, in the same space."""
    sp = F.space
    out = np.zeros(sp.dim, dtype=np.int64)
    for i in np.nonzero(F.coeffs)[0]:
        e = sp.exps[i].copy()
        k = int(e[var])
        if k == 0:
            continue
        e[var] -= 1
        j = sp.index(e)
        out[j] = (out[j] + k * int(F.coeffs[i])) % sp.prime
    return Jet(sp, out)


# ----------------------------------------------------------------------
# subspaces


class Subspace:
    """Echelonized subspace of a jet space (rows in reduced echelon form)."""

    def __init__(self, space: JetSpace, basis: np.ndarray, pivots: np.ndarray):
        self.space = space
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, space: JetSpace, rows) -> "Subspace":
        A = np.asarray(rows, dtype=np.int64)
        if A.size == 0:
            A = A.reshape(0, space.dim)
        if A.shape[1] != space.dim:
            raise ValueError("row length does not match the jet space")
        R, piv = linalg.rref(A, space.prime)
        return cls(space, R, piv)

    @classmethod
    def of_jets(cls, jets) -> "Subspace":
        jets = list(jets)
        if not jets:
            raise ValueError("need at least one jet (or use Subspace.span)")
        return cls.span(jets[0].space, np.array([j.coeffs for j in jets]))

    @classmethod
    def zero(cls, space: JetSpace) -> "Subspace":
        return cls.span(space, np.zeros((0, space.dim), dtype=np.int64))

    @classmethod
    def full(cls, space: JetSpace) -> "Subspace":
        return cls(space, np.eye(space.dim, dtype=np.int64), np.arange(space.dim, dtype=np.int64))

    @property
    def dim(self) -> int:
        return int(self.pivots.size)

    def quotient_dim(self) -> int:
        return self.space.dim - self.dim

    def reduce(self, rows) -> np.ndarray:
        return linalg.reduce_rows(rows, self.basis, self.pivots, self.space.prime)

    def contains(self, item) -> bool:
        vec = item.coeffs if isinstance(item, Jet) else np.asarray(item)
        return not self.reduce(vec).any()

    def __contains__(self, item):
        return self.contains(item)

    def issubset(self, other: "Subspace") -> bool:
        if self.space != other.space:
            raise ValueError("subspaces live in different jet spaces")
        return self.dim == 0 or not other.reduce(self.basis).any()

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.space == other.space
                and np.array_equal(self.pivots, other.pivots)
                and np.array_equal(self.basis, other.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, codim={self.quotient_dim()}, {self.space})"

    def jets(self) -> list[Jet]:
        return [Jet(self.space, row.copy()) for row in self.basis]

    def truncate(self, order: int) -> "Subspace":
        """Image under the projection to a lower order."""
        if order > self.space.order:
            raise OrderBudgetError("cannot truncate to a higher order")
        sp = self.space.with_order(order)
        return Subspace.span(sp, self.basis[:, :sp.dim])

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.space != other.space:
            raise ValueError("subspaces live in different jet spaces")
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.space)
        K = linalg.left_nullspace(np.vstack([self.basis, other.basis]), self.space.prime)
        rows = linalg.matmul(K[:, :self.dim], self.basis, self.space.prime) if K.size else K[:, :0]
        return Subspace.span(self.space, rows.reshape(-1, self.space.dim))

    def standard_monomials(self, column_order=None) -> np.ndarray:
        """Indices of monomials that are not leading terms.

        ``column_order`` lists monomial indices from largest to smallest in
        the monomial ordering used to pick leading terms; graded-lex index
        order by default.
        """
        if column_order is None:
            return np.setdiff1d(np.arange(self.space.dim), self.pivots)
        column_order = np.asarray(column_order)
        _, piv = linalg.rref(self.basis[:, column_order], self.space.prime)
        leading = column_order[piv]
        return np.setdiff1d(np.arange(self.space.dim), leading)


def add(S: Subspace, T: Subspace) -> Subspace:
    if S.space != T.space:
        raise ValueError("subspaces live in different jet spaces")
    return Subspace.span(S.space, np.vstack([S.basis, T.basis]))


def quotient_dim(S: Subspace) -> int:
    return S.quotient_dim()


def multiples_matrix(g: Jet, local: bool = True) -> np.ndarray:
    """Rows ``g*m`` for all monomials ``m`` of the space (see module doc)."""
    sp = g.space
    terms = np.nonzero(g.coeffs)[0]
    if terms.size == 0:
        return np.zeros((0, sp.dim), dtype=np.int64)
    low = int(sp.degs[terms[0]])
    high = int(sp.degs[terms[-1]])
    bound = sp.order - low if local else sp.order - high
    mons = np.nonzero(sp.degs < bound)[0]
    rows = np.zeros((mons.size, sp.dim), dtype=np.int64)
    r = np.arange(mons.size)
    for i in terms:
        tgt = sp.shift(int(i))[mons]
        ok = tgt >= 0
        rows[r[ok], tgt[ok]] = (rows[r[ok], tgt[ok]] + g.coeffs[i]) % sp.prime
    return rows


def multiplication_matrix(g: Jet) -> np.ndarray:
    """Square matrix of ``h -> g*h``: row ``i`` is ``g * mono_i`` truncated."""
    sp = g.space
    rows = np.zeros((sp.dim, sp.dim), dtype=np.int64)
    r = np.arange(sp.dim)
    for i in np.nonzero(g.coeffs)[0]:
        tgt = sp.shift(int(i))
        ok = tgt >= 0
        rows[r[ok], tgt[ok]] = (rows[r[ok], tgt[ok]] + g.coeffs[i]) % sp.prime
    return rows


def ideal_span(generators, space: JetSpace | None = None, local: bool = True) -> Subspace:
    """The ideal generated by ``generators``, truncated (see module doc)."""
    gens = list(generators)
    if space is None:
        if not gens:
            raise ValueError("empty generator list needs an explicit space")
        space = gens[0].space
    for g in gens:
        if g.space != space:
            raise ValueError(f"generator in {g.space}, expected {space}")
    if not gens:
        return Subspace.zero(space)
    return Subspace.span(space, np.vstack([multiples_matrix(g, local) for g in gens]))


def colon(S: Subspace, g: Jet, out_order: int) -> Subspace:
    """``{h : h*g in S}`` for ``h`` of order below ``out_order``.

    Exact for homogeneous data when ``out_order + deg(g) <= order(S)``;
    otherwise the budget is violated and :class:`OrderBudgetError` is raised.
    """
    sp = S.space
    if g.space != sp:
        raise ValueError("g must live in the ambient space of S")
    if out_order + max(g.degree(), 0) > sp.order:
        raise OrderBudgetError(
            f"colon needs order {out_order + g.degree()} but the subspace has {sp.order}")
    out = sp.with_order(out_order)
    mons = np.arange(out.dim)
    rows = np.zeros((out.dim, sp.dim), dtype=np.int64)
    for i in np.nonzero(g.coeffs)[0]:
        tgt = sp.shift(int(i))[mons]
        ok = tgt >= 0
        rows[mons[ok], tgt[ok]] = (rows[mons[ok], tgt[ok]] + g.coeffs[i]) % sp.prime
    nf = S.reduce(rows)
    K = linalg.left_nullspace(nf, sp.prime)
    return Subspace.span(out, K)


def projection_indices(space: JetSpace, var: int) -> np.ndarray:
    """Indices (in ``space``) of the monomials free of ``var``, in the graded-lex
    order of the space with ``var`` removed."""
    keep = np.nonzero(space.exps[:, var] == 0)[0]
    # dropping a variable preserves the graded-lex order of the survivors
    return keep


def drop_var(space: JetSpace, var: int) -> JetSpace:
    if space.nvars == 1:
        raise ValueError("cannot drop the only variable")
    return jet_space(space.nvars - 1, space.order, space.prime)


def set_var_zero(S: Subspace, var: int) -> Subspace:
    """Image of ``S`` under ``v_var -> 0`` in the space without that variable."""
    keep = projection_indices(S.space, var)
    target = drop_var(S.space, var)
    return Subspace.span(target, S.basis[:, keep])


def jet_set_var_zero(F: Jet, var: int) -> Jet:
    keep = projection_indices(F.space, var)
    return Jet(drop_var(F.space, var), F.coeffs[keep].copy())


def embed(F: Jet, space: JetSpace, positions: tuple[int, ...]) -> Jet:
    """Map a jet into a space with more variables; ``positions[i]`` is the
    target variable of source variable ``i``."""
    out = np.zeros(space.dim, dtype=np.int64)
    for i in np.nonzero(F.coeffs)[0]:
        e = [0] * space.nvars
        for src, dst in enumerate(positions):
            e[dst] = int(F.space.exps[i][src])
        if sum(e) < space.order:
            out[space.index(e)] = F.coeffs[i]
    return Jet(space, out)
