"""Dense exact linear algebra over GF(p).

All matrices are numpy ``int64`` arrays with entries in ``[0, p)``.  The
elimination kernels are compiled with numba; they skip zero entries, which
makes the block-structured matrices produced by homogeneous ideals cheap.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _inv_mod(a, p):
    t, new_t = 0, 1
    r, new_r = p, a % p
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    if t < 0:
        t += p
    return t


@njit(cache=True)
def _rref_kernel(A, p, ncols_pivot):
    m, n = A.shape
    pivots = np.empty(min(m, n), dtype=np.int64)
    nz = np.empty(n, dtype=np.int64)
    r = 0
    for c in range(ncols_pivot):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        a = A[r, c]
        if a != 1:
            ainv = _inv_mod(a, p)
            for j in range(c, n):
                if A[r, j] != 0:
                    A[r, j] = A[r, j] * ainv % p
        k = 0
        for j in range(c, n):
            if A[r, j] != 0:
                nz[k] = j
                k += 1
        for i in range(m):
            if i == r:
                continue
            f = A[i, c]
            if f == 0:
                continue
            for q in range(k):
                j = nz[q]
                A[i, j] = (A[i, j] - f * A[r, j]) % p
        pivots[r] = c
        r += 1
    return r, pivots[:r].copy()


@njit(cache=True)
def _reduce_kernel(V, R, pivots, p):
    # R is in reduced row echelon form with the given pivot columns
    m = V.shape[0]
    k = R.shape[0]
    n = R.shape[1]
    for i in range(m):
        for q in range(k):
            c = V[i, pivots[q]]
            if c == 0:
                continue
            for j in range(n):
                rv = R[q, j]
                if rv != 0:
                    V[i, j] = (V[i, j] - c * rv) % p


@njit(cache=True)
def _matmul_kernel(A, B, p):
    m, k = A.shape
    n = B.shape[1]
    C = np.zeros((m, n), dtype=np.int64)
    for i in range(m):
        for q in range(k):
            a = A[i, q]
            if a == 0:
                continue
            for j in range(n):
                b = B[q, j]
                if b != 0:
                    C[i, j] = (C[i, j] + a * b) % p
    return C


def rref(A: np.ndarray, p: int, ncols_pivot: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form; returns ``(R, pivots)`` with zero rows dropped.

    ``ncols_pivot`` restricts pivot search to the leading columns, which is
    how augmented systems are solved.
    """
    A = np.array(A, dtype=np.int64, copy=True) % p
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    if ncols_pivot is None:
        ncols_pivot = A.shape[1]
    if A.shape[0] == 0 or A.shape[1] == 0:
        return A[:0].copy(), np.zeros(0, dtype=np.int64)
    r, piv = _rref_kernel(A, np.int64(p), np.int64(ncols_pivot))
    return A[:r].copy(), piv


def rank(A, p: int) -> int:
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    return int(rref(A, p)[1].size)


def reduce_rows(V: np.ndarray, R: np.ndarray, pivots: np.ndarray, p: int) -> np.ndarray:
    """Normal forms of the rows of ``V`` modulo the row space of ``R`` (in rref)."""
    V = np.array(V, dtype=np.int64, copy=True) % p
    if V.ndim == 1:
        V = V.reshape(1, -1)
    if R.shape[0] and V.shape[0]:
        _reduce_kernel(V, R, pivots, np.int64(p))
    return V


def matmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    return _matmul_kernel(np.ascontiguousarray(A), np.ascontiguousarray(B), np.int64(p))


def nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of ``{v : A v = 0}``."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    R, piv = rref(A, p) if A.shape[0] else (A[:0], np.zeros(0, dtype=np.int64))
    free = np.setdiff1d(np.arange(n), piv)
    N = np.zeros((free.size, n), dtype=np.int64)
    for idx, f in enumerate(free):
        N[idx, f] = 1
        if piv.size:
            N[idx, piv] = (-R[:, f]) % p
    return N


def left_nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of ``{c : c A = 0}``."""
    return nullspace(np.asarray(A, dtype=np.int64).T, p)
