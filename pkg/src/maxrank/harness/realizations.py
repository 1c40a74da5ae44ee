"""Collections of ``A_k`` schemes and simple points with prescribed ``(N, ell)``.

A tacnode ``A_{2k-1}`` contributes ``(3k, 2k)``, a cusp ``A_{2k-2}``
contributes ``(3k-1, 2k-1)`` and a simple point ``(1, 1)``.  Writing
``K = N - ell``, a collection with ``c`` cusps has ``sum k_i = K`` and
``ell - 2K + c`` simple points, so ``max(0, 2K - ell) <= c <= K // 2``.
"""

from __future__ import annotations

import numpy as np

from ..schemes import Component, Cusp, SimplePoint, Tacnode


def cusp_range(N: int, ell: int) -> range:
    K = N - ell
    return range(max(0, 2 * K - ell), K // 2 + 1)


def _check(N: int, ell: int):
    if not 0 <= ell <= N:
        raise ValueError(f"need 0 <= ell <= N, got ({N}, {ell})")
    if 5 * ell < 3 * N:
        raise ValueError(f"(N, ell) = ({N}, {ell}) violates 5*ell >= 3*N")
    if not len(cusp_range(N, ell)):
        raise ValueError(f"(N, ell) = ({N}, {ell}) has no realization by A_k schemes and points")


def invariants(components) -> tuple[int, int]:
    return sum(c.N for c in components), sum(c.ell for c in components)


def random_realization(N: int, ell: int, rng: np.random.Generator) -> list[Component]:
    """A random collection with invariants ``(N, ell)``.

    The number of cusps is drawn uniformly from its admissible range, then
    the remaining units of ``K`` are scattered over cusps and tacnodes.
    """
    _check(N, ell)
    K = N - ell
    c = int(rng.choice(list(cusp_range(N, ell))))
    rest = K - 2 * c
    n_tac = int(rng.integers(0 if c else min(1, rest), rest + 1))
    ks = [2] * c + [1] * n_tac
    for _ in range(rest - n_tac):
        ks[int(rng.integers(0, len(ks)))] += 1
    comps: list[Component] = [Cusp(k) for k in ks[:c]] + [Tacnode(k) for k in ks[c:]]
    comps += [SimplePoint()] * (ell - 2 * K + c)
    comps.sort(key=str)
    assert invariants(comps) == (N, ell)
    return comps


def extremal_realization(N: int, ell: int) -> list[Component]:
    """The collection with the most ordinary cusps, the rest in one component."""
    _check(N, ell)
    K = N - ell
    c = max(cusp_range(N, ell))
    rest = K - 2 * c
    comps: list[Component] = [Cusp(2)] * c
    if rest:
        comps.append(Tacnode(rest))
    comps += [SimplePoint()] * (ell - 2 * K + c)
    assert invariants(comps) == (N, ell)
    return comps


def _partitions(n: int, parts: int | None, least: int, most: int | None = None):
    """Weakly decreasing tuples of integers ``>= least`` summing to ``n``;
    exactly ``parts`` of them when given."""
    most = n if most is None else most
    if n == 0:
        if parts in (None, 0):
            yield ()
        return
    if parts == 0:
        return
    for first in range(min(n, most), least - 1, -1):
        rest = None if parts is None else parts - 1
        for tail in _partitions(n - first, rest, least, first):
            yield (first,) + tail


def enumerate_realizations(N: int, ell: int) -> list[list[Component]]:
    """Every collection of ``A_k`` schemes and simple points with invariants ``(N, ell)``."""
    _check(N, ell)
    K = N - ell
    out = []
    for c in cusp_range(N, ell):
        for kc in range(2 * c, K + 1):
            for cusps in _partitions(kc, c, 2):
                for tacs in _partitions(K - kc, None, 1):
                    comps: list[Component] = [Cusp(k) for k in cusps] + [Tacnode(k) for k in tacs]
                    comps += [SimplePoint()] * (ell - 2 * K + c)
                    out.append(comps)
    return out
