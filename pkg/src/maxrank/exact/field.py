"""Prime field helpers.

Residues are plain Python ints or numpy ``int64`` arrays with entries in
``[0, p)``.  Every prime used here is below 2**31 so that a product of two
residues fits in a signed 64-bit integer.
"""

from __future__ import annotations

import numpy as np

DEFAULT_PRIME = 2**31 - 1
MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int, bound: int = 0) -> int:
    """Validate a working prime; ``bound`` is the largest degree or contact
    order the caller will differentiate against."""
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p >= MAX_PRIME:
        raise ValueError(f"prime {p} too large, need p < 2**31")
    if p <= bound:
        raise ValueError(f"prime {p} must exceed the degree/contact bound {bound}")
    return p


def inv(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of 0 mod p")
    return pow(a, -1, p)


def binomial_table(n: int, p: int) -> np.ndarray:
    """Pascal triangle mod p, shape (n+1, n+1)."""
    table = np.zeros((n + 1, n + 1), dtype=np.int64)
    for i in range(n + 1):
        table[i, 0] = 1
        for j in range(1, i + 1):
            table[i, j] = (table[i - 1, j - 1] + table[i - 1, j]) % p
    return table


def random_nonzero(rng: np.random.Generator, p: int, size=None):
    return rng.integers(1, p, size=size, dtype=np.int64)


def random_residue(rng: np.random.Generator, p: int, size=None):
    return rng.integers(0, p, size=size, dtype=np.int64)
