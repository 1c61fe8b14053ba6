"""Exact linear algebra over the prime field Z_m.

All matrices are small (a few hundred rows/columns at most), so plain
numpy int64 arrays with mod-m reduction are both exact and fast enough.
Pivoting is always lowest-index first, which keeps every derived basis
deterministic.
"""

from __future__ import annotations

import numpy as np

from .errors import CompositeDimensionError


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def require_prime(m: int) -> None:
    if not is_prime(m):
        raise CompositeDimensionError(
            f"qudit dimension must be prime, got {m}; composite dimensions are unsupported"
        )


def inv_mod(a: int, m: int) -> int:
    """Multiplicative inverse of a modulo prime m."""
    return pow(int(a) % m, -1, m)


def rref_mod(a: np.ndarray, m: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over Z_m.

    Returns (rref, pivot_columns).  The input is not modified.
    """
    r = np.array(a, dtype=np.int64) % m
    rows, cols = r.shape
    pivots: list[int] = []
    pr = 0
    for c in range(cols):
        piv = None
        for i in range(pr, rows):
            if r[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != pr:
            r[[pr, piv]] = r[[piv, pr]]
        r[pr] = (r[pr] * inv_mod(int(r[pr, c]), m)) % m
        nz = np.nonzero(r[:, c])[0]
        for i in nz:
            if i != pr:
                r[i] = (r[i] - r[i, c] * r[pr]) % m
        pivots.append(c)
        pr += 1
        if pr == rows:
            break
    return r, pivots


def rank_mod(a: np.ndarray, m: int) -> int:
    return len(rref_mod(a, m)[1])


def nullspace_mod(a: np.ndarray, m: int) -> np.ndarray:
    """Basis (as rows) of {v : a @ v = 0 mod m}, ordered by free column."""
    r, pivots = rref_mod(a, m)
    cols = r.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for bi, f in enumerate(free):
        basis[bi, f] = 1
        for pr, pc in enumerate(pivots):
            basis[bi, pc] = (-r[pr, f]) % m
    return basis


def solve_mod(a: np.ndarray, b: np.ndarray, m: int) -> np.ndarray | None:
    """One solution of a @ x = b mod m with all free variables zero, or None."""
    a = np.array(a, dtype=np.int64) % m
    b = np.array(b, dtype=np.int64) % m
    rows, cols = a.shape
    aug = np.hstack([a, b.reshape(rows, 1)])
    r, pivots = rref_mod(aug, m)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for pr, pc in enumerate(pivots):
        x[pc] = r[pr, cols]
    return x
