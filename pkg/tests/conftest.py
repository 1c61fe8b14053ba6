"""Shared helpers: random commuting-generator codes for property suites."""

import numpy as np
import pytest

from disjointness import PauliOperator, build_code, hermitian_canonical
from disjointness.codes import StabilizerCode
from disjointness.linalg import rank_mod


def random_stabilizer_code(rng: np.random.Generator, n: int, m: int,
                           num_gens: int) -> StabilizerCode | None:
    """A random [[n, n - num_gens]] code, or None when sampling stalls."""
    rows: list[np.ndarray] = []
    attempts = 0
    while len(rows) < num_gens and attempts < 400:
        attempts += 1
        v = rng.integers(0, m, 2 * n)
        if not v.any():
            continue
        ok = True
        for u in rows:
            lam = (int(u[n:] @ v[:n]) - int(u[:n] @ v[n:])) % m
            if lam:
                ok = False
                break
        if not ok:
            continue
        cand = np.array(rows + [v], dtype=np.int64)
        if rank_mod(cand, m) < len(rows) + 1:
            continue
        rows.append(v % m)
    if len(rows) < num_gens:
        return None
    gens = [
        hermitian_canonical(
            PauliOperator(m, tuple(int(e) for e in v[:n]), tuple(int(e) for e in v[n:]))
        )
        for v in rows
    ]
    return build_code(gens, m)


def sample_random_codes(seed: int, count: int, max_n: int = 5,
                        m_pool=(2, 2, 2, 3)) -> list[StabilizerCode]:
    rng = np.random.default_rng(seed)
    out: list[StabilizerCode] = []
    while len(out) < count:
        m = int(m_pool[rng.integers(len(m_pool))])
        n = int(rng.integers(2, max_n + 1))
        k = int(rng.integers(1, min(2, n - 1) + 1))
        code = random_stabilizer_code(rng, n, m, n - k)
        if code is not None:
            out.append(code)
    return out


@pytest.fixture(scope="session")
def small_random_codes():
    return sample_random_codes(seed=20250810, count=40)
