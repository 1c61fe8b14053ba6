"""Stabilizer codes, logical coset structure, and multi-codeblock fusion.

A code is held as its generator list plus a symplectic basis of logical
operators (either validated user input or derived by symplectic
Gram-Schmidt).  Codes, partitions and logical class labels are immutable.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import linalg
from .errors import (
    BudgetExceededError,
    CodeConstructionError,
    CodeFileError,
    DimensionMismatchError,
)
from .pauli import PauliOperator, multiply, pauli_from_string, symplectic_product
from .partition import Partition, parse_partition_text

DEFAULT_BUDGET = 2**16


class _Verdict(enum.Enum):
    TRIVIAL = "trivial"
    NOT_LOGICAL = "not-logical"

    def __repr__(self):  # pragma: no cover
        return f"<{self.value}>"


#: Returned by `StabilizerCode.class_of` for stabilizer elements.
TRIVIAL = _Verdict.TRIVIAL
#: Returned by `StabilizerCode.class_of` for operators outside the normalizer.
NOT_LOGICAL = _Verdict.NOT_LOGICAL


@dataclass(frozen=True)
class LogicalClass:
    """Label a in Z_m^{2k} \\ {0} naming the coset S * prod X_i^{a_i} Z_i^{a_{i+k}}."""

    label: tuple[int, ...]

    def __post_init__(self):
        if not any(self.label):
            raise ValueError("the all-zero label names the trivial coset, not a class")

    @property
    def k(self) -> int:
        return len(self.label) // 2

    def x_part(self) -> tuple[int, ...]:
        return self.label[: self.k]

    def z_part(self) -> tuple[int, ...]:
        return self.label[self.k :]


@dataclass(frozen=True)
class CircuitShape:
    """Locality/depth descriptor: q parts fused per layer, h layers."""

    q: int
    h: int

    def __post_init__(self):
        if self.q < 1 or self.h < 1:
            raise ValueError("locality and depth must both be at least 1")

    @property
    def is_transversal(self) -> bool:
        return self.q == 1 and self.h == 1


@dataclass(frozen=True)
class MultiblockSpec:
    """r codeblocks with an optional per-block permutation of the parts."""

    r: int
    permutations: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("block count must be at least 1")
        if self.permutations is not None and len(self.permutations) != self.r:
            raise ValueError("need one part permutation per block")

    def sigma(self, block: int, num_parts: int) -> tuple[int, ...]:
        if self.permutations is None:
            return tuple(range(num_parts))
        perm = self.permutations[block]
        if sorted(perm) != list(range(num_parts)):
            raise ValueError(f"block {block}: not a permutation of [{num_parts}]")
        return perm


def _pauli_to_vec(p: PauliOperator) -> np.ndarray:
    return np.array(p.x + p.z, dtype=np.int64)


def _vec_to_pauli(v: np.ndarray, m: int) -> PauliOperator:
    n = len(v) // 2
    return PauliOperator(m, tuple(int(e) % m for e in v[:n]), tuple(int(e) % m for e in v[n:]), 0)


def _lam(u: np.ndarray, v: np.ndarray, m: int) -> int:
    """Symplectic pairing on (x|z) vectors: exponent in [u, v] = omega^lam."""
    n = len(u) // 2
    return int(u[n:] @ v[:n] - u[:n] @ v[n:]) % m


class StabilizerCode:
    """An [[n, k]] qudit stabilizer code with a fixed logical Pauli basis."""

    def __init__(
        self,
        m: int,
        generators: Sequence[PauliOperator],
        logical_x: Sequence[PauliOperator],
        logical_z: Sequence[PauliOperator],
    ):
        self.m = m
        self.generators = tuple(generators)
        self.logical_x = tuple(logical_x)
        self.logical_z = tuple(logical_z)
        self.n = self.generators[0].n
        self.k = len(self.logical_x)
        self._gen_mat = np.array([_pauli_to_vec(g) for g in self.generators], dtype=np.int64)
        basis = list(self.logical_x) + list(self.logical_z)
        self._log_mat = (
            np.array([_pauli_to_vec(g) for g in basis], dtype=np.int64)
            if basis
            else np.zeros((0, 2 * self.n), dtype=np.int64)
        )

    # -- structure ---------------------------------------------------------

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    @property
    def coset_size(self) -> int:
        """|S| = m^(n-k): representatives per logical class."""
        return self.m ** (self.n - self.k)

    @property
    def num_classes(self) -> int:
        return self.m ** (2 * self.k) - 1

    def logical_labels(self) -> Iterator[LogicalClass]:
        """All m^{2k} - 1 non-trivial class labels, lexicographically."""
        for label in itertools.product(range(self.m), repeat=2 * self.k):
            if any(label):
                yield LogicalClass(label)

    @cached_property
    def generator_strings(self) -> tuple[str, ...]:
        return tuple(g.to_string() for g in self.generators)

    def __repr__(self):
        return f"StabilizerCode(n={self.n}, k={self.k}, m={self.m})"

    # -- coset operations --------------------------------------------------

    def logical_representative(self, cls: LogicalClass) -> PauliOperator:
        """Canonical representative prod X_i^{a_i} Z_i^{a_{i+k}} with phase 0."""
        if len(cls.label) != 2 * self.k:
            raise DimensionMismatchError(
                f"label length {len(cls.label)} does not match 2k={2 * self.k}"
            )
        acc = PauliOperator.identity(self.n, self.m)
        for op, exp in zip(self.logical_x + self.logical_z, cls.label):
            for _ in range(exp):
                acc = multiply(acc, op)
        return acc.strip_phase()

    def class_of(self, p: PauliOperator):
        """Classify p: NOT_LOGICAL, TRIVIAL (in S up to phase), or its LogicalClass."""
        if p.m != self.m or p.n != self.n:
            raise DimensionMismatchError("operator does not match the code's space")
        v = _pauli_to_vec(p)
        m = self.m
        n = self.n
        comm = (self._gen_mat[:, n:] @ v[:n] - self._gen_mat[:, :n] @ v[n:]) % m
        if np.any(comm):
            return NOT_LOGICAL
        ax = [(-_lam(v, _pauli_to_vec(zb), m)) % m for zb in self.logical_z]
        az = [_lam(v, _pauli_to_vec(xb), m) % m for xb in self.logical_x]
        label = tuple(ax + az)
        if not any(label):
            return TRIVIAL
        return LogicalClass(label)

    def stabilizer_exponent_grid(self, budget: int = DEFAULT_BUDGET) -> np.ndarray:
        """All exponent vectors e in Z_m^{n-k}, one per stabilizer element."""
        r = self.num_generators
        size = self.m**r
        if size > budget:
            raise BudgetExceededError(
                f"coset has {size} elements, over the budget of {budget}"
            )
        idx = np.arange(size)
        cols = [(idx // self.m ** (r - 1 - j)) % self.m for j in range(r)]
        return np.stack(cols, axis=1).astype(np.int64) if r else np.zeros((1, 0), np.int64)

    def coset_table(self, cls: LogicalClass, budget: int = DEFAULT_BUDGET) -> np.ndarray:
        """(m^{n-k} x 2n) array of the (x|z) rows of every coset element."""
        rep = _pauli_to_vec(self.logical_representative(cls))
        grid = self.stabilizer_exponent_grid(budget)
        return (rep + grid @ self._gen_mat) % self.m

    def enumerate_class(
        self, cls: LogicalClass, budget: int = DEFAULT_BUDGET
    ) -> Iterator[PauliOperator]:
        """Yield all m^{n-k} coset elements once each, modulo phase."""
        for row in self.coset_table(cls, budget):
            yield _vec_to_pauli(row, self.m)

    def classes_anticommute(self, a: LogicalClass, b: LogicalClass) -> bool:
        """Whether every representative of a fails to commute with every one of b."""
        k = self.k
        lam = sum(
            a.label[k + i] * b.label[i] - a.label[i] * b.label[k + i]
            for i in range(k)
        )
        return lam % self.m != 0


def build_code(
    generators: Sequence[PauliOperator],
    m: int | None = None,
    logical_x: Sequence[PauliOperator] | None = None,
    logical_z: Sequence[PauliOperator] | None = None,
) -> StabilizerCode:
    """Validate generators and construct the code with a logical basis.

    The basis is taken from `logical_x`/`logical_z` when supplied (after full
    validation) and otherwise derived by symplectic Gram-Schmidt on a basis
    of the normalizer modulo the stabilizer.  Lowest-index pivoting makes the
    derived basis deterministic.
    """
    gens = list(generators)
    if not gens:
        raise CodeConstructionError("at least one stabilizer generator is required")
    if m is None:
        m = gens[0].m
    linalg.require_prime(m)
    n = gens[0].n
    for i, g in enumerate(gens):
        if g.m != m or g.n != n:
            raise CodeConstructionError(
                f"generator {i} acts on (n={g.n}, m={g.m}), expected (n={n}, m={m})"
            )
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if symplectic_product(gens[i], gens[j]) != 0:
                raise CodeConstructionError(
                    f"generators {i} and {j} do not commute"
                )
    gen_mat = np.array([_pauli_to_vec(g) for g in gens], dtype=np.int64)
    for count in range(1, len(gens) + 1):
        if linalg.rank_mod(gen_mat[:count], m) < count:
            raise CodeConstructionError(
                f"generator {count - 1} is a product of earlier generators"
            )
    r = len(gens)
    k = n - r

    if (logical_x is None) != (logical_z is None):
        raise CodeConstructionError("provide both logical_x and logical_z or neither")

    if logical_x is not None and logical_z is not None:
        lx, lz = list(logical_x), list(logical_z)
        if len(lx) != k or len(lz) != k:
            raise CodeConstructionError(
                f"expected {k} logical X and Z operators, got {len(lx)} and {len(lz)}"
            )
        _validate_logical_basis(gens, lx, lz, m, n)
        return StabilizerCode(m, gens, lx, lz)

    lx, lz = _derive_logical_basis(gen_mat, m, n, k)
    return StabilizerCode(m, gens, lx, lz)


def _validate_logical_basis(gens, lx, lz, m, n):
    for name, ops in (("X", lx), ("Z", lz)):
        for i, op in enumerate(ops):
            if op.m != m or op.n != n:
                raise CodeConstructionError(f"logical {name}[{i}] has the wrong shape")
            for j, g in enumerate(gens):
                if symplectic_product(op, g) != 0:
                    raise CodeConstructionError(
                        f"logical {name}[{i}] does not commute with generator {j}"
                    )
    k = len(lx)
    for i in range(k):
        for j in range(k):
            want = (-1) % m if i == j else 0
            if symplectic_product(lx[i], lz[j]) != want:
                raise CodeConstructionError(
                    f"pairing of logical X[{i}] with Z[{j}] is not -delta_ij"
                )
            if symplectic_product(lx[i], lx[j]) != 0:
                raise CodeConstructionError(f"logical X[{i}] and X[{j}] do not commute")
            if symplectic_product(lz[i], lz[j]) != 0:
                raise CodeConstructionError(f"logical Z[{i}] and Z[{j}] do not commute")


def _derive_logical_basis(gen_mat: np.ndarray, m: int, n: int, k: int):
    """Symplectic Gram-Schmidt on a normalizer basis modulo the stabilizer."""
    if k == 0:
        return (), ()
    # v is in N(S) iff it commutes with every generator.
    constraint = np.hstack([gen_mat[:, n:], (-gen_mat[:, :n]) % m])
    kernel = linalg.nullspace_mod(constraint, m)
    # Keep kernel vectors that are independent modulo the stabilizer span.
    chosen: list[np.ndarray] = []
    base = gen_mat
    rank = linalg.rank_mod(base, m)
    for v in kernel:
        cand = np.vstack([base, v.reshape(1, -1)])
        cand_rank = linalg.rank_mod(cand, m)
        if cand_rank > rank:
            base = cand
            rank = cand_rank
            chosen.append(v % m)
        if len(chosen) == 2 * k:
            break
    if len(chosen) != 2 * k:
        raise CodeConstructionError("failed to span the logical quotient")  # pragma: no cover

    pairs: list[tuple[np.ndarray, np.ndarray]] = []
    work = chosen
    while work:
        u = work[0]
        rest = work[1:]
        partner_idx = None
        for idx, w in enumerate(rest):
            if _lam(u, w, m) != 0:
                partner_idx = idx
                break
        if partner_idx is None:
            raise CodeConstructionError("degenerate symplectic form on the quotient")  # pragma: no cover
        w = rest.pop(partner_idx)
        scale = (-linalg.inv_mod(_lam(u, w, m), m)) % m
        v = (w * scale) % m
        # Now lam(u, v) = -1; sweep the pair out of the remaining vectors.
        new_rest = []
        for t in rest:
            coeff_e = _lam(t, v, m)
            coeff_f = _lam(t, u, m)
            t2 = (t + coeff_e * u - coeff_f * v) % m
            new_rest.append(t2)
        pairs.append((u, v))
        work = new_rest
    lx = tuple(_vec_to_pauli(u, m) for u, _ in pairs)
    lz = tuple(_vec_to_pauli(v, m) for _, v in pairs)
    return lx, lz


def effective_multiblock(
    code: StabilizerCode, partition: Partition, spec: MultiblockSpec
) -> tuple[StabilizerCode, Partition]:
    """Fuse r codeblocks into one [[rn, rk]] code with joined parts.

    Part i of the result is the union over blocks b of part sigma_b(i) of
    block b.  With r = 1 and the identity permutation this returns the
    inputs unchanged (up to reconstruction).
    """
    if partition.n != code.n:
        raise DimensionMismatchError("partition does not match the code")
    r = spec.r
    n, m = code.n, code.m
    total = r * n
    gens = [
        g.embed(total, b * n) for b in range(r) for g in code.generators
    ]
    lx = [op.embed(total, b * n) for b in range(r) for op in code.logical_x]
    lz = [op.embed(total, b * n) for b in range(r) for op in code.logical_z]
    nparts = partition.num_parts
    sigmas = [spec.sigma(b, nparts) for b in range(r)]
    blocks = []
    for i in range(nparts):
        fused: list[int] = []
        for b in range(r):
            fused.extend(q + b * n for q in partition.parts[sigmas[b][i]])
        blocks.append(tuple(sorted(fused)))
    eff_partition = Partition.of_blocks(blocks)
    eff_code = build_code(gens, m, logical_x=lx, logical_z=lz)
    return eff_code, eff_partition


# -- code file format ------------------------------------------------------


def loads_code_file(text: str) -> tuple[StabilizerCode, Partition | None]:
    """Parse the line-oriented code file format.

    Recognised lines: `dim = <m>`, `n = <n>`, `stabilizer <pauli>`,
    `logical X <pauli>` / `logical Z <pauli>` (validated, not trusted),
    `partition <i i ...> | ...`, and `#` comments.  Qudit indices are
    0-based.
    """
    m: int | None = None
    n: int | None = None
    stab_strings: list[tuple[str, int]] = []
    log_x: list[tuple[str, int]] = []
    log_z: list[tuple[str, int]] = []
    partition_text: tuple[str, int] | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line:
            key, _, val = line.partition("=")
            key, val = key.strip(), val.strip()
            try:
                ival = int(val)
            except ValueError:
                raise CodeFileError(f"bad integer {val!r} for {key}", lineno) from None
            if key == "dim":
                m = ival
            elif key == "n":
                n = ival
            else:
                raise CodeFileError(f"unknown assignment {key!r}", lineno)
            continue
        tokens = line.split(None, 1)
        keyword = tokens[0]
        rest = tokens[1] if len(tokens) > 1 else ""
        if keyword == "stabilizer":
            stab_strings.append((rest, lineno))
        elif keyword == "logical":
            sub = rest.split(None, 1)
            if len(sub) != 2 or sub[0] not in ("X", "Z"):
                raise CodeFileError("expected 'logical X <pauli>' or 'logical Z <pauli>'", lineno)
            (log_x if sub[0] == "X" else log_z).append((sub[1], lineno))
        elif keyword == "partition":
            partition_text = (rest, lineno)
        else:
            raise CodeFileError(f"unknown directive {keyword!r}", lineno)

    if m is None:
        raise CodeFileError("missing 'dim = <m>' line")
    if n is None:
        raise CodeFileError("missing 'n = <n>' line")
    if not stab_strings:
        raise CodeFileError("no stabilizer lines found")

    def parse_op(s: str, lineno: int) -> PauliOperator:
        try:
            op = pauli_from_string(s, m)
        except Exception as exc:
            raise CodeFileError(str(exc), lineno) from None
        if op.n != n:
            raise CodeFileError(f"operator acts on {op.n} qudits, expected {n}", lineno)
        return op

    gens = [parse_op(s, ln) for s, ln in stab_strings]
    lx = [parse_op(s, ln) for s, ln in log_x] or None
    lz = [parse_op(s, ln) for s, ln in log_z] or None
    try:
        code = build_code(gens, m, logical_x=lx, logical_z=lz)
    except CodeConstructionError as exc:
        raise CodeFileError(str(exc)) from None

    part = None
    if partition_text is not None:
        part = parse_partition_text(partition_text[0], n, partition_text[1])
    return code, part


def load_code_file(path) -> tuple[StabilizerCode, Partition | None]:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_code_file(fh.read())


def dumps_code_file(code: StabilizerCode, partition: Partition | None = None) -> str:
    lines = [f"dim = {code.m}", f"n = {code.n}"]
    lines += [f"stabilizer {s}" for s in code.generator_strings]
    lines += [f"logical X {op.to_string()}" for op in code.logical_x]
    lines += [f"logical Z {op.to_string()}" for op in code.logical_z]
    if partition is not None and not partition.is_single_qudit():
        lines.append(f"partition {partition.to_text()}")
    return "\n".join(lines) + "\n"
