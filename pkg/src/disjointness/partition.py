"""Qudit partitions: disjoint, non-empty subsets covering all n qudits.

Supports, weights, distances and transversality are all defined relative
to a fixed partition.  The common case is the single-qudit partition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import CodeFileError, DimensionMismatchError
from .pauli import PauliOperator


@dataclass(frozen=True)
class Partition:
    """Disjoint non-empty qudit subsets Q_1..Q_N covering range(n)."""

    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("a partition needs at least one part")
        norm = tuple(tuple(sorted(set(p))) for p in self.parts)
        object.__setattr__(self, "parts", norm)
        seen: set[int] = set()
        for idx, part in enumerate(norm):
            if not part:
                raise ValueError(f"part {idx} is empty")
            if seen & set(part):
                raise ValueError(f"part {idx} overlaps an earlier part")
            seen.update(part)
        n = max(seen) + 1
        if seen != set(range(n)):
            missing = sorted(set(range(n)) - seen)
            raise ValueError(f"parts do not cover qudits {missing}")

    @classmethod
    def single_qudit(cls, n: int) -> "Partition":
        return cls(tuple((j,) for j in range(n)))

    @classmethod
    def of_blocks(cls, blocks: Iterable[Iterable[int]]) -> "Partition":
        return cls(tuple(tuple(b) for b in blocks))

    @property
    def n(self) -> int:
        return sum(len(p) for p in self.parts)

    @property
    def num_parts(self) -> int:
        return len(self.parts)

    @cached_property
    def part_of(self) -> tuple[int, ...]:
        """Map qudit index -> part index."""
        owner = [0] * self.n
        for i, part in enumerate(self.parts):
            for q in part:
                owner[q] = i
        return tuple(owner)

    def qudits_of(self, part_indices: Iterable[int]) -> frozenset[int]:
        out: set[int] = set()
        for i in part_indices:
            out.update(self.parts[i])
        return frozenset(out)

    def is_single_qudit(self) -> bool:
        return all(len(p) == 1 for p in self.parts)

    def to_text(self) -> str:
        return " | ".join(" ".join(str(q) for q in part) for part in self.parts)


def support(p: PauliOperator, partition: Partition) -> frozenset[int]:
    """Indices of parts on which p acts non-identically."""
    if partition.n != p.n:
        raise DimensionMismatchError(
            f"partition covers {partition.n} qudits but operator acts on {p.n}"
        )
    owner = partition.part_of
    return frozenset(owner[j] for j in p.nonzero_sites)


def weight(p: PauliOperator, partition: Partition) -> int:
    """Number of parts in the support of p."""
    return len(support(p, partition))


def parse_partition_text(text: str, n: int, line: int | None = None) -> Partition:
    """Parse "0 1 | 2 3 | 4" into a partition of range(n)."""
    groups = [g.strip() for g in text.split("|")]
    blocks: list[tuple[int, ...]] = []
    for g in groups:
        if not g:
            raise CodeFileError("empty part in partition", line)
        try:
            blocks.append(tuple(int(tok) for tok in g.split()))
        except ValueError as exc:
            raise CodeFileError(f"bad partition entry: {exc}", line) from None
    try:
        part = Partition.of_blocks(blocks)
    except ValueError as exc:
        raise CodeFileError(str(exc), line) from None
    if part.n != n:
        raise CodeFileError(
            f"partition covers {part.n} qudits, expected {n}", line
        )
    return part
