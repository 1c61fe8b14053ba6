"""Deterministic builders for the code/partition instances used in reports.

Each builder returns a `FamilyInstance` holding the code, its partition,
declared metric values with constructive witnesses (used when exhaustive
search is out of budget), and growth exponents where the family scales.
Instances small enough for enumeration are spot-verified against the
declared values by `verify_declared`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .bounds import FamilyExponents
from .codes import StabilizerCode, build_code
from .errors import WitnessError
from .metrics import (
    DEFAULT_BUDGET,
    DeclaredMetrics,
    DisjointWitness,
    compute_metrics,
    verify_witness,
)
from .pauli import PauliOperator
from .partition import Partition

X_LABEL = (1, 0)
Z_LABEL = (0, 1)
Y_LABEL = (1, 1)


@dataclass(frozen=True)
class FamilyInstance:
    """One concrete code + partition with its declared metric package."""

    name: str
    code: StabilizerCode
    partition: Partition
    declared: DeclaredMetrics | None
    exponents: FamilyExponents | None
    description: str


def _xop(n: int, sites, m: int = 2) -> PauliOperator:
    x = [0] * n
    for s in sites:
        x[s] = 1
    return PauliOperator(m, tuple(x), (0,) * n)


def _zop(n: int, sites, m: int = 2) -> PauliOperator:
    z = [0] * n
    for s in sites:
        z[s] = 1
    return PauliOperator(m, (0,) * n, tuple(z))


def _xzop(n: int, x_sites, z_sites, m: int = 2) -> PauliOperator:
    x = [0] * n
    z = [0] * n
    for s in x_sites:
        x[s] = 1
    for s in z_sites:
        z[s] = 1
    return PauliOperator(m, tuple(x), tuple(z))


# -- [[4,2]] -----------------------------------------------------------------


def four_two_two() -> FamilyInstance:
    """The [[4,2]] code <XXXX, ZZZZ> with the single-qubit partition."""
    n = 4
    gens = [_xop(n, range(4)), _zop(n, range(4))]
    lx = [_xop(n, [0, 1]), _xop(n, [0, 2])]
    lz = [_zop(n, [0, 2]), _zop(n, [0, 1])]
    code = build_code(gens, 2, logical_x=lx, logical_z=lz)
    declared = DeclaredMetrics(
        d_min=2,
        d_max=3,
        delta_lo=Fraction(4, 3),
        distance_reps={
            (1, 0, 0, 0): _xop(n, [0, 1]),
            (0, 0, 1, 0): _zop(n, [0, 2]),
        },
    )
    return FamilyInstance(
        name="c422",
        code=code,
        partition=Partition.single_qudit(n),
        declared=declared,
        exponents=None,
        description="[[4,2]] error-detecting code, single-qubit partition",
    )


# -- 5-qubit code --------------------------------------------------------------


def five_qubit() -> FamilyInstance:
    """The non-CSS [[5,1,3]] code with logicals X^5 and Z^5."""
    n = 5
    gens = [
        _xzop(n, [2, 4], [0, 1]),  # Z1 Z2 X3 X5
        _xzop(n, [0, 3], [1, 2]),  # X1 Z2 Z3 X4
        _xzop(n, [1, 4], [2, 3]),  # X2 Z3 Z4 X5
        _xzop(n, [0, 2], [3, 4]),  # X1 X3 Z4 Z5
    ]
    code = build_code(
        gens, 2, logical_x=[_xop(n, range(5))], logical_z=[_zop(n, range(5))]
    )
    declared = DeclaredMetrics(d_min=3, d_max=3, delta_lo=Fraction(5, 3))
    return FamilyInstance(
        name="five-qubit",
        code=code,
        partition=Partition.single_qudit(n),
        declared=declared,
        exponents=None,
        description="five-qubit code, single-qubit partition",
    )


# -- punctured Reed-Muller family ----------------------------------------------


def _parity(v: int) -> int:
    return bin(v).count("1") & 1


def _rm_x_support(mbits: int, a: int) -> list[int]:
    """Qubits p-1 for nonzero points p with <a, p> = 0."""
    return [p - 1 for p in range(1, 2**mbits) if _parity(p & a) == 0]


def _rm_lines(mbits: int) -> dict[int, list[tuple[int, int, int]]]:
    """For each hyperplane label a: the 2-dim subspaces inside ker(a)."""
    out: dict[int, list[tuple[int, int, int]]] = {}
    for a in range(1, 2**mbits):
        kernel = [p for p in range(1, 2**mbits) if _parity(p & a) == 0]
        lines = set()
        for u, v in itertools.combinations(kernel, 2):
            w = u ^ v
            if w:
                lines.add(tuple(sorted((u, v, w))))
        out[a] = sorted(lines)
    return out


def _match_distinct_lines(
    lines: dict[int, list[tuple[int, int, int]]]
) -> dict[int, tuple[int, int, int]]:
    """One distinct 2-dim subspace per hyperplane, via augmenting paths."""
    owner: dict[tuple[int, int, int], int] = {}
    assigned: dict[int, tuple[int, int, int]] = {}

    def augment(a: int, seen: set) -> bool:
        for ln in lines[a]:
            if ln in seen:
                continue
            seen.add(ln)
            holder = owner.get(ln)
            if holder is None or augment(holder, seen):
                owner[ln] = a
                assigned[a] = ln
                return True
        return False

    for a in sorted(lines):
        if not augment(a, set()):  # pragma: no cover - always matchable here
            raise RuntimeError("could not assign distinct lines to hyperplanes")
    return assigned


def reed_muller(D: int) -> FamilyInstance:
    """[[2^(D+1)-1, 1]] punctured Reed-Muller code (D=2 is the Steane code).

    Qubits sit on the nonzero points of F_2^(D+1); X generators are the
    coordinate-hyperplane indicators and Z generators the indicators of
    monomials of degree up to D-1.
    """
    if D < 2:
        raise ValueError("the family starts at D = 2")
    mbits = D + 1
    n = 2**mbits - 1
    gens = []
    for b in range(mbits):
        gens.append(_xop(n, [p - 1 for p in range(1, 2**mbits) if (p >> b) & 1]))
    for t in range(1, mbits - 1):
        for combo in itertools.combinations(range(mbits), t):
            cmask = 0
            for b in combo:
                cmask |= 1 << b
            gens.append(
                _zop(n, [p - 1 for p in range(1, 2**mbits) if p & cmask == cmask])
            )
    code = build_code(
        gens, 2, logical_x=[_xop(n, range(n))], logical_z=[_zop(n, range(n))]
    )

    d_max = 2**D - 1
    lines = _rm_lines(mbits)
    chosen_lines = _match_distinct_lines(lines)

    x_members = []
    z_members = []
    y_members = []
    for a in range(1, 2**mbits):
        supp = _rm_x_support(mbits, a)
        line_sites = [p - 1 for p in chosen_lines[a]]
        x_members.append(_xop(n, supp))
        z_members.append(_zop(n, line_sites))
        y_members.append(_xzop(n, supp, line_sites))
    declared = DeclaredMetrics(
        d_min=3,
        d_max=d_max,
        delta_lo=Fraction(n, d_max),
        delta_witnesses=(
            DisjointWitness(X_LABEL, d_max, tuple(x_members)),
            DisjointWitness(Z_LABEL, d_max, tuple(z_members)),
            DisjointWitness(Y_LABEL, d_max, tuple(y_members)),
        ),
        distance_reps={
            X_LABEL: x_members[0],
            Z_LABEL: z_members[0],
            Y_LABEL: y_members[0],
        },
    )
    return FamilyInstance(
        name="reed-muller",
        code=code,
        partition=Partition.single_qudit(n),
        declared=declared,
        exponents=None,
        description=f"punctured Reed-Muller code, D={D}, single-qubit partition",
    )


# -- planar surface code ---------------------------------------------------------


def _surface_indices(l: int):
    """Row-major indexing, horizontal-edge qubits first."""

    def hidx(r: int, c: int) -> int:
        return (r // 2) * l + c // 2

    def vidx(r: int, c: int) -> int:
        return l * l + ((r - 1) // 2) * (l - 1) + (c - 1) // 2

    def qidx(r: int, c: int) -> int:
        return hidx(r, c) if r % 2 == 0 else vidx(r, c)

    return qidx


def surface_code(l: int) -> FamilyInstance:
    """Planar surface code on an l x l patch: n = l^2 + (l-1)^2, k = 1.

    Qubits live on the sites (r, c) of a (2l-1)x(2l-1) grid with r+c even;
    X checks sit at (even, odd) sites, Z checks at (odd, even) sites, each
    acting on its lattice neighbours.
    """
    if l < 2:
        raise ValueError("need l >= 2")
    n = l * l + (l - 1) * (l - 1)
    top = 2 * l - 2
    qidx = _surface_indices(l)

    def neighbours(r: int, c: int) -> list[int]:
        out = []
        for rr, cc in ((r, c - 1), (r, c + 1), (r - 1, c), (r + 1, c)):
            if 0 <= rr <= top and 0 <= cc <= top:
                out.append(qidx(rr, cc))
        return out

    gens = []
    for r in range(0, top + 1, 2):
        for c in range(1, top, 2):
            gens.append(_xop(n, neighbours(r, c)))
    for r in range(1, top, 2):
        for c in range(0, top + 1, 2):
            gens.append(_zop(n, neighbours(r, c)))

    col = lambda j: [qidx(r, 2 * j) for r in range(0, top + 1, 2)]
    row = lambda i: [qidx(2 * i, c) for c in range(0, top + 1, 2)]
    code = build_code(
        gens, 2, logical_x=[_xop(n, col(0))], logical_z=[_zop(n, row(0))]
    )

    x_members = [_xop(n, col(j)) for j in range(l)]
    z_members = [_zop(n, row(i)) for i in range(l)]
    y_members = [_xzop(n, col(a), row(a)) for a in range(l)]
    declared = DeclaredMetrics(
        d_min=l,
        d_max=2 * l - 1,
        delta_lo=Fraction(l, 2),
        delta_witnesses=(
            DisjointWitness(X_LABEL, 2, tuple(x_members)),
            DisjointWitness(Z_LABEL, 2, tuple(z_members)),
            DisjointWitness(Y_LABEL, 2, tuple(y_members)),
        ),
        distance_reps={
            X_LABEL: x_members[0],
            Z_LABEL: z_members[0],
            Y_LABEL: y_members[0],
        },
    )
    return FamilyInstance(
        name="surface",
        code=code,
        partition=Partition.single_qudit(n),
        declared=declared,
        exponents=FamilyExponents(Fraction(1), Fraction(1), Fraction(1)),
        description=f"planar surface code, l={l}, single-qubit partition",
    )


# -- asymmetric Bacon-Shor, Z gauge ----------------------------------------------


def _integer_power(base: int, exp: Fraction) -> int:
    """base**exp when it is an exact integer, else raises ValueError."""
    exp = Fraction(exp)
    raised = base ** exp.numerator
    lo, hi = 1, raised
    q = exp.denominator
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**q < raised:
            lo = mid + 1
        else:
            hi = mid
    if lo**q != raised:
        raise ValueError(f"{base}^{exp} is not an integer; lattice not realizable")
    return lo


def bacon_shor_z(l: int, a: Fraction | int = 1) -> FamilyInstance:
    """Z-gauge-fixed asymmetric Bacon-Shor code on an l x l^a grid.

    Stabilizers: X on every adjacent column pair, plus ZZ on every
    vertically adjacent qubit pair.  Logical X is a single column of X,
    logical Z a single row of Z.
    """
    if l < 2:
        raise ValueError("need l >= 2")
    a = Fraction(a)
    if a < 1:
        raise ValueError("aspect exponent must be at least 1")
    rows = l
    cols = _integer_power(l, a)
    n = rows * cols
    q = lambda i, j: i * cols + j

    gens = []
    for j in range(cols - 1):
        gens.append(_xop(n, [q(i, jj) for i in range(rows) for jj in (j, j + 1)]))
    for j in range(cols):
        for i in range(rows - 1):
            gens.append(_zop(n, [q(i, j), q(i + 1, j)]))

    colq = lambda j: [q(i, j) for i in range(rows)]
    rowq = lambda i: [q(i, j) for j in range(cols)]
    code = build_code(
        gens, 2, logical_x=[_xop(n, colq(0))], logical_z=[_zop(n, rowq(0))]
    )

    x_members = [_xop(n, colq(j)) for j in range(l)]
    z_members = [_zop(n, rowq(i)) for i in range(l)]
    y_members = [_xzop(n, colq(t), rowq(t)) for t in range(l)]
    declared = DeclaredMetrics(
        d_min=l,
        d_max=cols + l - 1,
        delta_lo=Fraction(l, 2),
        delta_witnesses=(
            DisjointWitness(X_LABEL, 2, tuple(x_members)),
            DisjointWitness(Z_LABEL, 2, tuple(z_members)),
            DisjointWitness(Y_LABEL, 2, tuple(y_members)),
        ),
        distance_reps={
            X_LABEL: x_members[0],
            Z_LABEL: z_members[0],
            Y_LABEL: y_members[0],
        },
    )
    return FamilyInstance(
        name="bacon-shor",
        code=code,
        partition=Partition.single_qudit(n),
        declared=declared,
        exponents=FamilyExponents(Fraction(1), a, Fraction(1)),
        description=f"Z-gauge Bacon-Shor code on {rows}x{cols}, single-qubit partition",
    )


# -- [[105,1]] two-partition code --------------------------------------------------


def _broadcast_columns(op15: PauliOperator, rows: int = 7) -> PauliOperator:
    """Place a copy of a 15-qubit operator on every row of the 7x15 array."""
    x = op15.x * rows
    z = op15.z * rows
    return PauliOperator(2, x, z, 0)


def _lift_rows(op7: PauliOperator, cols: int = 15) -> PauliOperator:
    """Expand each of 7 outer sites to a full 15-qubit row."""
    x = tuple(e for e in op7.x for _ in range(cols))
    z = tuple(e for e in op7.z for _ in range(cols))
    return PauliOperator(2, x, z, 0)


def concatenated_105(partition_choice: str = "columns") -> FamilyInstance:
    """[[105,1]]: a 7-row array of 15-qubit blocks glued by a 7-qubit outer code.

    The two partitions of the 7x15 array behave very differently: by
    columns (15 parts of 7) the declared metrics are (3, 7, 15/7); by rows
    (7 parts of 15) they are (3, 3, 7/3).
    """
    if partition_choice not in ("columns", "rows"):
        raise ValueError("partition_choice must be 'columns' or 'rows'")
    outer = reed_muller(2)
    inner = reed_muller(3)
    n = 105
    gens = []
    for r in range(7):
        gens.extend(g.embed(n, r * 15) for g in inner.code.generators)
    gens.extend(_lift_rows(g) for g in outer.code.generators)
    code = build_code(
        gens, 2, logical_x=[_xop(n, range(n))], logical_z=[_zop(n, range(n))]
    )

    if partition_choice == "columns":
        partition = Partition.of_blocks(
            [tuple(r * 15 + j for r in range(7)) for j in range(15)]
        )
        witnesses = tuple(
            DisjointWitness(w.label, w.c, tuple(_broadcast_columns(m) for m in w.members))
            for w in inner.declared.delta_witnesses
        )
        declared = DeclaredMetrics(
            d_min=3,
            d_max=7,
            delta_lo=Fraction(15, 7),
            delta_witnesses=witnesses,
            distance_reps={
                lb: _broadcast_columns(rep)
                for lb, rep in inner.declared.distance_reps.items()
            },
        )
    else:
        partition = Partition.of_blocks(
            [tuple(range(r * 15, (r + 1) * 15)) for r in range(7)]
        )
        witnesses = tuple(
            DisjointWitness(w.label, w.c, tuple(_lift_rows(m) for m in w.members))
            for w in outer.declared.delta_witnesses
        )
        declared = DeclaredMetrics(
            d_min=3,
            d_max=3,
            delta_lo=Fraction(7, 3),
            delta_witnesses=witnesses,
            distance_reps={
                lb: _lift_rows(rep)
                for lb, rep in outer.declared.distance_reps.items()
            },
        )
    return FamilyInstance(
        name="c105",
        code=code,
        partition=partition,
        declared=declared,
        exponents=None,
        description=f"[[105,1]] two-level code, {partition_choice} partition",
    )


# -- toric-like exponent descriptors ------------------------------------------------


def toric_family_exponents(D: int, s: int) -> FamilyExponents:
    """Growth exponents (s, D-s, s) for D-dimensional toric-like families.

    Logical pairs have representatives of dimensionality s and D-s; no
    concrete lattice is materialised.
    """
    if D < 2:
        raise ValueError("need D >= 2")
    if not 1 <= s <= D // 2:
        raise ValueError(f"s must lie in [1, {D // 2}] for D={D}")
    return FamilyExponents(Fraction(s), Fraction(D - s), Fraction(s))


# -- declared-value verification ------------------------------------------------


def verify_declared(instance: FamilyInstance, budget: int = DEFAULT_BUDGET) -> dict:
    """Spot-check declared values; exhaustive whenever the budget allows.

    Witness sets are always re-verified.  Raises WitnessError on any
    mismatch; returns a summary of what was checked.
    """
    decl = instance.declared
    if decl is None:
        return {"checked": False, "reason": "no declared values"}
    code, partition = instance.code, instance.partition
    for w in decl.delta_witnesses:
        verify_witness(code, partition, w)
    for lb, rep in decl.distance_reps.items():
        got = code.class_of(rep)
        if not hasattr(got, "label") or got.label != lb:
            raise WitnessError(f"declared representative for {lb} is misclassed")
    summary = {"checked": True, "witnesses": len(decl.delta_witnesses)}
    if code.coset_size <= budget:
        report = compute_metrics(code, partition, budget=budget)
        if int(report.d_min.value) != decl.d_min or int(report.d_max.value) != decl.d_max:
            raise WitnessError(
                f"declared distances ({decl.d_min}, {decl.d_max}) disagree with "
                f"exhaustive ({report.d_min.value}, {report.d_max.value})"
            )
        if report.delta.lo < decl.delta_lo:
            raise WitnessError(
                f"declared disjointness lower bound {decl.delta_lo} exceeds "
                f"the exhaustive value {report.delta.lo}"
            )
        summary["exhaustive"] = True
    else:
        summary["exhaustive"] = False
    return summary


FAMILY_BUILDERS = {
    "c422": four_two_two,
    "five-qubit": five_qubit,
    "reed-muller": reed_muller,
    "surface": surface_code,
    "bacon-shor": bacon_shor_z,
    "c105": concatenated_105,
}
