"""Distances, c-disjointness, and the disjointness of a code.

All values are exact: distances are integers, disjointness values are
`fractions.Fraction`.  Quantities that cannot be computed exhaustively are
returned as certified `RationalInterval`s whose lower ends come from
re-verified witness sets and whose upper ends come from proved inequalities.
Floats never participate in any comparison.

The maximum c-disjoint subset problem is solved exactly by depth-first
branch-and-bound over coset elements grouped by identical support, with a
capacity-relaxation upper bound for pruning.  Ordering is deterministic
(ascending weight, then support mask, then element bytes) so witnesses and
reports reproduce byte-for-byte.
"""

from __future__ import annotations

import warnings
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import linalg
from .codes import DEFAULT_BUDGET, LogicalClass, StabilizerCode, _pauli_to_vec
from .errors import (
    BudgetExceededError,
    CodeFileError,
    WitnessError,
)
from .pauli import PauliOperator, pauli_from_string
from .partition import Partition, support

DEFAULT_C_MAX = 64
_NODE_LIMIT = 200_000_000


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def frac_str(v: Fraction | int) -> str:
    f = _frac(v)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class RationalInterval:
    """Certified enclosure lo <= value <= hi with a provenance tag."""

    lo: Fraction
    hi: Fraction
    method: str = "exhaustive"

    def __post_init__(self):
        object.__setattr__(self, "lo", _frac(self.lo))
        object.__setattr__(self, "hi", _frac(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, v, method: str = "exhaustive") -> "RationalInterval":
        return cls(_frac(v), _frac(v), method)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Fraction:
        if not self.exact:
            raise ValueError(f"interval [{self.lo}, {self.hi}] is not exact")
        return self.lo

    def to_json_dict(self) -> dict:
        return {
            "lo": frac_str(self.lo),
            "hi": frac_str(self.hi),
            "exact": self.exact,
            "method": self.method,
        }


@dataclass(frozen=True)
class DisjointWitness:
    """A declared c-disjoint subset of one logical class."""

    label: tuple[int, ...]
    c: int
    members: tuple[PauliOperator, ...]


# -- coset views -------------------------------------------------------------


class _CosetView:
    """Enumerated coset of one class with support structure precomputed."""

    _incidence_csr = None

    def __init__(self, code: StabilizerCode, cls: LogicalClass, partition: Partition,
                 budget: int = DEFAULT_BUDGET):
        self.code = code
        self.cls = cls
        self.partition = partition
        self.num_parts = partition.num_parts
        table = code.coset_table(cls, budget)
        self.table = table
        n = code.n
        nonzero = (table[:, :n] != 0) | (table[:, n:] != 0)
        inc = np.zeros((table.shape[0], partition.num_parts), dtype=bool)
        for i, part in enumerate(partition.parts):
            inc[:, i] = nonzero[:, list(part)].any(axis=1)
        self.incidence = inc
        self.weights = inc.sum(axis=1).astype(np.int64)
        powers = [1 << i for i in range(partition.num_parts)]
        self.masks = [
            int(sum(p for p, b in zip(powers, row) if b)) for row in inc
        ]
        self._group()

    def _group(self):
        order = sorted(
            range(len(self.masks)),
            key=lambda i: (int(self.weights[i]), self.masks[i], self.table[i].tobytes()),
        )
        g_masks: list[int] = []
        g_weights: list[int] = []
        g_mults: list[int] = []
        g_parts: list[tuple[int, ...]] = []
        g_members: list[list[int]] = []
        for i in order:
            mask = self.masks[i]
            if g_masks and g_masks[-1] == mask:
                g_mults[-1] += 1
                g_members[-1].append(i)
            else:
                g_masks.append(mask)
                g_weights.append(int(self.weights[i]))
                g_mults.append(1)
                g_parts.append(tuple(b for b in range(self.num_parts) if (mask >> b) & 1))
                g_members.append([i])
        self.g_masks = g_masks
        self.g_weights = g_weights
        self.g_mults = g_mults
        self.g_parts = g_parts
        self.g_members = g_members
        gn = len(g_masks)
        suf = np.zeros((gn + 1, self.num_parts), dtype=np.int64)
        for g in range(gn - 1, -1, -1):
            suf[g] = suf[g + 1]
            for p in g_parts[g]:
                suf[g, p] += g_mults[g]
        self.suffix_inc = suf
        cum_cnt = [0] * (gn + 1)
        cum_w = [0] * (gn + 1)
        for g in range(gn):
            cum_cnt[g + 1] = cum_cnt[g] + g_mults[g]
            cum_w[g + 1] = cum_w[g] + g_mults[g] * g_weights[g]
        self.cum_cnt = cum_cnt
        self.cum_w = cum_w

    @property
    def size(self) -> int:
        return len(self.masks)

    @property
    def distance(self) -> int:
        return int(self.weights.min())

    def incidence_csr(self):
        """Sparse parts x groups incidence matrix for the LP relaxation."""
        if self._incidence_csr is None:
            from scipy import sparse

            rows, cols = [], []
            for g, pts in enumerate(self.g_parts):
                for p in pts:
                    rows.append(p)
                    cols.append(g)
            self._incidence_csr = sparse.csr_matrix(
                (np.ones(len(rows)), (rows, cols)),
                shape=(self.num_parts, len(self.g_parts)),
            )
        return self._incidence_csr

    def element(self, idx: int) -> PauliOperator:
        row = self.table[idx]
        n = self.code.n
        return PauliOperator(
            self.code.m,
            tuple(int(e) for e in row[:n]),
            tuple(int(e) for e in row[n:]),
            0,
        )

    def witness_ops(self, js: Sequence[int]) -> tuple[PauliOperator, ...]:
        ops = []
        for g, j in enumerate(js):
            for idx in self.g_members[g][:j]:
                ops.append(self.element(idx))
        return tuple(ops)


def _suffix_lp_bound(view: _CosetView, caps, idx: int) -> Fraction | None:
    """Certified rational upper bound for the free tail of the search.

    The LP relaxation over groups idx.. with residual capacities is solved
    in floats; its dual marginals are rounded to rationals and the dual
    objective of that (feasible by construction) point is evaluated
    exactly, so the bound is sound by weak duality whatever the solver
    returned.
    """
    from scipy.optimize import linprog

    gn = len(view.g_parts)
    mults = view.g_mults
    res = linprog(
        c=-np.ones(gn - idx),
        A_ub=view.incidence_csr()[:, idx:],
        b_ub=np.asarray(caps, dtype=float),
        bounds=[(0, mults[g]) for g in range(idx, gn)],
        method="highs",
    )
    if not res.success:  # pragma: no cover - HiGHS is reliable here
        return None
    y = np.maximum(0.0, -np.asarray(res.ineqlin.marginals))
    y_hat = [Fraction(max(0, int(round(v * _DUAL_DENOM))), _DUAL_DENOM) for v in y]
    bound = sum((cap * yh for cap, yh in zip(caps, y_hat)), Fraction(0))
    y_float = np.asarray([float(v) for v in y_hat])
    for g in range(idx, gn):
        pts = view.g_parts[g]
        rough = sum(y_float[p] for p in pts)
        if rough >= 1.0 + 1e-4:
            continue  # exact slack is certainly <= 0
        slack = Fraction(1) - sum((y_hat[p] for p in pts), Fraction(0))
        if slack > 0:
            bound += mults[g] * slack
    return bound


class _SearchBudget:
    """Deterministic effort limits shared across branch-and-bound calls."""

    __slots__ = ("nodes", "lps")

    def __init__(self, nodes: int = _SOLVE_NODE_LIMIT, lps: int = 400):
        self.nodes = nodes
        self.lps = lps


def _max_c_disjoint(
    view: _CosetView,
    c: int,
    budget: _SearchBudget | None = None,
    initial_best: int = 0,
):
    """Branch-and-bound maximum size of a c-disjoint subset.

    Returns (best, js, exact, upper).  With `initial_best` = T > 0 the search
    only proves whether some set beats T: when best stays at T the true
    optimum is <= T (upper records that); when it exceeds T the returned
    value is the exact optimum.  `exact` is False only if the budget
    interrupted the search, in which case `upper` falls back to the root
    relaxation.

    Pruning combines a cheap capacity/lightest-fill relaxation with
    certified LP dual bounds at nodes that deviate from the greedy spine.
    """
    if budget is None:
        budget = _SearchBudget()
    gn = len(view.g_masks)
    num_parts = view.num_parts
    caps = [c] * num_parts
    suf = view.suffix_inc
    cum_cnt, cum_w = view.cum_cnt, view.cum_w
    weights, mults, parts = view.g_weights, view.g_mults, view.g_parts
    total_cnt = cum_cnt[gn]

    def upper_bound(idx: int) -> int:
        row = suf[idx]
        slots = 0
        for i in range(num_parts):
            cap = caps[i]
            v = row[i]
            slots += cap if cap < v else v
        if slots <= 0:
            return 0
        base_w = cum_w[idx]
        g = bisect_right(cum_w, base_w + slots) - 1
        take = cum_cnt[g] - cum_cnt[idx]
        if g < gn:
            rem = slots - (cum_w[g] - base_w)
            extra = rem // weights[g]
            take += extra if extra < mults[g] else mults[g]
        return take

    def lp_prunes(idx: int, cur: int, best: int) -> bool:
        if budget.lps <= 0:
            return False
        budget.lps -= 1
        bound = _suffix_lp_bound(view, caps, idx)
        return bound is not None and cur + bound <= best

    lp_pending = False

    def take_all_fits(idx: int) -> bool:
        row = suf[idx]
        for i in range(num_parts):
            if row[i] > caps[i]:
                return False
        return True

    root_ub = upper_bound(0)
    best = initial_best
    best_js: list[int] = [0] * gn
    improved = False
    js = [0] * gn
    frames: list[list[int]] = []
    idx = 0
    cur = 0
    aborted = False

    while True:
        # descend greedily
        while True:
            budget.nodes -= 1
            if budget.nodes < 0:
                aborted = True
                break
            if idx == gn:
                if cur > best:
                    best = cur
                    best_js = js.copy()
                    improved = True
                break
            if take_all_fits(idx):
                cand = cur + (total_cnt - cum_cnt[idx])
                if cand > best:
                    best = cand
                    best_js = js.copy()
                    for t in range(idx, gn):
                        best_js[t] = mults[t]
                    improved = True
                break
            if cur + upper_bound(idx) <= best:
                break
            if lp_pending:
                lp_pending = False
                if lp_prunes(idx, cur, best):
                    break
            jmax = mults[idx]
            for p in parts[idx]:
                if caps[p] < jmax:
                    jmax = caps[p]
            frames.append([idx, jmax])
            if jmax:
                for p in parts[idx]:
                    caps[p] -= jmax
            js[idx] = jmax
            cur += jmax
            idx += 1
        if aborted:
            break
        # backtrack to the next untried branch
        advanced = False
        while frames:
            fidx, j = frames[-1]
            if j:
                for p in parts[fidx]:
                    caps[p] += j
            cur -= j
            j -= 1
            if j < 0:
                js[fidx] = 0
                frames.pop()
                continue
            frames[-1][1] = j
            if j:
                for p in parts[fidx]:
                    caps[p] -= j
            js[fidx] = j
            cur += j
            idx = fidx + 1
            lp_pending = True  # vet the deviated branch with one LP bound
            advanced = True
            break
        if not advanced:
            break

    if aborted:
        upper = max(best, root_ub)
    elif initial_best and not improved:
        upper = initial_best
    else:
        upper = best
    return (best if improved or not initial_best else 0), best_js, not aborted, upper


_DUAL_DENOM = 1 << 20


def _root_lp_bounds(view: _CosetView, c: int):
    """LP-guided incumbent and a certified integer upper bound.

    The relaxation is solved in floats, but the returned upper bound comes
    from an exactly evaluated rational dual-feasible point (weak duality),
    so it is sound no matter what the solver did.  Returns
    (lower, lower_js, upper) or None when the solver failed.
    """
    from scipy.optimize import linprog

    gn = len(view.g_parts)
    mults = view.g_mults
    res = linprog(
        c=-np.ones(gn),
        A_ub=view.incidence_csr(),
        b_ub=np.full(view.num_parts, float(c)),
        bounds=[(0, mu) for mu in mults],
        method="highs",
    )
    if not res.success:  # pragma: no cover - HiGHS is reliable here
        return None
    y = np.maximum(0.0, -np.asarray(res.ineqlin.marginals))
    y_hat = [
        Fraction(max(0, int(round(v * _DUAL_DENOM))), _DUAL_DENOM) for v in y
    ]
    upper = Fraction(c) * sum(y_hat, Fraction(0))
    for g, pts in enumerate(view.g_parts):
        slack = Fraction(1) - sum((y_hat[p] for p in pts), Fraction(0))
        if slack > 0:
            upper += mults[g] * slack
    upper_int = int(upper)  # floor: optimum is integral

    # Integer incumbent: floor the primal hint, then greedily top up.
    caps = [c] * view.num_parts
    js = [0] * gn
    lower = 0
    hint = res.x
    for g in range(gn):
        j = int(hint[g] + 1e-9)
        if j <= 0:
            continue
        j = min(j, mults[g])
        for p in view.g_parts[g]:
            if caps[p] < j:
                j = caps[p]
        if j > 0:
            js[g] = j
            lower += j
            for p in view.g_parts[g]:
                caps[p] -= j
    for g in range(gn):
        room = mults[g] - js[g]
        if room <= 0:
            continue
        fit = room
        for p in view.g_parts[g]:
            if caps[p] < fit:
                fit = caps[p]
        if fit > 0:
            js[g] += fit
            lower += fit
            for p in view.g_parts[g]:
                caps[p] -= fit
    return lower, js, upper_int


_SOLVE_NODE_LIMIT = 20_000


def _solve_c_disjoint(
    view: _CosetView, c: int, target: int = 0, budget: _SearchBudget | None = None
):
    """Certified enclosure of the maximum c-disjoint count.

    Returns (lo, js, hi): a witnessed achievable count `lo` (with its
    per-group composition) and a certified upper bound `hi`.  lo == hi means
    the value is exact.  With a `target`, the search stops refining as soon
    as hi <= target (the caller treats the class as unable to improve).
    Instances the search budget cannot close come back as honest enclosures.
    """
    lp = _root_lp_bounds(view, c)
    if lp is None:  # pragma: no cover - HiGHS is reliable here
        cnt, bjs, exact, upper = _max_c_disjoint(view, c, budget=budget)
        return cnt, bjs, (cnt if exact else upper)
    lower, js, upper = lp
    if upper <= target or lower == upper:
        return lower, js, upper
    start = max(lower, target)
    cnt, bjs, exact, bb_upper = _max_c_disjoint(
        view, c, budget=budget, initial_best=start
    )
    if cnt > start:
        lower, js = cnt, bjs
    if exact:
        if cnt > start:
            return lower, js, lower  # beat the incumbent: exact optimum
        if start == lower:
            return lower, js, lower  # nothing beats the witnessed value
        return lower, js, min(upper, start)  # proved optimum <= target
    return lower, js, min(upper, bb_upper)


def max_c_disjoint_exhaustive(masks: Sequence[int], num_parts: int, c: int) -> int:
    """Reference optimum by enumerating every c-disjoint subset.

    Only capacity pruning is used, so each feasible set is visited once.
    Intended for cross-checking the branch-and-bound on small cosets.
    """
    parts_of = [tuple(b for b in range(num_parts) if (mk >> b) & 1) for mk in masks]
    caps = [c] * num_parts
    best = 0

    def rec(start: int, size: int):
        nonlocal best
        if size > best:
            best = size
        for t in range(start, len(masks)):
            ok = True
            for p in parts_of[t]:
                if caps[p] == 0:
                    ok = False
                    break
            if not ok:
                continue
            for p in parts_of[t]:
                caps[p] -= 1
            rec(t + 1, size + 1)
            for p in parts_of[t]:
                caps[p] += 1

    rec(0, 0)
    return best


# -- distances ---------------------------------------------------------------


def class_distance(
    code: StabilizerCode,
    cls: LogicalClass,
    partition: Partition,
    *,
    budget: int = DEFAULT_BUDGET,
    declared: int | None = None,
):
    """d(G): minimum support size over representatives of the class.

    Returns an int when the coset is enumerable (or a declared value is
    supplied); otherwise a non-exact interval [1, weight of the canonical
    representative].
    """
    try:
        view = _CosetView(code, cls, partition, budget)
    except BudgetExceededError:
        if declared is not None:
            return declared
        rep_w = len(support(code.logical_representative(cls), partition))
        return RationalInterval(Fraction(1), Fraction(rep_w), "canonical-representative")
    return view.distance


def min_max_distance(
    code: StabilizerCode,
    partition: Partition,
    *,
    budget: int = DEFAULT_BUDGET,
    declared: tuple[int, int] | None = None,
) -> tuple[int, int]:
    """(d_min, d_max) over all non-trivial classes; error-detecting iff d_min > 1."""
    if code.k == 0:
        raise ValueError("the code encodes no logical qudits; no classes exist")
    if code.coset_size > budget:
        if declared is not None:
            return declared
        raise BudgetExceededError(
            f"coset size {code.coset_size} exceeds budget {budget} and no "
            "declared distances were provided"
        )
    dists = [
        _CosetView(code, cls, partition, budget).distance
        for cls in code.logical_labels()
    ]
    return min(dists), max(dists)


# -- c-disjointness ----------------------------------------------------------


def verify_witness(
    code: StabilizerCode, partition: Partition, witness: DisjointWitness
) -> Fraction:
    """Re-check a declared c-disjoint set; returns its certified |A|/c."""
    seen: set[tuple] = set()
    cls = LogicalClass(witness.label)
    counts = [0] * partition.num_parts
    for op in witness.members:
        key = (op.x, op.z)
        if key in seen:
            raise WitnessError("witness set contains a duplicate element")
        seen.add(key)
        got = code.class_of(op)
        if not isinstance(got, LogicalClass) or got.label != cls.label:
            raise WitnessError(
                f"witness member {op.to_string()!r} is not in class {cls.label}"
            )
        for p in support(op, partition):
            counts[p] += 1
            if counts[p] > witness.c:
                raise WitnessError(
                    f"part {p} hosts more than c={witness.c} witness members"
                )
    return Fraction(len(witness.members), witness.c)


def c_disjointness(
    code: StabilizerCode,
    cls: LogicalClass,
    c: int,
    partition: Partition,
    *,
    budget: int = DEFAULT_BUDGET,
    witness: DisjointWitness | None = None,
    distance_hints: Mapping[tuple[int, ...], RationalInterval] | None = None,
) -> RationalInterval:
    """Delta_c(G) = max{|A| : A c-disjoint} / c as a certified interval.

    Exact (via branch-and-bound) whenever the coset fits the budget.  In
    witness mode the lower end is the re-verified witness value and the
    upper end combines |G|/c with distance-based inequalities.
    """
    if not 1 <= c <= code.coset_size:
        raise ValueError(f"c must lie in [1, {code.coset_size}], got {c}")
    try:
        view = _CosetView(code, cls, partition, budget)
    except BudgetExceededError:
        return _c_disjointness_witness_mode(
            code, cls, c, partition, witness, distance_hints
        )
    lo, _, hi = _solve_c_disjoint(view, c, node_limit=_NODE_LIMIT)
    lo_frac = max(Fraction(lo, c), Fraction(1))
    if lo == hi:
        return RationalInterval(lo_frac, lo_frac, "exhausted")
    return RationalInterval(lo_frac, Fraction(hi, c), "search-interrupted")


def _c_disjointness_witness_mode(code, cls, c, partition, witness, distance_hints):
    lo = Fraction(1)
    method = "trivial-lower"
    if witness is not None:
        if witness.c != c or witness.label != cls.label:
            raise WitnessError("witness does not match the requested class and c")
        lo = verify_witness(code, partition, witness)
        method = "witness"
    hi = Fraction(code.coset_size, c)
    if distance_hints:
        own = distance_hints.get(cls.label)
        if own is not None and own.lo > 0:
            hi = min(hi, Fraction(partition.num_parts) / own.lo)
        for other_label, other in distance_hints.items():
            if other_label == cls.label:
                continue
            if code.classes_anticommute(cls, LogicalClass(other_label)):
                hi = min(hi, other.hi)
    hi = max(hi, lo)
    return RationalInterval(lo, hi, method)


# -- disjointness ------------------------------------------------------------


@dataclass
class DisjointnessSummary:
    """Result of the c-sweep: Delta with the achieving c and per-c detail."""

    interval: RationalInterval
    achieving_c: int | None
    per_c_min: dict[int, RationalInterval]
    per_class: dict[tuple[tuple[int, ...], int], RationalInterval]
    witnesses: dict[tuple[int, ...], tuple[PauliOperator, ...]]
    exhaustive: bool

    @property
    def value(self) -> Fraction:
        return self.interval.value


def disjointness(
    code: StabilizerCode,
    partition: Partition,
    *,
    budget: int = DEFAULT_BUDGET,
    c_max: int = DEFAULT_C_MAX,
    witnesses: Iterable[DisjointWitness] = (),
    declared_distances: tuple[int, int] | None = None,
    full_table: bool = False,
) -> DisjointnessSummary:
    """Delta = max over c of the min over classes of Delta_c(G).

    The sweep covers c = 1 .. min(m^{n-k}, c_max); restricting c beyond
    m^{n-k} loses nothing since Delta_c < 1 there.  A c whose cheap cap
    cannot beat the running maximum is skipped with a certificate; with
    `full_table` every remaining class still gets a per-class entry instead
    of stopping at the first class that proves a c fruitless.  The upper
    end of the returned interval is min(d_min, N/d_max) unless the swept
    range covered every c, in which case exhaustion decides.
    """
    if code.k == 0:
        raise ValueError("the code encodes no logical qudits; no classes exist")
    if code.coset_size > budget:
        return _disjointness_witness_mode(
            code, partition, witnesses, declared_distances
        )

    labels = [cls.label for cls in code.logical_labels()]
    views = {
        lb: _CosetView(code, LogicalClass(lb), partition, budget) for lb in labels
    }
    d_min = min(v.distance for v in views.values())
    d_max = max(v.distance for v in views.values())
    num_parts = partition.num_parts
    size = code.coset_size

    def quick_hi(label: tuple[int, ...], c: int) -> Fraction:
        return min(Fraction(size, c), Fraction(num_parts, views[label].distance))

    # Classes with the smallest c-independent cap first: they prove a c
    # fruitless fastest.
    order = sorted(labels, key=lambda lb: (Fraction(num_parts, views[lb].distance), lb))

    c_top = min(size, c_max)
    per_class: dict[tuple[tuple[int, ...], int], RationalInterval] = {}
    per_c_min: dict[int, RationalInterval] = {}
    solutions: dict[tuple[tuple[int, ...], int], list[int]] = {}
    best_lo = Fraction(0)
    achieving_c: int | None = None
    swept_hi = Fraction(0)  # max over swept c of the certified per-c upper
    for c in range(1, c_top + 1):
        # A c cannot help once its cheap cap is at or below the running max.
        cheap_cap = min(quick_hi(lb, c) for lb in labels)
        if cheap_cap <= best_lo:
            per_c_min[c] = RationalInterval(
                Fraction(1), min(cheap_cap, best_lo), "skipped-no-improvement"
            )
            swept_hi = max(swept_hi, min(cheap_cap, best_lo))
            continue
        target = int(best_lo * c)  # beat the running max or prove you cannot
        c_los: list[Fraction] = []
        c_his: list[Fraction] = []
        for label in order:
            view = views[label]
            lo_cnt, js, hi_cnt = _solve_c_disjoint(view, c, target=target)
            lo_v = max(Fraction(lo_cnt, c), Fraction(1))
            hi_v = max(min(Fraction(hi_cnt, c), quick_hi(label, c)), lo_v)
            if lo_v == hi_v:
                method = "exhausted"
            elif hi_cnt <= target:
                method = "pruned-below-running-max"
            else:
                method = "search-interrupted"
            per_class[(label, c)] = RationalInterval(lo_v, hi_v, method)
            solutions[(label, c)] = js
            c_los.append(lo_v)
            c_his.append(hi_v)
            if hi_cnt <= target and not full_table:
                # this class alone caps min_G Delta_c at or below best_lo
                break
        complete = len(c_los) == len(order)
        # unexamined classes only certify Delta_c >= 1
        min_lo = min(c_los) if complete else Fraction(1)
        min_hi = max(min(c_his), min_lo)
        per_c_min[c] = RationalInterval(
            min_lo, min_hi, "exhausted" if min_lo == min_hi else "search-interrupted"
        )
        swept_hi = max(swept_hi, min_hi)
        if complete and min_lo > best_lo:
            best_lo = min_lo
            achieving_c = c

    # Over [1, c_top] every c was solved, pruned below the running maximum,
    # or enclosed; swept_hi bounds the max over that whole range.
    if c_top == size:
        hi = max(swept_hi, best_lo)
        method = "exhausted" if hi == best_lo else "search-interrupted"
        interval = RationalInterval(best_lo, hi, method)
    else:
        hi = min(Fraction(d_min), Fraction(num_parts, d_max))
        interval = RationalInterval(best_lo, max(hi, best_lo), "swept-lo+lemma-hi")

    wit: dict[tuple[int, ...], tuple[PauliOperator, ...]] = {}
    if achieving_c is not None:
        for label in views:
            wit[label] = views[label].witness_ops(solutions[(label, achieving_c)])
    return DisjointnessSummary(
        interval=interval,
        achieving_c=achieving_c,
        per_c_min=per_c_min,
        per_class=per_class,
        witnesses=wit,
        exhaustive=True,
    )


def _disjointness_witness_mode(code, partition, witnesses, declared_distances):
    labels = [cls.label for cls in code.logical_labels()]
    by_c: dict[int, dict[tuple[int, ...], DisjointWitness]] = {}
    for w in witnesses:
        by_c.setdefault(w.c, {})[w.label] = w
    per_class: dict[tuple[tuple[int, ...], int], RationalInterval] = {}
    wit_out: dict[tuple[int, ...], tuple[PauliOperator, ...]] = {}
    best_lo = Fraction(1)
    achieving_c = None
    for c in sorted(by_c):
        table = by_c[c]
        if set(table) != set(labels):
            continue  # a lower bound on Delta needs every class covered
        vals = []
        for label in labels:
            v = verify_witness(code, partition, table[label])
            per_class[(label, c)] = RationalInterval(v, Fraction(code.coset_size, c), "witness")
            vals.append(v)
        mn = min(vals)
        if mn > best_lo:
            best_lo = mn
            achieving_c = c
            wit_out = {label: table[label].members for label in labels}
    if declared_distances is not None:
        d_min, d_max = declared_distances
        hi = min(Fraction(d_min), Fraction(partition.num_parts, d_max))
    else:
        hi = Fraction(partition.num_parts)
    hi = max(hi, best_lo)
    interval = RationalInterval(best_lo, hi, "witness-backed")
    return DisjointnessSummary(
        interval=interval,
        achieving_c=achieving_c,
        per_c_min={},
        per_class=per_class,
        witnesses=wit_out,
        exhaustive=False,
    )


# -- cleaning and scrubbing ---------------------------------------------------


def clean(
    code: StabilizerCode,
    cls: LogicalClass,
    region: Iterable[int],
    partition: Partition,
) -> PauliOperator | None:
    """A representative of the class with no support on the given parts.

    Existence is guaranteed whenever |region| < d_min; for larger regions
    the search still runs and may legitimately come back empty, in which
    case None is returned with a warning.
    """
    region = sorted(set(region))
    qudits = sorted(partition.qudits_of(region))
    rep = code.logical_representative(cls)
    rep_v = _pauli_to_vec(rep)
    gen_mat = code._gen_mat
    m, n = code.m, code.n
    rows = []
    rhs = []
    for q in qudits:
        rows.append(gen_mat[:, q])
        rhs.append(-rep_v[q])
        rows.append(gen_mat[:, n + q])
        rhs.append(-rep_v[n + q])
    if not rows:
        return rep
    a = np.array(rows, dtype=np.int64) % m
    b = np.array(rhs, dtype=np.int64) % m
    sol = linalg.solve_mod(a, b, m)
    if sol is None:
        warnings.warn(
            "no representative avoids the region; it is at least min-distance sized",
            stacklevel=2,
        )
        return None
    vec = (rep_v + sol @ gen_mat) % m
    out = PauliOperator(m, tuple(int(e) for e in vec[:n]), tuple(int(e) for e in vec[n:]), 0)
    assert not (support(out, partition) & set(region))
    return out


def scrub(
    code: StabilizerCode,
    cls: LogicalClass,
    region: Iterable[int],
    c: int,
    partition: Partition,
    *,
    budget: int = DEFAULT_BUDGET,
    witness: DisjointWitness | None = None,
) -> PauliOperator:
    """The member of a maximal c-disjoint set with least overlap with the region.

    Guarantees Delta_c(G) * |supp(g) & H| <= |H| for the certificate used.
    """
    h = frozenset(region)
    if witness is not None:
        value = verify_witness(code, partition, witness)
        members = witness.members
    else:
        view = _CosetView(code, cls, partition, budget)
        cnt, js, _ = _solve_c_disjoint(view, c)
        members = view.witness_ops(js)
        value = Fraction(cnt, c)
    best_op = None
    best_overlap = None
    for op in members:
        ov = len(support(op, partition) & h)
        if best_overlap is None or ov < best_overlap:
            best_op, best_overlap = op, ov
    if best_op is None:
        raise ValueError("empty c-disjoint certificate")
    assert value * best_overlap <= len(h)
    return best_op


def multiblock_scrub_bound(per_block_deltas: Sequence, h_size: int) -> Fraction:
    """Guaranteed overlap bound (1 - prod_b (1 - 1/Delta_b)) * |H|.

    One certified Delta value per non-trivial block coset; a block with
    Delta = 1 makes the bound vacuous (equal to |H|).
    """
    prod = Fraction(1)
    for d in per_block_deltas:
        dv = d.lo if isinstance(d, RationalInterval) else _frac(d)
        if dv < 1:
            raise ValueError(f"invalid disjointness certificate {dv} < 1")
        prod *= 1 - Fraction(1) / dv
    return (1 - prod) * h_size


# -- report assembly -----------------------------------------------------------


@dataclass
class DeclaredMetrics:
    """Family-declared values used when exhaustive search is infeasible.

    `distance_reps` exhibit constructive upper bounds on each class
    distance; `d_min` is trusted as declared (and spot-verified wherever the
    budget allows); witnesses are always re-verified.
    """

    d_min: int
    d_max: int
    delta_lo: Fraction
    delta_witnesses: tuple[DisjointWitness, ...] = ()
    distance_reps: Mapping[tuple[int, ...], PauliOperator] = field(default_factory=dict)


@dataclass
class MetricsReport:
    """Every computed metric for one (code, partition) pair, with provenance."""

    n: int
    k: int
    m: int
    num_parts: int
    class_distances: dict[tuple[int, ...], RationalInterval]
    d_min: RationalInterval
    d_max: RationalInterval
    per_class_c: dict[tuple[tuple[int, ...], int], RationalInterval]
    per_c_min: dict[int, RationalInterval]
    delta: RationalInterval
    achieving_c: int | None
    delta_witnesses: dict[tuple[int, ...], tuple[PauliOperator, ...]]
    exhaustive: bool
    notes: tuple[str, ...] = ()

    @property
    def degraded(self) -> bool:
        return not self.exhaustive

    def to_json_dict(self, include_witnesses: bool = False) -> dict:
        def label_key(label):
            return ",".join(str(int(v)) for v in label)

        per_class_table: dict[str, dict[str, dict]] = {}
        for (lb, c), iv in self.per_class_c.items():
            per_class_table.setdefault(label_key(lb), {})[str(c)] = iv.to_json_dict()
        out = {
            "d_min": self.d_min.to_json_dict(),
            "d_max": self.d_max.to_json_dict(),
            "class_distances": {
                label_key(lb): iv.to_json_dict() for lb, iv in self.class_distances.items()
            },
            "c_disjointness": {
                str(c): iv.to_json_dict() for c, iv in self.per_c_min.items()
            },
            "c_disjointness_per_class": per_class_table,
            "disjointness": {
                **self.delta.to_json_dict(),
                "achieving_c": self.achieving_c,
            },
            "exhaustive": self.exhaustive,
            "notes": list(self.notes),
        }
        if include_witnesses:
            out["delta_witnesses"] = {
                label_key(lb): [op.to_string() for op in ops]
                for lb, ops in self.delta_witnesses.items()
            }
        return out


def compute_metrics(
    code: StabilizerCode,
    partition: Partition,
    *,
    budget: int = DEFAULT_BUDGET,
    c_max: int = DEFAULT_C_MAX,
    declared: DeclaredMetrics | None = None,
    witnesses: Iterable[DisjointWitness] = (),
) -> MetricsReport:
    """Full metric computation with graceful degradation past the budget."""
    if code.k == 0:
        raise ValueError("the code encodes no logical qudits")
    labels = [cls.label for cls in code.logical_labels()]
    notes: list[str] = []

    if code.coset_size <= budget:
        views = {
            lb: _CosetView(code, LogicalClass(lb), partition, budget) for lb in labels
        }
        class_dists = {
            lb: RationalInterval.point(v.distance, "exhaustive")
            for lb, v in views.items()
        }
        dmin = min(v.distance for v in views.values())
        dmax = max(v.distance for v in views.values())
        d_min_iv = RationalInterval.point(dmin, "exhaustive")
        d_max_iv = RationalInterval.point(dmax, "exhaustive")
        summary = disjointness(
            code, partition, budget=budget, c_max=c_max, full_table=True
        )
        return MetricsReport(
            n=code.n, k=code.k, m=code.m, num_parts=partition.num_parts,
            class_distances=class_dists,
            d_min=d_min_iv, d_max=d_max_iv,
            per_class_c=summary.per_class,
            per_c_min=summary.per_c_min,
            delta=summary.interval,
            achieving_c=summary.achieving_c,
            delta_witnesses=summary.witnesses,
            exhaustive=True,
            notes=tuple(notes),
        )

    notes.append(
        f"coset size {code.coset_size} exceeds budget {budget}; "
        "using declared values and witnesses"
    )
    all_wit = list(witnesses)
    if declared is not None:
        all_wit.extend(declared.delta_witnesses)

    class_dists: dict[tuple[int, ...], RationalInterval] = {}
    lo_floor = declared.d_min if declared is not None else 1
    for lb in labels:
        rep = None
        if declared is not None:
            rep = declared.distance_reps.get(lb)
        if rep is None:
            rep = code.logical_representative(LogicalClass(lb))
        else:
            got = code.class_of(rep)
            if not isinstance(got, LogicalClass) or got.label != lb:
                raise WitnessError(f"declared representative for {lb} is misclassed")
        w = len(support(rep, partition))
        class_dists[lb] = RationalInterval(
            Fraction(min(lo_floor, w)), Fraction(w), "declared+representative"
        )
    if declared is not None:
        d_min_iv = RationalInterval.point(declared.d_min, "declared")
        rep_max = max(int(iv.hi) for iv in class_dists.values())
        d_max_iv = RationalInterval(
            Fraction(min(declared.d_max, rep_max)),
            Fraction(rep_max),
            "declared+representative",
        )
        declared_pair = (declared.d_min, declared.d_max)
    else:
        d_min_iv = RationalInterval(Fraction(1), min(iv.hi for iv in class_dists.values()),
                                    "representative-only")
        d_max_iv = RationalInterval(Fraction(1), max(iv.hi for iv in class_dists.values()),
                                    "representative-only")
        declared_pair = None

    summary = _disjointness_witness_mode(code, partition, all_wit, declared_pair)
    return MetricsReport(
        n=code.n, k=code.k, m=code.m, num_parts=partition.num_parts,
        class_distances=class_dists,
        d_min=d_min_iv, d_max=d_max_iv,
        per_class_c=summary.per_class,
        per_c_min=summary.per_c_min,
        delta=summary.interval,
        achieving_c=summary.achieving_c,
        delta_witnesses=summary.witnesses,
        exhaustive=False,
        notes=tuple(notes),
    )


# -- witness files -------------------------------------------------------------


def loads_witness_file(
    text: str, code: StabilizerCode, partition: Partition
) -> list[DisjointWitness]:
    """Parse and verify `class <a...> c <c>` blocks of Pauli strings."""
    witnesses: list[DisjointWitness] = []
    label: tuple[int, ...] | None = None
    c: int | None = None
    members: list[PauliOperator] = []

    def flush(lineno):
        nonlocal label, c, members
        if label is None:
            return
        if not members:
            raise CodeFileError("witness block has no members", lineno)
        w = DisjointWitness(label, c, tuple(members))
        verify_witness(code, partition, w)
        witnesses.append(w)
        label, c, members = None, None, []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("class"):
            flush(lineno)
            tokens = line.split()
            try:
                c_pos = tokens.index("c")
                label = tuple(int(t) for t in tokens[1:c_pos])
                c = int(tokens[c_pos + 1])
            except (ValueError, IndexError):
                raise CodeFileError(
                    "expected 'class <a-vector> c <c>'", lineno
                ) from None
            if len(label) != 2 * code.k or not any(label):
                raise CodeFileError(f"bad class label {label}", lineno)
        else:
            if label is None:
                raise CodeFileError("witness member before any 'class' header", lineno)
            try:
                members.append(pauli_from_string(line, code.m))
            except Exception as exc:
                raise CodeFileError(str(exc), lineno) from None
    flush(None)
    return witnesses


def dumps_witness_file(witnesses: Iterable[DisjointWitness]) -> str:
    lines = []
    for w in witnesses:
        lines.append("class " + " ".join(str(v) for v in w.label) + f" c {w.c}")
        lines.extend(op.to_string() for op in w.members)
    return "\n".join(lines) + "\n"
