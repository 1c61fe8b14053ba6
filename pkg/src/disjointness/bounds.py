"""Clifford-hierarchy level bounds from certified code metrics.

Every function takes exact rationals, evaluates the relevant strict
inequality for M = 1, 2, ... and returns the smallest M that satisfies it
(with the comparisons at M and M-1 recorded), or level None when no M up to
the search cap works.  Soundness direction: callers should feed a lower
bound for d_min and the disjointness, and an upper bound for d_max;
weakening a certificate can then only raise the returned level.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

from .codes import CircuitShape

DEFAULT_LEVEL_CAP = 30


class InequalityCheck(NamedTuple):
    level: int
    lhs: Fraction
    rhs: Fraction
    holds: bool


@dataclass(frozen=True)
class LevelBound:
    """Outcome of one level-bound theorem evaluation."""

    level: int | None
    theorem: str
    inputs: dict
    trace: tuple[InequalityCheck, ...]

    @property
    def bounded(self) -> bool:
        return self.level is not None

    def to_json_dict(self) -> dict:
        from .metrics import frac_str

        def enc(v):
            if isinstance(v, Fraction):
                return frac_str(v)
            return v

        return {
            "theorem": self.theorem,
            "level": self.level,
            "inputs": {k: enc(v) for k, v in sorted(self.inputs.items())},
            "trace": [
                {"M": t.level, "lhs": frac_str(t.lhs), "rhs": frac_str(t.rhs), "holds": t.holds}
                for t in self.trace
            ],
        }


@dataclass(frozen=True)
class FamilyExponents:
    """Growth exponents of (d_min, d_max, Delta) along a code family."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        if self.alpha > self.beta:
            raise ValueError("d_min cannot outgrow d_max (alpha <= beta required)")


def _check_positive(**vals) -> None:
    for name, v in vals.items():
        if Fraction(v) < 1:
            raise ValueError(f"{name} must be at least 1, got {v}")


def _scan(
    theorem: str,
    inputs: dict,
    condition: Callable[[int], tuple[Fraction, Fraction]],
    cap: int,
    hopeless: Callable[[int], bool] | None = None,
) -> LevelBound:
    """Find the smallest M with lhs(M) < rhs(M); record M-1 and M checks."""
    trace: list[InequalityCheck] = []
    prev: InequalityCheck | None = None
    for level in range(1, cap + 1):
        lhs, rhs = condition(level)
        check = InequalityCheck(level, lhs, rhs, lhs < rhs)
        if check.holds:
            if prev is not None:
                trace.append(prev)
            trace.append(check)
            return LevelBound(level, theorem, inputs, tuple(trace))
        prev = check
        if hopeless is not None and hopeless(level):
            break
    if prev is not None:
        trace.append(prev)
    return LevelBound(None, theorem, inputs, tuple(trace))


def transversal_level_bound(
    d_min, d_max, delta_lo, *, cap: int = DEFAULT_LEVEL_CAP
) -> LevelBound:
    """Smallest M with d_max < d_min * delta^(M-1); transversal gates sit in C_M."""
    d_min, d_max, delta_lo = Fraction(d_min), Fraction(d_max), Fraction(delta_lo)
    _check_positive(d_min=d_min, d_max=d_max, delta_lo=delta_lo)
    inputs = {"d_min": d_min, "d_max": d_max, "delta_lo": delta_lo}

    def cond(level: int):
        return d_max, d_min * delta_lo ** (level - 1)

    return _scan(
        "transversal",
        inputs,
        cond,
        cap,
        hopeless=(lambda level: True) if delta_lo == 1 else None,
    )


def cleaning_level_bound(d_min, d_max, *, cap: int = DEFAULT_LEVEL_CAP) -> LevelBound:
    """Smallest M with d_max < d_min + (M-1)(d_min - 1); none when d_min = 1."""
    d_min, d_max = Fraction(d_min), Fraction(d_max)
    _check_positive(d_min=d_min, d_max=d_max)
    inputs = {"d_min": d_min, "d_max": d_max}

    def cond(level: int):
        return d_max, d_min + (level - 1) * (d_min - 1)

    return _scan(
        "cleaning",
        inputs,
        cond,
        cap,
        hopeless=(lambda level: True) if d_min == 1 else None,
    )


def saturated_block_count(r: int, num_parts: int, coset_size: int) -> int:
    """r' = min(r, N! * m^(n-k)), short-circuited before the factorial blows up."""
    if r < 1:
        raise ValueError("block count must be at least 1")
    cap = coset_size
    if cap >= r:
        return r
    for i in range(2, num_parts + 1):
        cap *= i
        if cap >= r:
            return r
    return cap


def _multiblock_condition(d_min, d_max, delta_lo, r_eff, doubled: bool):
    front = Fraction(2 if doubled else 1) * r_eff * d_max
    shrink = 1 - (1 - Fraction(1) / delta_lo) ** r_eff

    def cond(level: int):
        return front * shrink ** (level - 1), d_min

    return cond


def multiblock_level_bound(
    d_min, d_max, delta_lo, r: int, num_parts: int, coset_size: int,
    *, cap: int = DEFAULT_LEVEL_CAP,
) -> LevelBound:
    """Level bound for transversal gates across r codeblocks of one code.

    Condition: r' * d_max * (1 - (1 - 1/Delta)^{r'})^{M-1} < d_min with
    r' = min(r, N! * m^{n-k}).  For r = 1 this is the transversal bound.
    """
    d_min, d_max, delta_lo = Fraction(d_min), Fraction(d_max), Fraction(delta_lo)
    _check_positive(d_min=d_min, d_max=d_max, delta_lo=delta_lo)
    r_eff = saturated_block_count(r, num_parts, coset_size)
    inputs = {
        "d_min": d_min, "d_max": d_max, "delta_lo": delta_lo,
        "r": r, "r_effective": r_eff,
    }
    cond = _multiblock_condition(d_min, d_max, delta_lo, r_eff, doubled=False)
    return _scan(
        "multiblock",
        inputs,
        cond,
        cap,
        hopeless=(lambda level: True) if delta_lo == 1 else None,
    )


def shallow_level_bound(
    d_min, d_max, delta_lo, shape: CircuitShape, *, cap: int = DEFAULT_LEVEL_CAP
) -> LevelBound:
    """Level bound for q-local depth-h circuits.

    Condition: d_max * q^((2^M - 1) h) < d_min * delta^(M-1).  For q > 1
    no satisfying M may exist; the scan stops as soon as the left side both
    fails and provably outgrows the right side forever after.
    """
    d_min, d_max, delta_lo = Fraction(d_min), Fraction(d_max), Fraction(delta_lo)
    _check_positive(d_min=d_min, d_max=d_max, delta_lo=delta_lo)
    q, h = shape.q, shape.h
    inputs = {"d_min": d_min, "d_max": d_max, "delta_lo": delta_lo, "q": q, "h": h}

    def cond(level: int):
        return d_max * Fraction(q) ** ((2**level - 1) * h), d_min * delta_lo ** (level - 1)

    def hopeless(level: int) -> bool:
        if q == 1:
            return delta_lo == 1
        # After a failure at M, the ratio lhs/rhs grows by q^(2^M h)/delta
        # every step; once that factor exceeds 1 the inequality stays false.
        exp = (2**level) * h
        if exp >= delta_lo.numerator.bit_length():
            return True  # q^exp >= 2^exp > delta
        return Fraction(q) ** exp > delta_lo

    return _scan("shallow", inputs, cond, cap, hopeless=hopeless)


def asymptotic_level_bound(
    exps: FamilyExponents, *, cap: int = DEFAULT_LEVEL_CAP
) -> LevelBound:
    """Smallest M with beta - alpha - (M-1) gamma < 0 (vanishing-ratio limit)."""
    inputs = {"alpha": exps.alpha, "beta": exps.beta, "gamma": exps.gamma}
    if exps.gamma <= 0:
        return LevelBound(None, "asymptotic", inputs, ())

    def cond(level: int):
        return exps.beta - exps.alpha, (level - 1) * exps.gamma

    return _scan("asymptotic", inputs, cond, cap)


def permuting_level_bound(
    d_min, d_max, delta_lo, r: int, num_parts: int, coset_size: int,
    *, cap: int = DEFAULT_LEVEL_CAP,
) -> LevelBound:
    """Level bound for transversal gates composed with part permutations.

    Single block: 2 d_max < d_min * delta^(M-1).  Across r blocks the
    multiblock condition applies with its leading term doubled.
    """
    d_min, d_max, delta_lo = Fraction(d_min), Fraction(d_max), Fraction(delta_lo)
    _check_positive(d_min=d_min, d_max=d_max, delta_lo=delta_lo)
    hopeless = (lambda level: True) if delta_lo == 1 else None
    if r == 1:
        inputs = {"d_min": d_min, "d_max": d_max, "delta_lo": delta_lo, "r": 1}

        def cond(level: int):
            return 2 * d_max, d_min * delta_lo ** (level - 1)

        return _scan("permuting-single", inputs, cond, cap, hopeless=hopeless)
    r_eff = saturated_block_count(r, num_parts, coset_size)
    inputs = {
        "d_min": d_min, "d_max": d_max, "delta_lo": delta_lo,
        "r": r, "r_effective": r_eff,
    }
    cond = _multiblock_condition(d_min, d_max, delta_lo, r_eff, doubled=True)
    return _scan("permuting-multi", inputs, cond, cap, hopeless=hopeless)


@dataclass(frozen=True)
class ToffoliVerdict:
    excluded: bool
    reason: str

    def __bool__(self) -> bool:
        return self.excluded


def toffoli_excluded(d_min: int) -> ToffoliVerdict:
    """Whether a transversal Toffoli is ruled out (any error-detecting code).

    A transversal Toffoli would bootstrap controlled-X gates with any number
    of controls, reaching every hierarchy level, which contradicts the finite
    multiblock level bound that holds whenever d_min > 1.
    """
    if d_min > 1:
        return ToffoliVerdict(
            True,
            "error-detecting (d_min > 1): a transversal Toffoli would generate "
            "C^wX at every level w+1, contradicting the finite multiblock bound",
        )
    return ToffoliVerdict(
        False,
        "d_min = 1, so the disjointness equals 1 and no finite level bound applies",
    )
