"""Every level-bound evaluator on the numbers of the standard families.

Run: python demos/03_level_bounds.py
"""

from fractions import Fraction

from disjointness import CircuitShape
from disjointness.bounds import (
    FamilyExponents,
    asymptotic_level_bound,
    cleaning_level_bound,
    multiblock_level_bound,
    permuting_level_bound,
    shallow_level_bound,
    toffoli_excluded,
    transversal_level_bound,
)

# ---------------------------------------------------------------------------
# Transversal gates on a single codeblock: smallest M with
# d_max < d_min * Delta^(M-1).
# ---------------------------------------------------------------------------
rows = [
    ("five-qubit", 3, 3, Fraction(5, 3)),
    ("Steane", 3, 3, Fraction(7, 3)),
    ("RM-15", 3, 7, Fraction(15, 7)),
    ("[[105,1]] by columns", 3, 7, Fraction(15, 7)),
    ("[[105,1]] by rows", 3, 3, Fraction(7, 3)),
]
print("transversal bounds:")
for name, dmin, dmax, delta in rows:
    b = transversal_level_bound(dmin, dmax, delta)
    print(f"  {name:22s} (d_min={dmin}, d_max={dmax}, Delta={delta})  ->  M = {b.level}")

# ---------------------------------------------------------------------------
# The cleaning-only fallback d_max < d_min + (M-1)(d_min-1) is much looser:
# on l x l^2 lattices it only gives a level linear in l.
# ---------------------------------------------------------------------------
print("\ncleaning-only bounds on (l, l^2 + l - 1):")
for l in (3, 5, 8):
    b = cleaning_level_bound(l, l * l + l - 1)
    print(f"  l = {l}: M = {b.level}")

# ---------------------------------------------------------------------------
# r codeblocks: r' = min(r, N! m^(n-k)) and the shrink factor
# 1 - (1 - 1/Delta)^(r').  For the five-qubit code and r = 2 the pivot is
# the exact comparison (21/25)^4 < 1/2 <= (21/25)^3.
# ---------------------------------------------------------------------------
b = multiblock_level_bound(3, 3, Fraction(5, 3), 2, 5, 16)
print("\nfive-qubit, two codeblocks: M =", b.level)
for check in b.trace:
    print(f"  M = {check.level}: {check.lhs} < {check.rhs} ? {check.holds}")

# ---------------------------------------------------------------------------
# Shallow circuits: q-local depth-h.  For q > 1 no level may satisfy the
# inequality; the evaluator proves divergence instead of looping.
# ---------------------------------------------------------------------------
print("\nshallow bounds:")
print("  toy (100, 199, 50), q=2 h=1:", shallow_level_bound(100, 199, 50, CircuitShape(2, 1)).level)
print("  RM-15 numbers,      q=2 h=2:", shallow_level_bound(3, 7, Fraction(15, 7), CircuitShape(2, 2)).level)

# ---------------------------------------------------------------------------
# Code families: if d_max/(d_min * Delta^(M-1)) -> 0, constant-depth
# circuits of any constant locality sit in level M.
# ---------------------------------------------------------------------------
print("\nasymptotic bounds:")
print("  surface family (1, 1, 1):        M =",
      asymptotic_level_bound(FamilyExponents(1, 1, 1)).level)
for a in (Fraction(3, 2), 2, 3):
    exps = FamilyExponents(1, Fraction(a), 1)
    print(f"  Bacon-Shor aspect a = {a}:        M =", asymptotic_level_bound(exps).level)
for D, s in ((3, 1), (5, 2), (6, 3)):
    exps = FamilyExponents(s, D - s, s)
    print(f"  D={D} toric-like, s = {s}:          M =", asymptotic_level_bound(exps).level)

# ---------------------------------------------------------------------------
# Allowing part permutations doubles the leading support term.
# ---------------------------------------------------------------------------
print("\npermuting-transversal, five-qubit, one block: M =",
      permuting_level_bound(3, 3, Fraction(5, 3), 1, 5, 16).level)

# ---------------------------------------------------------------------------
# Any error-detecting code refuses a transversal Toffoli: it would
# bootstrap C^wX through every level of the hierarchy.
# ---------------------------------------------------------------------------
verdict = toffoli_excluded(3)
print("\nToffoli on an error-detecting code:", "excluded" if verdict else "allowed")
print(" ", verdict.reason)
