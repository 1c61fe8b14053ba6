"""Distances, c-disjoint sets, cleaning and scrubbing on two small codes.

Run: python demos/02_distance_and_disjointness.py
"""

from disjointness import (
    LogicalClass,
    c_disjointness,
    clean,
    compute_metrics,
    pauli_from_string,
    scrub,
    support,
)
from disjointness.families import five_qubit, four_two_two

# ---------------------------------------------------------------------------
# The [[4,2]] code <XXXX, ZZZZ>.  The class of X1X2 has exactly four
# representatives; listing them shows why its 1-, 2- and 3-disjointness
# are 2, 3/2 and 4/3.
# ---------------------------------------------------------------------------
inst = four_two_two()
code, part = inst.code, inst.partition
cls = code.class_of(pauli_from_string("XXII", 2))
print("representatives of the X1X2 class:")
for op in code.enumerate_class(cls):
    print("   ", op.to_string())
for c in (1, 2, 3):
    iv = c_disjointness(code, cls, c, part)
    print(f"Delta_{c} = {iv.lo}  (exact: {iv.exact})")

# ---------------------------------------------------------------------------
# Cleaning: find a representative avoiding a region.  Only one of the four
# representatives avoids qubit 0.
# ---------------------------------------------------------------------------
avoiding = clean(code, cls, [0], part)
print("\nrepresentative avoiding qubit 0:", avoiding.to_string())

# Scrubbing: the member of a maximal c-disjoint set with least overlap with
# a region H; the certified guarantee is Delta_c * |overlap| <= |H|.
picked = scrub(code, cls, {0, 1}, 1, part)
print("scrubbed against H = {0, 1}:    ", picked.to_string())

# ---------------------------------------------------------------------------
# The five-qubit code: d_min = d_max = 3 and disjointness exactly 5/3,
# achieved at c = 3.  The report carries witnesses for every class.
# ---------------------------------------------------------------------------
five = five_qubit()
report = compute_metrics(five.code, five.partition)
print("\nfive-qubit code:")
print("  d_min =", report.d_min.value, " d_max =", report.d_max.value)
print("  disjointness =", report.delta.value, " at c =", report.achieving_c)
for label, members in sorted(report.delta_witnesses.items()):
    sizes = [len(support(op, five.partition)) for op in members]
    print(f"  witness for class {label}: {len(members)} members, weights {sizes}")
