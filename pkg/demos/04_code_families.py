"""The built-in code families and their certified metric reports.

Run: python demos/04_code_families.py    (about a minute: RM-15 is included)
"""

import time

from disjointness import compute_metrics
from disjointness.bounds import transversal_level_bound
from disjointness.families import (
    bacon_shor_z,
    concatenated_105,
    five_qubit,
    four_two_two,
    reed_muller,
    surface_code,
    verify_declared,
)
from disjointness.metrics import frac_str

print(f"{'family':28s} {'[[n,k]]':9s} {'N':>3s} {'d_min':>6s} {'d_max':>6s} "
      f"{'disjointness':>14s} {'M':>4s} {'mode':>10s} {'t/s':>6s}")

instances = [
    four_two_two(),
    five_qubit(),
    reed_muller(2),
    reed_muller(3),
    surface_code(2),
    surface_code(3),
    bacon_shor_z(2, 2),
    concatenated_105("columns"),
    concatenated_105("rows"),
]

for inst in instances:
    start = time.monotonic()
    # large-coset instances fall back to their declared values + witnesses
    report = compute_metrics(
        inst.code, inst.partition, declared=inst.declared, c_max=8
    )
    bound = transversal_level_bound(
        report.d_min.lo, report.d_max.hi, max(report.delta.lo, 1)
    )
    delta = (
        frac_str(report.delta.lo)
        if report.delta.exact
        else f"[{frac_str(report.delta.lo)},{frac_str(report.delta.hi)}]"
    )
    mode = "exhaustive" if report.exhaustive else "declared"
    name = inst.name if inst.name != "c105" else f"c105/{inst.partition.num_parts}p"
    print(
        f"{name:28s} [[{inst.code.n},{inst.code.k}]]"
        f"{'':{max(0, 9 - len(f'[[{inst.code.n},{inst.code.k}]]'))}s}"
        f" {inst.partition.num_parts:3d} {frac_str(report.d_min.lo):>6s}"
        f" {frac_str(report.d_max.hi):>6s} {delta:>14s} {str(bound.level):>4s}"
        f" {mode:>10s} {time.monotonic() - start:6.1f}"
    )

# ---------------------------------------------------------------------------
# Declared values never go unchecked: witnesses are re-verified on load and
# small instances are compared against exhaustive search.
# ---------------------------------------------------------------------------
print("\ndeclared-value verification:")
for inst in (four_two_two(), surface_code(2), bacon_shor_z(2, 2)):
    print(f"  {inst.name:12s} ->", verify_declared(inst))
