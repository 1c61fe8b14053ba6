"""Family builders and their declared metric packages."""

from fractions import Fraction

import numpy as np
import pytest

from disjointness import LogicalClass, support
from disjointness.bounds import FamilyExponents
from disjointness.families import (
    FAMILY_BUILDERS,
    bacon_shor_z,
    concatenated_105,
    five_qubit,
    four_two_two,
    reed_muller,
    surface_code,
    toric_family_exponents,
    verify_declared,
)
from disjointness.metrics import min_max_distance


def test_four_two_two_shape_and_declared():
    inst = four_two_two()
    assert (inst.code.n, inst.code.k) == (4, 2)
    assert verify_declared(inst)["exhaustive"]


def test_five_qubit_shape_and_declared():
    inst = five_qubit()
    assert (inst.code.n, inst.code.k) == (5, 1)
    assert inst.code.coset_size == 16
    assert verify_declared(inst)["exhaustive"]


def test_reed_muller_steane():
    inst = reed_muller(2)
    assert (inst.code.n, inst.code.k) == (7, 1)
    assert inst.declared.d_min == 3 and inst.declared.d_max == 3
    assert inst.declared.delta_lo == Fraction(7, 3)
    assert verify_declared(inst)["exhaustive"]


def test_reed_muller_d3_structure():
    inst = reed_muller(3)
    assert (inst.code.n, inst.code.k) == (15, 1)
    assert inst.declared.d_max == 7
    assert inst.declared.delta_lo == Fraction(15, 7)
    # witness-only verification (exhaustive sweep is exercised in acceptance)
    summary = verify_declared(inst, budget=1024)
    assert summary["checked"] and not summary["exhaustive"]
    assert len(inst.declared.delta_witnesses) == 3
    for w in inst.declared.delta_witnesses:
        assert len(w.members) == 15 and w.c == 7


@pytest.mark.parametrize("D", [2, 3])
def test_reed_muller_minimal_support_count(D):
    # among the 2^(D+1) X-type representatives, all but the full string
    # have minimal support
    inst = reed_muller(D)
    cls = LogicalClass((1, 0))
    d_max = 2**D - 1
    x_type = [op for op in inst.code.enumerate_class(cls) if not any(op.z)]
    assert len(x_type) == 2 ** (D + 1)
    count = sum(1 for op in x_type if len(support(op, inst.partition)) == d_max)
    assert count == 2 ** (D + 1) - 1


def test_reed_muller_rejects_small_d():
    with pytest.raises(ValueError):
        reed_muller(1)


def test_surface_code_small_instances():
    s2 = surface_code(2)
    assert (s2.code.n, s2.code.k) == (5, 1)
    assert s2.code.generator_strings[0] == "XXIIX"
    assert min_max_distance(s2.code, s2.partition) == (2, 3)
    assert verify_declared(s2)["exhaustive"]
    s3 = surface_code(3)
    assert (s3.code.n, s3.code.k) == (13, 1)
    assert min_max_distance(s3.code, s3.partition) == (3, 5)
    with pytest.raises(ValueError):
        surface_code(1)


def test_surface_witnesses_have_the_advertised_shape():
    s3 = surface_code(3)
    for w in s3.declared.delta_witnesses:
        assert w.c == 2 and len(w.members) == 3


def test_bacon_shor_instances():
    sym = bacon_shor_z(2, 1)
    assert sym.code.n == 4
    assert min_max_distance(sym.code, sym.partition) == (2, 3)
    asym = bacon_shor_z(2, 2)
    assert asym.code.n == 8
    assert min_max_distance(asym.code, asym.partition) == (2, 5)
    assert verify_declared(asym)["exhaustive"]
    assert asym.exponents == FamilyExponents(1, 2, 1)


def test_bacon_shor_fractional_aspect():
    inst = bacon_shor_z(4, Fraction(3, 2))  # 4 x 8 lattice
    assert inst.code.n == 32
    assert inst.declared.d_max == 8 + 4 - 1
    with pytest.raises(ValueError):
        bacon_shor_z(2, Fraction(3, 2))  # 2^(3/2) is not an integer
    with pytest.raises(ValueError):
        bacon_shor_z(2, Fraction(1, 2))


def test_concatenated_105_both_partitions():
    cols = concatenated_105("columns")
    assert (cols.code.n, cols.code.k) == (105, 1)
    assert cols.partition.num_parts == 15
    assert all(len(p) == 7 for p in cols.partition.parts)
    assert cols.declared.d_max == 7
    assert cols.declared.delta_lo == Fraction(15, 7)
    summary = verify_declared(cols)
    assert summary["checked"] and not summary["exhaustive"]

    rows = concatenated_105("rows")
    assert rows.partition.num_parts == 7
    assert all(len(p) == 15 for p in rows.partition.parts)
    assert rows.declared.d_max == 3
    assert rows.declared.delta_lo == Fraction(7, 3)
    assert verify_declared(rows)["checked"]

    with pytest.raises(ValueError):
        concatenated_105("diagonals")


def test_concatenated_105_distance_representatives():
    cols = concatenated_105("columns")
    for lb, rep in cols.declared.distance_reps.items():
        got = cols.code.class_of(rep)
        assert got.label == lb
    z_rep = cols.declared.distance_reps[(0, 1)]
    assert len(support(z_rep, cols.partition)) == 3


def test_toric_exponents():
    assert toric_family_exponents(2, 1) == FamilyExponents(1, 1, 1)
    assert toric_family_exponents(5, 2) == FamilyExponents(2, 3, 2)
    with pytest.raises(ValueError):
        toric_family_exponents(2, 2)
    with pytest.raises(ValueError):
        toric_family_exponents(1, 1)


def test_family_registry():
    assert set(FAMILY_BUILDERS) == {
        "c422", "five-qubit", "reed-muller", "surface", "bacon-shor", "c105"
    }
