"""Stabilizer code construction, cosets, and multiblock fusion."""

import numpy as np
import pytest

from disjointness import (
    BudgetExceededError,
    CodeConstructionError,
    CodeFileError,
    LogicalClass,
    MultiblockSpec,
    NOT_LOGICAL,
    Partition,
    TRIVIAL,
    build_code,
    dumps_code_file,
    effective_multiblock,
    loads_code_file,
    min_max_distance,
    pauli_from_string,
    support,
    symplectic_product,
)
from disjointness.families import five_qubit, four_two_two, reed_muller


def _ops(strings, m=2):
    return [pauli_from_string(s, m) for s in strings]


FIVE_QUBIT_GENS = ["ZZXIX", "XZZXI", "IXZZX", "XIXZZ"]


def test_build_five_qubit_with_declared_logicals():
    code = build_code(
        _ops(FIVE_QUBIT_GENS),
        2,
        logical_x=_ops(["XXXXX"]),
        logical_z=_ops(["ZZZZZ"]),
    )
    assert (code.n, code.k) == (5, 1)


def test_build_five_qubit_derives_valid_basis():
    code = build_code(_ops(FIVE_QUBIT_GENS), 2)
    assert code.k == 1
    xb, zb = code.logical_x[0], code.logical_z[0]
    for g in code.generators:
        assert symplectic_product(xb, g) == 0
        assert symplectic_product(zb, g) == 0
    assert symplectic_product(xb, zb) == 1  # -1 mod 2


def test_build_four_two_two():
    code = build_code(_ops(["XXXX", "ZZZZ"]), 2)
    assert (code.n, code.k) == (4, 2)
    for i in range(2):
        for j in range(2):
            want = 1 if i == j else 0
            assert symplectic_product(code.logical_x[i], code.logical_z[j]) == want


def test_build_stabilizer_state_k0():
    code = build_code(_ops(["XX", "ZZ"]), 2)
    assert code.k == 0
    assert code.logical_x == () and code.logical_z == ()
    with pytest.raises(ValueError):
        min_max_distance(code, Partition.single_qudit(2))


def test_build_rejects_noncommuting():
    with pytest.raises(CodeConstructionError, match="0 and 1"):
        build_code(_ops(["XI", "ZI"]))


def test_build_rejects_dependent():
    with pytest.raises(CodeConstructionError, match="product of earlier"):
        build_code(_ops(["XX", "ZZ", "YY"]))


def test_build_rejects_bad_logicals():
    with pytest.raises(CodeConstructionError):
        build_code(
            _ops(["XXXX", "ZZZZ"]),
            2,
            logical_x=_ops(["XXII", "XIXI"]),
            logical_z=_ops(["ZZII", "ZIZI"]),  # wrong pairing
        )


def test_logical_representative_examples():
    inst = four_two_two()
    rep = inst.code.logical_representative(LogicalClass((1, 0, 0, 0)))
    assert rep == pauli_from_string("XXII", 2)
    five = five_qubit()
    rep5 = five.code.logical_representative(LogicalClass((1, 0)))
    assert rep5 == pauli_from_string("XXXXX", 2)


def test_logical_class_rejects_zero_label():
    with pytest.raises(ValueError):
        LogicalClass((0, 0))


def test_coset_closure_under_stabilizer_multiplication():
    inst = five_qubit()
    code = inst.code
    cls = LogicalClass((1, 1))
    rep = code.logical_representative(cls)
    for g in code.generators:
        moved = rep * g
        got = code.class_of(moved)
        assert isinstance(got, LogicalClass) and got.label == cls.label


def test_enumerate_class_four_two_two_exact_set():
    inst = four_two_two()
    cls = inst.code.class_of(pauli_from_string("XXII", 2))
    got = {(op.x, op.z) for op in inst.code.enumerate_class(cls)}
    want_strings = ["XXII", "IIXX", "YYZZ", "ZZYY"]
    want = {(p.x, p.z) for p in _ops(want_strings)}
    assert got == want


def test_enumerate_class_sizes():
    five = five_qubit()
    for cls in five.code.logical_labels():
        assert sum(1 for _ in five.code.enumerate_class(cls)) == 16
        break
    steane = reed_muller(2)
    ops = list(steane.code.enumerate_class(LogicalClass((1, 0))))
    assert len(ops) == 64
    part = steane.partition
    weight3 = [op for op in ops if len(support(op, part)) == 3]
    assert len(weight3) == 7  # minimal-support representative count


def test_enumerate_budget():
    steane = reed_muller(2)
    with pytest.raises(BudgetExceededError):
        list(steane.code.enumerate_class(LogicalClass((1, 0)), budget=32))


def test_class_of_examples():
    inst = four_two_two()
    code = inst.code
    assert code.class_of(code.generators[0]) is TRIVIAL
    got = code.class_of(pauli_from_string("IIXX", 2))
    assert isinstance(got, LogicalClass)
    assert got.label == code.class_of(pauli_from_string("XXII", 2)).label
    assert code.class_of(pauli_from_string("ZIII", 2)) is NOT_LOGICAL


def test_class_partition_independent_of_basis_choice():
    # the same generators with a provided vs derived basis must induce the
    # same partition of the normalizer into cosets
    provided = four_two_two().code
    derived = build_code(list(provided.generators), 2)
    pairing: dict[tuple, tuple] = {}
    for cls in provided.logical_labels():
        for op in provided.enumerate_class(cls):
            got = derived.class_of(op)
            assert isinstance(got, LogicalClass)
            key = cls.label
            if key in pairing:
                assert pairing[key] == got.label
            else:
                pairing[key] = got.label
    # distinct classes stay distinct
    assert len(set(pairing.values())) == len(pairing)


def test_num_classes():
    assert sum(1 for _ in four_two_two().code.logical_labels()) == 15
    assert four_two_two().code.num_classes == 15
    assert five_qubit().code.num_classes == 3


def test_effective_multiblock_r1_is_identity():
    inst = five_qubit()
    eff, part = effective_multiblock(inst.code, inst.partition, MultiblockSpec(1))
    assert eff.n == inst.code.n and eff.k == inst.code.k
    assert part.parts == inst.partition.parts
    assert [g.to_string() for g in eff.generators] == [
        g.to_string() for g in inst.code.generators
    ]


def test_effective_multiblock_five_qubit_r2():
    inst = five_qubit()
    eff, part = effective_multiblock(inst.code, inst.partition, MultiblockSpec(2))
    assert (eff.n, eff.k) == (10, 2)
    assert part.num_parts == 5
    assert all(len(p) == 2 for p in part.parts)
    assert min_max_distance(eff, part)[0] == 3  # matches the base code


def test_effective_multiblock_c422_r2_swapped():
    inst = four_two_two()
    sigma = (tuple(range(4)), (1, 0, 2, 3))
    eff, part = effective_multiblock(inst.code, inst.partition, MultiblockSpec(2, sigma))
    assert (eff.n, eff.k) == (8, 4)
    d_min, _ = min_max_distance(eff, part)
    assert d_min == 2


def test_effective_multiblock_invalid_permutation():
    inst = four_two_two()
    with pytest.raises(ValueError):
        effective_multiblock(
            inst.code, inst.partition, MultiblockSpec(2, ((0, 0, 1, 2), (0, 1, 2, 3)))
        )


def test_multiblock_spec_validation():
    with pytest.raises(ValueError):
        MultiblockSpec(0)
    with pytest.raises(ValueError):
        MultiblockSpec(2, ((0, 1),))


CODE_FILE = """\
# five qubit code
dim = 2
n = 5
stabilizer ZZXIX
stabilizer XZZXI
stabilizer IXZZX
stabilizer XIXZZ
logical X XXXXX
logical Z ZZZZZ
partition 0 1 | 2 3 | 4
"""


def test_code_file_round_trip():
    code, part = loads_code_file(CODE_FILE)
    assert (code.n, code.k, code.m) == (5, 1, 2)
    assert part is not None and part.num_parts == 3
    text = dumps_code_file(code, part)
    code2, part2 = loads_code_file(text)
    assert code2.generator_strings == code.generator_strings
    assert part2.parts == part.parts


@pytest.mark.parametrize(
    "text, line",
    [
        ("dim = 2\nn = 2\nstabilizer XQ\n", 3),
        ("dim = 2\nn = 2\nbogus XX\n", 3),
        ("dim = 2\nn = x\nstabilizer XX\n", 2),
        ("dim = 2\nn = 2\nstabilizer XXX\n", 3),
        ("dim = 2\nn = 4\nstabilizer XXXX\npartition 0 1 | 2\n", 4),
    ],
)
def test_code_file_errors_carry_line_numbers(text, line):
    with pytest.raises(CodeFileError) as err:
        loads_code_file(text)
    assert err.value.line == line


def test_code_file_missing_pieces():
    with pytest.raises(CodeFileError, match="dim"):
        loads_code_file("n = 2\nstabilizer XX\n")
    with pytest.raises(CodeFileError, match="stabilizer"):
        loads_code_file("dim = 2\nn = 2\n")


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition.of_blocks([(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        Partition.of_blocks([(0,), (2,)])
    with pytest.raises(ValueError):
        Partition.of_blocks([(0,), ()])
    p = Partition.of_blocks([(3, 1), (0, 2)])
    assert p.parts == ((1, 3), (0, 2))
    assert p.part_of == (1, 0, 1, 0)
