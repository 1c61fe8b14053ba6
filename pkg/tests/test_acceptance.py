"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines and timings.
"""

import functools
import itertools
import time
from fractions import Fraction

import numpy as np
import pytest

from disjointness import (
    CircuitShape,
    LogicalClass,
    Partition,
    build_code,
    c_disjointness,
    compute_metrics,
    min_max_distance,
    pauli_from_string,
    support,
    toffoli_excluded,
)
from disjointness.bounds import (
    FamilyExponents,
    asymptotic_level_bound,
    cleaning_level_bound,
    multiblock_level_bound,
    transversal_level_bound,
)
from disjointness.families import (
    bacon_shor_z,
    concatenated_105,
    five_qubit,
    four_two_two,
    reed_muller,
    surface_code,
    toric_family_exponents,
)
from disjointness.metrics import (
    _CosetView,
    _solve_c_disjoint,
    disjointness,
    max_c_disjoint_exhaustive,
)
from disjointness import oracle
from disjointness.oracle import (
    DenseCircuit,
    Gate,
    commutator_descent,
    compose,
    hierarchy_level,
    logical_action,
    support_growth_check,
)

from conftest import sample_random_codes


def criterion(number, description):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            start = time.monotonic()
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"ACCEPTANCE {number} ({description}): FAIL")
                raise
            elapsed = time.monotonic() - start
            print(f"ACCEPTANCE {number} ({description}): PASS [{elapsed:.1f}s]")

        return wrapper

    return deco


@pytest.fixture(scope="module", autouse=True)
def _warm_solver():
    # pull scipy/HiGHS into the process before any timed criterion
    import scipy.optimize  # noqa: F401


@criterion(1, "[[4,2]] c-disjointness exactness")
def test_criterion_1():
    start = time.monotonic()
    inst = four_two_two()
    cls = inst.code.class_of(pauli_from_string("XXII", 2))
    want = {1: Fraction(2), 2: Fraction(3, 2), 3: Fraction(4, 3)}
    for c, value in want.items():
        iv = c_disjointness(inst.code, cls, c, inst.partition)
        assert iv.exact and iv.value == value, (c, iv)
    assert time.monotonic() - start < 1.0


@criterion(2, "five-qubit metrics and Clifford bound")
def test_criterion_2():
    start = time.monotonic()
    inst = five_qubit()
    report = compute_metrics(inst.code, inst.partition)
    assert (report.d_min.value, report.d_max.value) == (3, 3)
    assert report.delta.exact and report.delta.value == Fraction(5, 3)
    bound = transversal_level_bound(report.d_min.lo, report.d_max.hi, report.delta.lo)
    assert bound.level == 2
    assert time.monotonic() - start < 1.0


@criterion(3, "Reed-Muller family exact disjointness and levels")
def test_criterion_3():
    start = time.monotonic()
    steane = reed_muller(2)
    rep2 = compute_metrics(steane.code, steane.partition)
    assert rep2.delta.exact and rep2.delta.value == Fraction(7, 3)
    assert transversal_level_bound(rep2.d_min.lo, rep2.d_max.hi, rep2.delta.lo).level == 2

    rm15 = reed_muller(3)
    rep3 = compute_metrics(rm15.code, rm15.partition)
    assert (rep3.d_min.value, rep3.d_max.value) == (3, 7)
    assert rep3.delta.exact and rep3.delta.value == Fraction(15, 7)
    bound = transversal_level_bound(rep3.d_min.lo, rep3.d_max.hi, rep3.delta.lo)
    assert bound.level == 3  # equals D
    assert time.monotonic() - start < 300.0


@criterion(4, "[[105,1]] declared-metrics levels and flags")
def test_criterion_4():
    for choice, want_level in (("columns", 3), ("rows", 2)):
        inst = concatenated_105(choice)
        assert inst.code.coset_size > 2**16  # exact search infeasible
        report = compute_metrics(inst.code, inst.partition, declared=inst.declared)
        assert not report.exhaustive
        assert report.delta.method == "witness-backed"
        bound = transversal_level_bound(
            report.d_min.lo, report.d_max.hi, report.delta.lo
        )
        assert bound.level == want_level, (choice, bound)


@criterion(5, "surface code distances, disjointness floor, asymptotics")
def test_criterion_5():
    start = time.monotonic()
    for l in (2, 3):
        inst = surface_code(l)
        report = compute_metrics(inst.code, inst.partition, c_max=4)
        assert (report.d_min.value, report.d_max.value) == (l, 2 * l - 1)
        assert report.delta.lo >= Fraction(l, 2)
    assert asymptotic_level_bound(FamilyExponents(1, 1, 1)).level == 2
    assert time.monotonic() - start < 120.0


@criterion(6, "Bacon-Shor asymptotic and cleaning levels")
def test_criterion_6():
    for a in (Fraction(1), Fraction(3, 2), Fraction(2), Fraction(5, 2), Fraction(3)):
        exps = FamilyExponents(1, a, 1)
        assert asymptotic_level_bound(exps).level == int(a) + 1
    levels = [cleaning_level_bound(l, l * l + l - 1).level for l in range(3, 11)]
    diffs = [b - a for a, b in zip(levels, levels[1:])]
    assert diffs == [1] * 7  # linear growth in l
    assert levels == [l + 3 for l in range(3, 11)]


@criterion(7, "D-dimensional toric exponent levels")
def test_criterion_7():
    for D in range(2, 7):
        for s in range(1, D // 2 + 1):
            exps = toric_family_exponents(D, s)
            assert asymptotic_level_bound(exps).level == (D - s) // s + 1, (D, s)


@criterion(8, "multiblock bound and reduction to transversal")
def test_criterion_8():
    # (21/25)^4 < 1/2 <= (21/25)^3 pins five-qubit r=2 at level 5
    shrink = 1 - (1 - Fraction(3, 5)) ** 2
    assert shrink == Fraction(21, 25)
    assert Fraction(21, 25) ** 4 < Fraction(1, 2) <= Fraction(21, 25) ** 3
    bound = multiblock_level_bound(3, 3, Fraction(5, 3), 2, 5, 16)
    assert bound.level == 5

    rng = np.random.default_rng(2026)
    for _ in range(500):
        d_min = Fraction(int(rng.integers(1, 40)))
        d_max = d_min + int(rng.integers(0, 40))
        delta = 1 + Fraction(int(rng.integers(0, 60)), int(rng.integers(1, 16)))
        n_parts = int(rng.integers(1, 12))
        coset = int(rng.integers(1, 2**10))
        a = transversal_level_bound(d_min, d_max, delta)
        b = multiblock_level_bound(d_min, d_max, delta, 1, n_parts, coset)
        assert a.level == b.level


@criterion(9, "lemma property suite on 200 random codes")
def test_criterion_9():
    codes = sample_random_codes(seed=90210, count=200)
    assert len(codes) == 200
    exhaustive_checked = 0
    for code in codes:
        part = Partition.single_qudit(code.n)
        d_min, d_max = min_max_distance(code, part)
        summary = disjointness(code, part, c_max=code.coset_size)
        delta = summary.interval
        assert delta.exact, code.generator_strings
        # Lemma (i)
        assert 1 <= delta.value <= min(Fraction(d_min), Fraction(part.num_parts, d_max))
        # Lemma (ii)
        assert (delta.value > 1) == (d_min > 1)
        # per-class inequalities on exactly solved sweep entries
        dists = {
            cls.label: _CosetView(code, cls, part).distance
            for cls in code.logical_labels()
        }
        for (label, c), iv in summary.per_class.items():
            if not iv.exact:
                continue
            assert iv.value * dists[label] <= part.num_parts  # capacity bound
            for other, d_other in dists.items():
                if code.classes_anticommute(LogicalClass(label), LogicalClass(other)):
                    assert iv.value <= d_other  # anticommuting-distance bound
        # branch-and-bound equals plain exhaustive subset search
        if code.coset_size <= 2**10 and exhaustive_checked < 60:
            for cls in itertools.islice(code.logical_labels(), 2):
                view = _CosetView(code, cls, part)
                for c in (1, 2):
                    if c > code.coset_size:
                        continue
                    lo, _, hi = _solve_c_disjoint(view, c)
                    brute = max_c_disjoint_exhaustive(view.masks, view.num_parts, c)
                    assert lo == hi == brute
                    exhaustive_checked += 1
    assert exhaustive_checked >= 60


def _single_qubit_cliffords():
    h = oracle._NAMED_GATES["H"]
    s = oracle._NAMED_GATES["S"]
    seen = {}
    frontier = [np.eye(2, dtype=complex)]
    while frontier:
        u = frontier.pop()
        key = oracle._phase_normalise(u).round(6).tobytes()
        if key in seen:
            continue
        seen[key] = u
        frontier.append(h @ u)
        frontier.append(s @ u)
    return list(seen.values())


def _preserving_layers(code, partition):
    layers = [
        DenseCircuit.transversal_layer(partition, 2, np.eye(2, dtype=complex))
    ]
    candidates = _single_qubit_cliffords() + [oracle._NAMED_GATES["T"]]
    for u in candidates:
        circ = DenseCircuit.transversal_layer(partition, 2, u)
        if logical_action(code, circ) is not oracle.NOT_LOGICAL:
            layers.append(circ)
    return layers


def _rand_unitary(dim, rng):
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@criterion(10, "oracle consistency with the transversal bound")
def test_criterion_10():
    start = time.monotonic()
    rng = np.random.default_rng(1105)
    instances = [five_qubit(), four_two_two(), reed_muller(2), surface_code(2)]
    for inst in instances:
        code, part = inst.code, inst.partition
        report = compute_metrics(code, part)
        bound = transversal_level_bound(
            report.d_min.lo, report.d_max.hi, report.delta.lo
        ).level
        assert bound is not None
        layers = _preserving_layers(code, part)
        labels = [cls.label for cls in code.logical_labels()]
        coset_tables = {
            lb: list(code.enumerate_class(LogicalClass(lb))) for lb in labels
        }
        sampled = 0
        for _ in range(110):
            lb = labels[rng.integers(len(labels))]
            ops = coset_tables[lb]
            rep_circ = DenseCircuit.from_pauli(
                ops[rng.integers(len(ops))], part
            )
            layer = layers[rng.integers(len(layers))]
            circ = compose(layer, rep_circ)
            level = hierarchy_level(code, circ)
            assert level is not None and level <= bound, (inst.name, level, bound)
            sampled += 1
        assert sampled >= 100

    # support-growth checks: transversal pairs and shallow circuits
    n = 6
    part = Partition.single_qudit(n)
    for trial in range(200):
        q_loc = int(rng.integers(1, 4))
        depth = int(rng.integers(1, 3))
        layers = []
        for _ in range(depth):
            ids = list(rng.permutation(n))
            gates = []
            while ids:
                take = min(int(rng.integers(1, q_loc + 1)), len(ids))
                sel = tuple(sorted(ids[:take]))
                ids = ids[take:]
                gates.append(Gate(sel, sel, _rand_unitary(2**take, rng)))
            layers.append(tuple(gates))
        circ = DenseCircuit(part, 2, tuple(layers), CircuitShape(q_loc, depth))
        xv = tuple(int(v) for v in rng.integers(0, 2, n))
        zv = tuple(int(v) for v in rng.integers(0, 2, n))
        if not any(xv) and not any(zv):
            continue
        from disjointness import PauliOperator

        a = PauliOperator(2, xv, zv)
        lhs, rhs, ok = support_growth_check(circ, a, part)
        assert ok, (trial, lhs, rhs)

    # the theorem's descent, end to end, on Steane + transversal Hadamard
    steane = reed_muller(2)
    h_layer = DenseCircuit.transversal_layer(
        steane.partition, 2, oracle._NAMED_GATES["H"]
    )
    trace = commutator_descent(
        steane.code, h_layer,
        [LogicalClass((1, 0)), LogicalClass((0, 1))], steane.partition,
    )
    assert trace.steps[0].support_size <= 3
    assert all(step.ok for step in trace.steps)
    assert trace.final_trivial
    assert time.monotonic() - start < 600.0


@criterion(11, "transversal Toffoli exclusion")
def test_criterion_11():
    error_detecting = [
        four_two_two(), five_qubit(), reed_muller(2), reed_muller(3),
        surface_code(2), surface_code(3), bacon_shor_z(2, 2),
        concatenated_105("columns"),
    ]
    for inst in error_detecting:
        d_min = inst.declared.d_min
        if inst.code.coset_size <= 2**16:
            d_min_exact, _ = min_max_distance(inst.code, inst.partition)
            assert d_min_exact == d_min
        assert bool(toffoli_excluded(d_min)) is True, inst.name

    toy = build_code([pauli_from_string("ZI", 2)], 2)
    toy_d_min, _ = min_max_distance(toy, Partition.single_qudit(2))
    assert toy_d_min == 1
    assert bool(toffoli_excluded(toy_d_min)) is False
