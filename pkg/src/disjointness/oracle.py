"""Independent dense-simulator ground truth for desk-scale codes.

Everything here works on explicit statevectors or small dense matrices and
never shares code paths with the symplectic machinery it cross-checks.
Statevector work is allowed up to 15 qubits (9 qutrits); anything needing a
full operator matrix is capped at 8 qubits (5 qutrits).

Final verdicts are integers (support sizes, hierarchy levels) guarded by a
two-threshold residual test: residuals in the gap between the pass and fail
thresholds raise NumericallyAmbiguousError instead of guessing.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .codes import (
    DEFAULT_BUDGET,
    CircuitShape,
    LogicalClass,
    NOT_LOGICAL,
    StabilizerCode,
)
from .errors import (
    CodeFileError,
    NumericallyAmbiguousError,
    OracleSizeError,
)
from .metrics import _CosetView, _solve_c_disjoint, scrub
from .pauli import PauliOperator, hermitian_canonical
from .partition import Partition, support

_STATEVECTOR_LIMIT = {2: 15, 3: 9}
_DENSE_LIMIT = {2: 8, 3: 5}
PASS_TOL = 1e-9
FAIL_TOL = 1e-6


def _check_size(n: int, m: int, limits: dict) -> None:
    cap = limits.get(m)
    if cap is None:
        raise OracleSizeError(f"dense simulation supports m in {sorted(limits)}, not {m}")
    if n > cap:
        raise OracleSizeError(f"{n} qudits of dimension {m} exceed the dense limit {cap}")


def _ambiguity_gate(residual: float, what: str) -> bool:
    """True when residual passes, False when it clearly fails."""
    if residual < PASS_TOL:
        return True
    if residual > FAIL_TOL:
        return False
    raise NumericallyAmbiguousError(
        f"{what}: residual {residual:.3e} sits between the thresholds"
    )


# -- dense Pauli matrices ------------------------------------------------------


def single_qudit_x(m: int) -> np.ndarray:
    mat = np.zeros((m, m), dtype=complex)
    for j in range(m):
        mat[(j + 1) % m, j] = 1.0
    return mat


def single_qudit_z(m: int) -> np.ndarray:
    omega = np.exp(2j * np.pi / m)
    return np.diag([omega**j for j in range(m)]).astype(complex)


def pauli_phase(p: PauliOperator) -> complex:
    if p.m == 2:
        return 1j**p.phase
    return np.exp(2j * np.pi * p.phase / p.m)


def pauli_matrix(p: PauliOperator) -> np.ndarray:
    """Dense matrix of the operator (including its tracked phase)."""
    _check_size(p.n, p.m, _DENSE_LIMIT)
    xm = single_qudit_x(p.m)
    zm = single_qudit_z(p.m)
    out = np.array([[pauli_phase(p)]], dtype=complex)
    for a, b in zip(p.x, p.z):
        site = np.linalg.matrix_power(xm, a) @ np.linalg.matrix_power(zm, b)
        out = np.kron(out, site)
    return out


def apply_pauli(p: PauliOperator, state: np.ndarray) -> np.ndarray:
    """p applied to a statevector without materialising any matrix."""
    m, n = p.m, p.n
    psi = state.reshape([m] * n)
    omega = np.exp(2j * np.pi / m)
    for j in p.nonzero_sites:
        ze = p.z[j]
        if ze:
            shape = [1] * n
            shape[j] = m
            phases = omega ** (ze * np.arange(m))
            psi = psi * phases.reshape(shape)
        xe = p.x[j]
        if xe:
            psi = np.roll(psi, xe, axis=j)
    return psi.reshape(-1) * pauli_phase(p)


# -- circuits -------------------------------------------------------------------


_NAMED_GATES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Z": np.diag([1, -1]).astype(complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "S": np.diag([1, 1j]).astype(complex),
    "T": np.diag([1, np.exp(1j * np.pi / 4)]).astype(complex),
}
_NAMED_2Q = {
    "CX": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    "CZ": np.diag([1, 1, 1, -1]).astype(complex),
}


@dataclass(frozen=True)
class Gate:
    parts: tuple[int, ...]
    qudits: tuple[int, ...]
    matrix: np.ndarray

    def dagger(self) -> "Gate":
        return Gate(self.parts, self.qudits, self.matrix.conj().T)


@dataclass(frozen=True)
class DenseCircuit:
    """Layered circuit over a qudit partition.

    Each layer is a tuple of gates on pairwise disjoint part sets with at
    most shape.q parts per gate.  shape.h is an accounting bound on depth:
    layers flagged as Pauli layers are absorbable and do not count.
    """

    partition: Partition
    m: int
    layers: tuple[tuple[Gate, ...], ...]
    shape: CircuitShape
    pauli_layers: tuple[bool, ...] = ()

    def __post_init__(self):
        if len(self.pauli_layers) != len(self.layers):
            object.__setattr__(
                self, "pauli_layers", tuple(False for _ in self.layers)
            )
        for layer in self.layers:
            seen: set[int] = set()
            for gate in layer:
                if len(gate.parts) > self.shape.q:
                    raise ValueError("a gate touches more parts than the shape allows")
                if seen & set(gate.parts):
                    raise ValueError("gates within a layer overlap")
                seen.update(gate.parts)
                dim = self.m ** len(gate.qudits)
                if gate.matrix.shape != (dim, dim):
                    raise ValueError("gate matrix does not match its qudit count")
        plain = sum(1 for f in self.pauli_layers if not f)
        if plain > self.shape.h:
            raise ValueError(f"{plain} non-absorbable layers exceed depth bound {self.shape.h}")

    @property
    def n(self) -> int:
        return self.partition.n

    @property
    def is_pauli(self) -> bool:
        return all(self.pauli_layers) and bool(self.layers)

    def dagger(self) -> "DenseCircuit":
        layers = tuple(
            tuple(g.dagger() for g in layer) for layer in reversed(self.layers)
        )
        return DenseCircuit(
            self.partition, self.m, layers, self.shape, tuple(reversed(self.pauli_layers))
        )

    @classmethod
    def from_pauli(cls, p: PauliOperator, partition: Partition) -> "DenseCircuit":
        gates = []
        parts = sorted(support(p, partition))
        for part in parts:
            quds = partition.parts[part]
            mat = np.array([[pauli_phase(p) if part == parts[0] else 1.0]], dtype=complex)
            xm, zm = single_qudit_x(p.m), single_qudit_z(p.m)
            for qq in quds:
                site = np.linalg.matrix_power(xm, p.x[qq]) @ np.linalg.matrix_power(
                    zm, p.z[qq]
                )
                mat = np.kron(mat, site)
            gates.append(Gate((part,), tuple(quds), mat))
        if not gates:
            quds = partition.parts[0]
            dim = p.m ** len(quds)
            gates.append(Gate((0,), tuple(quds), np.eye(dim, dtype=complex) * pauli_phase(p)))
        return cls(
            partition, p.m, (tuple(gates),), CircuitShape(1, 1), (True,)
        )

    @classmethod
    def transversal_layer(
        cls,
        partition: Partition,
        m: int,
        site_gates: dict[int, np.ndarray] | np.ndarray,
        *,
        is_pauli: bool = False,
    ) -> "DenseCircuit":
        """Depth-1 1-local layer; a single matrix is broadcast to every qudit."""
        gates = []
        for part_idx, quds in enumerate(partition.parts):
            mat = np.array([[1.0]], dtype=complex)
            nontrivial = False
            for q in quds:
                if isinstance(site_gates, dict):
                    g = site_gates.get(q, np.eye(m, dtype=complex))
                else:
                    g = site_gates
                if not np.allclose(g, np.eye(m), atol=1e-12):
                    nontrivial = True
                mat = np.kron(mat, g)
            if nontrivial:
                gates.append(Gate((part_idx,), tuple(quds), mat))
        if not gates:
            quds = partition.parts[0]
            gates.append(Gate((0,), tuple(quds), np.eye(m ** len(quds), dtype=complex)))
        return cls(partition, m, (tuple(gates),), CircuitShape(1, 1), (is_pauli,))


def compose(*circuits: DenseCircuit) -> DenseCircuit:
    """Concatenate circuits (leftmost acts last, like operator products)."""
    if not circuits:
        raise ValueError("nothing to compose")
    part = circuits[0].partition
    m = circuits[0].m
    layers: list = []
    flags: list[bool] = []
    for c in reversed(circuits):
        if c.partition != part or c.m != m:
            raise ValueError("circuits disagree on partition or dimension")
        layers.extend(c.layers)
        flags.extend(c.pauli_layers)
    q = max(c.shape.q for c in circuits)
    h = max(1, sum(c.shape.h for c in circuits if not c.is_pauli))
    return DenseCircuit(part, m, tuple(layers), CircuitShape(q, h), tuple(flags))


def group_commutator(u: DenseCircuit, v: DenseCircuit) -> DenseCircuit:
    """[u, v] = u v u^dag v^dag with absorbable-depth bookkeeping.

    A Pauli factor is absorbed into neighbouring gates, so commutating with
    one doubles the depth bound instead of adding to it.
    """
    if u.partition != v.partition or u.m != v.m:
        raise ValueError("circuits disagree on partition or dimension")
    layers = v.dagger().layers + u.dagger().layers + v.layers + u.layers
    flags = (
        tuple(reversed(v.pauli_layers))
        + tuple(reversed(u.pauli_layers))
        + v.pauli_layers
        + u.pauli_layers
    )
    q = max(u.shape.q, v.shape.q)
    if v.is_pauli:
        h = 2 * u.shape.h
    elif u.is_pauli:
        h = 2 * v.shape.h
    else:
        h = 2 * (u.shape.h + v.shape.h)
    both_pauli = u.is_pauli and v.is_pauli
    return DenseCircuit(
        u.partition, u.m, layers, CircuitShape(q, h),
        tuple(True for _ in flags) if both_pauli else flags,
    )


def _apply_gate(state: np.ndarray, gate: Gate, n: int, m: int) -> np.ndarray:
    quds = gate.qudits
    kq = len(quds)
    psi = state.reshape([m] * n)
    mat = gate.matrix.reshape([m] * (2 * kq))
    psi = np.tensordot(mat, psi, axes=(list(range(kq, 2 * kq)), list(quds)))
    psi = np.moveaxis(psi, list(range(kq)), list(quds))
    return psi.reshape(-1)


def apply_circuit(circ: DenseCircuit, state: np.ndarray) -> np.ndarray:
    _check_size(circ.n, circ.m, _STATEVECTOR_LIMIT)
    out = state
    for layer in circ.layers:
        for gate in layer:
            out = _apply_gate(out, gate, circ.n, circ.m)
    return out


def dense_unitary(circ: DenseCircuit) -> np.ndarray:
    """Full matrix of the circuit; only for operator-support questions."""
    _check_size(circ.n, circ.m, _DENSE_LIMIT)
    dim = circ.m**circ.n
    cols = np.eye(dim, dtype=complex)
    for layer in circ.layers:
        for gate in layer:
            quds = gate.qudits
            kq = len(quds)
            mat = gate.matrix.reshape([circ.m] * (2 * kq))
            tensor = cols.reshape([circ.m] * circ.n + [dim])
            tensor = np.tensordot(
                mat, tensor, axes=(list(range(kq, 2 * kq)), list(quds))
            )
            tensor = np.moveaxis(tensor, list(range(kq)), list(quds))
            cols = tensor.reshape(dim, dim)
    return cols


# -- codespace and logical action ------------------------------------------------


def codespace_basis(code: StabilizerCode) -> np.ndarray:
    """Orthonormal basis of the joint +1 eigenspace, one column per logical label.

    Column order follows the logical Z eigenvalue labels lexicographically;
    column (t_1..t_k) is prod X_i^{t_i} applied to the all-zero logical state,
    so logical Paulis act as shift/clock matrices in this basis.
    """
    cached = getattr(code, "_codespace_cache", None)
    if cached is not None:
        return cached
    m, n, k = code.m, code.n, code.k
    _check_size(n, m, _STATEVECTOR_LIMIT)
    dim = m**n
    # Hermitian phase convention is required for the averaging projectors.
    gens = [hermitian_canonical(g) for g in code.generators]
    log_z = [hermitian_canonical(op) for op in code.logical_z]
    log_x = [hermitian_canonical(op) for op in code.logical_x]

    def sym_project(v: np.ndarray, op: PauliOperator) -> np.ndarray:
        acc = v.astype(complex)
        power = op
        for _ in range(m - 1):
            acc = acc + apply_pauli(power, v)
            power = power * op
        return acc / m

    def project_code(v: np.ndarray) -> np.ndarray:
        for g in gens:
            v = sym_project(v, g)
        return v

    zero_logical = None
    for seed in range(dim):
        v = np.zeros(dim, dtype=complex)
        v[seed] = 1.0
        v = project_code(v)
        for zb in log_z:
            v = sym_project(v, zb)
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            zero_logical = v / norm
            break
    if zero_logical is None:  # pragma: no cover
        raise RuntimeError("failed to find the all-zero logical state")

    cols = []
    for label in itertools.product(range(m), repeat=k):
        v = zero_logical
        for xb, t in zip(log_x, label):
            for _ in range(t):
                v = apply_pauli(xb, v)
        cols.append(v)
    basis = np.stack(cols, axis=1) if cols else zero_logical.reshape(-1, 1)
    # sanity: stabilizer invariance of every basis vector
    for g in gens:
        res = max(
            float(np.linalg.norm(apply_pauli(g, basis[:, j]) - basis[:, j]))
            for j in range(basis.shape[1])
        )
        if not _ambiguity_gate(res, "stabilizer invariance of the codespace basis"):
            raise RuntimeError("constructed basis is not stabilizer-invariant")  # pragma: no cover
    code._codespace_cache = basis
    return basis


def logical_action(code: StabilizerCode, circ: DenseCircuit):
    """Matrix of the circuit on the codespace (up to nothing: exact entries),
    or NOT_LOGICAL when the circuit does not preserve the codespace."""
    if circ.m != code.m or circ.n != code.n:
        raise OracleSizeError("circuit does not match the code's space")
    basis = codespace_basis(code)
    images = np.stack([apply_circuit(circ, basis[:, j]) for j in range(basis.shape[1])], axis=1)
    coeffs = basis.conj().T @ images
    residual = float(np.linalg.norm(images - basis @ coeffs))
    if not _ambiguity_gate(residual, "codespace preservation"):
        return NOT_LOGICAL
    unitarity = float(
        np.linalg.norm(coeffs.conj().T @ coeffs - np.eye(coeffs.shape[0]))
    )
    if not _ambiguity_gate(unitarity, "unitarity of the logical action"):
        return NOT_LOGICAL  # pragma: no cover
    return coeffs


def logical_pauli_matrices(code: StabilizerCode) -> dict[tuple[int, ...], np.ndarray]:
    """All m^{2k} logical Pauli matrices in the codespace basis (up to phase)."""
    m, k = code.m, code.k
    shift = single_qudit_x(m)
    clock = single_qudit_z(m)
    out = {}
    for label in itertools.product(range(m), repeat=2 * k):
        mat = np.array([[1.0]], dtype=complex)
        for i in range(k):
            site = np.linalg.matrix_power(shift, label[i]) @ np.linalg.matrix_power(
                clock, label[k + i]
            )
            mat = np.kron(mat, site)
        out[label] = mat
    return out


def _is_pauli_up_to_phase(mat: np.ndarray, paulis) -> bool:
    dim = mat.shape[0]
    best = max(abs(np.trace(p.conj().T @ mat)) for p in paulis.values())
    return _ambiguity_gate(dim - best, "Pauli identification of a logical unitary")


def _canonical_key(mat: np.ndarray) -> bytes:
    flat = mat.reshape(-1)
    pivot = None
    for v in flat:
        if abs(v) > 0.25 / mat.shape[0]:
            pivot = v
            break
    if pivot is None:  # pragma: no cover
        pivot = 1.0
    normed = mat * (abs(pivot) / pivot)
    return np.round(normed, 6).tobytes()


def _phase_normalise(mat: np.ndarray) -> np.ndarray:
    for v in mat.reshape(-1):
        if abs(v) > 0.25 / mat.shape[0]:
            return mat * (abs(v) / v)
    return mat  # pragma: no cover


def hierarchy_level(
    code: StabilizerCode, circ: DenseCircuit, max_level: int = 8
) -> int | None:
    """Clifford-hierarchy level of the circuit's logical action.

    Level 1 means logical Pauli; level M means every group commutator with
    a logical Pauli (all m^{2k} of them) has level M-1.  Returns None when
    the recursion exhausts max_level without reaching Paulis.
    """
    action = logical_action(code, circ)
    if action is NOT_LOGICAL:
        raise ValueError("the circuit is not a logical operator")
    paulis = logical_pauli_matrices(code)
    memo: dict[bytes, tuple[np.ndarray, int]] = {}

    def level_of(mat: np.ndarray, budget: int) -> int | None:
        normed = _phase_normalise(mat)
        key = np.round(normed, 6).tobytes()
        hit = memo.get(key)
        if hit is not None and np.allclose(hit[0], normed, atol=1e-5):
            return hit[1]
        if _is_pauli_up_to_phase(mat, paulis):
            memo[key] = (normed, 1)
            return 1
        if budget <= 1:
            return None
        worst = 1
        for label, p in paulis.items():
            if not any(label):
                continue
            sub = mat @ p @ mat.conj().T @ p.conj().T
            lvl = level_of(sub, budget - 1)
            if lvl is None:
                return None
            worst = max(worst, lvl)
        result = worst + 1
        memo[key] = (normed, result)
        return result

    return level_of(action, max_level)


# -- operator support ------------------------------------------------------------


def operator_support(mat: np.ndarray, partition: Partition, m: int) -> frozenset[int]:
    """Parts on which a dense operator acts non-identically.

    A part is outside the support when the operator factorises as
    I_part (x) rest; detection is exact up to the residual thresholds.
    """
    n = partition.n
    _check_size(n, m, _DENSE_LIMIT)
    tensor = mat.reshape([m] * (2 * n))
    supp = set()
    for idx, quds in enumerate(partition.parts):
        rows = list(quds)
        cols = [n + q for q in quds]
        other_rows = [ax for ax in range(n) if ax not in rows]
        other_cols = [ax for ax in range(n, 2 * n) if ax not in cols]
        perm = rows + other_rows + cols + other_cols
        mq = m ** len(quds)
        mr = m ** (n - len(quds))
        blocks = tensor.transpose(perm).reshape(mq, mr, mq, mr)
        ref = blocks[0, :, 0, :]
        residual = 0.0
        for i in range(mq):
            for j in range(mq):
                expect = ref if i == j else 0.0
                residual = max(residual, float(np.max(np.abs(blocks[i, :, j, :] - expect))))
        if not _ambiguity_gate(residual, f"triviality on part {idx}"):
            supp.add(idx)
    return frozenset(supp)


def support_growth_check(
    circ: DenseCircuit, a: PauliOperator, partition: Partition
) -> tuple[int, int, bool]:
    """Exact |supp([U, a])| against the q^h |supp U & supp a| bound."""
    u_mat = dense_unitary(circ)
    a_mat = pauli_matrix(a)
    k_mat = u_mat @ a_mat @ u_mat.conj().T @ a_mat.conj().T
    lhs = len(operator_support(k_mat, partition, circ.m))
    u_supp = operator_support(u_mat, partition, circ.m)
    a_supp = support(a, partition)
    q, h = circ.shape.q, circ.shape.h
    rhs = (q**h) * len(u_supp & a_supp)
    return lhs, rhs, lhs <= rhs


# -- the theorem's descent, materialised ------------------------------------------


@dataclass
class DescentStep:
    label: tuple[int, ...]
    c: int | None
    support_size: int
    bound: Fraction
    ok: bool


@dataclass
class DescentTrace:
    steps: list[DescentStep]
    final_trivial: bool


def commutator_descent(
    code: StabilizerCode,
    circ: DenseCircuit,
    classes: list[LogicalClass],
    partition: Partition,
    c_choices: list[int] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> DescentTrace:
    """Run K_j = [K_{j-1}, g_j] with scrubbed representatives, step by step.

    The first representative has minimal support; later ones come from
    maximal c-disjoint sets, so each step's support bound is certified.
    """
    u_mat = dense_unitary(circ)
    m = code.m
    steps: list[DescentStep] = []
    k_mat = u_mat
    prev_supp: frozenset[int] | None = None
    for j, cls in enumerate(classes):
        view = _CosetView(code, cls, partition, budget)
        if j == 0:
            order = np.argsort(view.weights, kind="stable")
            g = view.element(int(order[0]))
            bound = Fraction(int(view.weights.min()))
            c_used = None
        else:
            if c_choices is not None:
                c_used = c_choices[j]
            else:
                best_c, best_val = 1, Fraction(0)
                cap = Fraction(partition.num_parts, view.distance)
                for c in range(1, view.size + 1):
                    if min(Fraction(view.size, c), cap) <= best_val:
                        continue
                    cnt, _, _ = _solve_c_disjoint(view, c, target=int(best_val * c))
                    if Fraction(cnt, c) > best_val:
                        best_val, best_c = Fraction(cnt, c), c
                c_used = best_c
            cnt, js, _ = _solve_c_disjoint(view, c_used)
            delta_c = Fraction(cnt, c_used)
            g = scrub(code, cls, prev_supp, c_used, partition, budget=budget)
            bound = Fraction(len(prev_supp)) / delta_c
        g_mat = pauli_matrix(g)
        k_mat = k_mat @ g_mat @ k_mat.conj().T @ g_mat.conj().T
        supp = operator_support(k_mat, partition, m)
        ok = Fraction(len(supp)) <= bound
        steps.append(DescentStep(cls.label, c_used, len(supp), bound, ok))
        prev_supp = supp
    dim = k_mat.shape[0]
    final_trivial = bool(abs(np.trace(k_mat)) > dim - FAIL_TOL)
    return DescentTrace(steps, final_trivial)


# -- diagonal transversal search ---------------------------------------------------


def find_transversal_t_pattern(code: StabilizerCode):
    """Search +-T sign patterns diag(1, e^{+-i pi/4}) preserving the codespace.

    Returns (circuit, exponent_vector) for the first preserving pattern in
    deterministic order, or None when no pattern works.  Qubit codes with
    k = 1 only.
    """
    if code.m != 2 or code.k != 1:
        raise OracleSizeError("the diagonal search expects a qubit code with k = 1")
    basis = codespace_basis(code)
    n = code.n
    supports = []
    for col in range(basis.shape[1]):
        idx = np.nonzero(np.abs(basis[:, col]) > 1e-9)[0]
        bits = ((idx[:, None] >> np.arange(n - 1, -1, -1)[None, :]) & 1).astype(np.int64)
        supports.append(bits)
    # k_j in {1, 7}: encode choices as sign bits; phase sums taken mod 8.
    count = 1 << n
    choice_bits = ((np.arange(count)[:, None] >> np.arange(n)[None, :]) & 1).astype(np.int64)
    kvecs = 1 + 6 * choice_bits  # 0 -> T (k=1), 1 -> T^dag (k=7)
    good = np.ones(count, dtype=bool)
    for bits in supports:
        sums = (bits @ kvecs.T) % 8
        good &= np.all(sums == sums[0:1, :], axis=0)
    hits = np.nonzero(good)[0]
    if len(hits) == 0:
        return None
    kvec = [int(v) for v in kvecs[hits[0]]]
    gates = {
        q: np.diag([1.0, np.exp(1j * np.pi * kvec[q] / 4)]).astype(complex)
        for q in range(n)
    }
    part = Partition.single_qudit(n)
    circ = DenseCircuit.transversal_layer(part, 2, gates)
    if logical_action(code, circ) is NOT_LOGICAL:  # pragma: no cover
        return None
    return circ, tuple(kvec)


# -- circuit text format -------------------------------------------------------------


def loads_circuit_file(text: str, partition: Partition, m: int) -> DenseCircuit:
    """Parse the layer-per-line circuit format.

    Each non-empty line is one layer of `gate <part indices> <name|matrix>`
    clauses separated by ';'.  Named single-qudit gates broadcast over every
    qudit of their part; CX/CZ take exactly two single-qudit parts.
    """
    layers: list[tuple[Gate, ...]] = []
    max_q = 1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        gates: list[Gate] = []
        seen: set[int] = set()
        for clause in line.split(";"):
            clause = clause.strip()
            if not clause:
                continue
            tokens = clause.split()
            if tokens[0] != "gate":
                raise CodeFileError(f"expected 'gate', got {tokens[0]!r}", lineno)
            idx = 1
            parts: list[int] = []
            while idx < len(tokens) and tokens[idx].lstrip("-").isdigit():
                parts.append(int(tokens[idx]))
                idx += 1
            if not parts:
                raise CodeFileError("gate without part indices", lineno)
            if any(not 0 <= p < partition.num_parts for p in parts):
                raise CodeFileError("part index out of range", lineno)
            if seen & set(parts):
                raise CodeFileError("parts repeat within a layer", lineno)
            seen.update(parts)
            spec = " ".join(tokens[idx:])
            if not spec:
                raise CodeFileError("gate without a name or matrix", lineno)
            quds = tuple(sorted(q for p in parts for q in partition.parts[p]))
            if spec.startswith("["):
                try:
                    payload = json.loads(spec)
                    mat = np.array(
                        [[complex(e[0], e[1]) if isinstance(e, list) else complex(e) for e in row]
                         for row in payload],
                        dtype=complex,
                    )
                except Exception as exc:
                    raise CodeFileError(f"bad matrix literal: {exc}", lineno) from None
            elif spec in _NAMED_GATES:
                if m != 2:
                    raise CodeFileError("named gates are defined for qubits only", lineno)
                single = _NAMED_GATES[spec]
                mat = np.array([[1.0]], dtype=complex)
                for _ in quds:
                    mat = np.kron(mat, single)
            elif spec in _NAMED_2Q:
                if m != 2:
                    raise CodeFileError("named gates are defined for qubits only", lineno)
                if len(parts) != 2 or len(quds) != 2:
                    raise CodeFileError(f"{spec} needs exactly two single-qubit parts", lineno)
                mat = _NAMED_2Q[spec]
            else:
                raise CodeFileError(f"unknown gate {spec!r}", lineno)
            gates.append(Gate(tuple(parts), quds, mat))
            max_q = max(max_q, len(parts))
        if gates:
            layers.append(tuple(gates))
    if not layers:
        raise CodeFileError("no layers found")
    shape = CircuitShape(max_q, len(layers))
    return DenseCircuit(partition, m, tuple(layers), shape)
