"""n-qudit Pauli operators over a prime qudit dimension, in symplectic form.

An operator is stored as the canonical product  phase * X^x Z^z  with one
(x, z) exponent pair per site.  For odd prime m the phase is an exponent of
omega_m = exp(2*pi*i/m); for qubits it is an exponent of i, so that
Y = i X Z carries phase exponent 1.  Reducing exponents mod m is exact in
this convention (X^m = Z^m = I introduces no phase).

Everything here is immutable and pure; values can be shared freely across
threads or processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import DimensionMismatchError, PauliSyntaxError
from .linalg import require_prime


def _check_same_space(p: "PauliOperator", q: "PauliOperator") -> None:
    if p.m != q.m or p.n != q.n:
        raise DimensionMismatchError(
            f"operators live on different spaces: "
            f"(n={p.n}, m={p.m}) vs (n={q.n}, m={q.m})"
        )


@dataclass(frozen=True)
class PauliOperator:
    """A single n-qudit Pauli operator.

    Attributes:
        m: prime qudit dimension.
        x: per-site X exponents, each in {0, .., m-1}.
        z: per-site Z exponents, each in {0, .., m-1}.
        phase: exponent of omega_m (odd m) or of i (m = 2).
    """

    m: int
    x: tuple[int, ...]
    z: tuple[int, ...]
    phase: int = 0

    def __post_init__(self):
        require_prime(self.m)
        if len(self.x) != len(self.z):
            raise DimensionMismatchError(
                f"x and z vectors differ in length: {len(self.x)} vs {len(self.z)}"
            )
        if len(self.x) == 0:
            raise PauliSyntaxError("operators must act on at least one qudit")
        if any(not 0 <= e < self.m for e in self.x + self.z):
            raise PauliSyntaxError(f"exponents must lie in [0, {self.m})")
        mod = 4 if self.m == 2 else self.m
        if not 0 <= self.phase < mod:
            object.__setattr__(self, "phase", self.phase % mod)

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def phase_modulus(self) -> int:
        return 4 if self.m == 2 else self.m

    @cached_property
    def nonzero_sites(self) -> tuple[int, ...]:
        """Sites where the operator acts non-identically."""
        return tuple(j for j in range(self.n) if self.x[j] or self.z[j])

    @property
    def is_identity(self) -> bool:
        return not any(self.x) and not any(self.z)

    @classmethod
    def identity(cls, n: int, m: int) -> "PauliOperator":
        return cls(m, (0,) * n, (0,) * n, 0)

    @classmethod
    def from_string(cls, s: str, m: int) -> "PauliOperator":
        return pauli_from_string(s, m)

    def strip_phase(self) -> "PauliOperator":
        return self if self.phase == 0 else PauliOperator(self.m, self.x, self.z, 0)

    def same_up_to_phase(self, other: "PauliOperator") -> bool:
        return self.m == other.m and self.x == other.x and self.z == other.z

    def inverse(self) -> "PauliOperator":
        m = self.m
        cross = sum(a * b for a, b in zip(self.x, self.z))
        if m == 2:
            phase = (-self.phase + 2 * cross) % 4
        else:
            phase = (-self.phase + cross) % m
        x = tuple((-e) % m for e in self.x)
        z = tuple((-e) % m for e in self.z)
        return PauliOperator(m, x, z, phase)

    def embed(self, total_n: int, offset: int) -> "PauliOperator":
        """This operator viewed inside a larger register at a qudit offset."""
        if offset < 0 or offset + self.n > total_n:
            raise DimensionMismatchError("embedding window out of range")
        pad_l, pad_r = offset, total_n - offset - self.n
        x = (0,) * pad_l + self.x + (0,) * pad_r
        z = (0,) * pad_l + self.z + (0,) * pad_r
        return PauliOperator(self.m, x, z, self.phase)

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        return multiply(self, other)

    def __str__(self) -> str:
        return self.to_string()

    def to_string(self) -> str:
        """Render the operator in the parseable string grammar (phase dropped)."""
        if self.m == 2:
            letters = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
            return "".join(letters[(a, b)] for a, b in zip(self.x, self.z))
        sites = []
        for a, b in zip(self.x, self.z):
            if a == 0 and b == 0:
                sites.append("I")
            elif a == 1 and b == 1:
                sites.append("Y")
            else:
                tok = ""
                if a:
                    tok += "X" if a == 1 else f"X{a}"
                if b:
                    tok += "Z" if b == 1 else f"Z{b}"
                sites.append(tok)
        return " ".join(sites)


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    """Group product pq with exact phase tracking.

    Uses the reordering rule Z X = omega_m X Z once per site to bring the
    product back to canonical X^x Z^z form.
    """
    _check_same_space(p, q)
    m = p.m
    x = tuple((a + b) % m for a, b in zip(p.x, q.x))
    z = tuple((a + b) % m for a, b in zip(p.z, q.z))
    cross = sum(a * b for a, b in zip(p.z, q.x))
    if m == 2:
        phase = (p.phase + q.phase + 2 * cross) % 4
    else:
        phase = (p.phase + q.phase + cross) % m
    return PauliOperator(m, x, z, phase)


def symplectic_product(p: PauliOperator, q: PauliOperator) -> int:
    """Exponent lam in the group commutator [p, q] = omega_m^lam I.

    Zero exactly when p and q commute; antisymmetric mod m.
    """
    _check_same_space(p, q)
    total = sum(zp * xq - xp * zq for xp, zp, xq, zq in zip(p.x, p.z, q.x, q.z))
    return total % p.m


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    return symplectic_product(p, q) == 0


def hermitian_canonical(p: PauliOperator) -> PauliOperator:
    """The phase choice that makes the operator a valid stabilizer element.

    For qubits each Y site contributes a factor of i (Y = iXZ), which makes
    the operator Hermitian and square to +I.  For odd m the phase-zero form
    already has order m, so the phase is just dropped.
    """
    if p.m != 2:
        return p.strip_phase()
    y_count = sum(1 for a, b in zip(p.x, p.z) if a and b)
    return PauliOperator(2, p.x, p.z, y_count % 4)


_DIGITS = "0123456789"


def _tokenize(s: str):
    """Yield atoms ('I'|'Y'|('X', e)|('Z', e)) and None for site breaks."""
    i = 0
    length = len(s)
    while i < length:
        ch = s[i]
        if ch.isspace():
            yield None
            i += 1
            continue
        if ch == "I":
            yield "I"
            i += 1
        elif ch == "Y":
            yield "Y"
            i += 1
        elif ch in "XZ":
            j = i + 1
            while j < length and s[j] in _DIGITS:
                j += 1
            exp = int(s[i + 1 : j]) if j > i + 1 else 1
            yield (ch, exp)
            i = j
        else:
            raise PauliSyntaxError(f"unexpected character {ch!r} at position {i}")


def pauli_from_string(s: str, m: int) -> PauliOperator:
    """Parse a Pauli string such as "XZZXI" (qubits) or "X2Z1 X" (qutrits).

    Grammar: a string is a sequence of sites; a site is I, X, Y, Z or an
    exponent form X<k>/Z<k>.  For m > 2 an X atom absorbs an immediately
    following Z atom into the same site ("X2Z1" is one site), and Y denotes
    the exponent pair (1, 1) with phase zero.  For m = 2 every atom is its
    own site and Y = iXZ.  Whitespace always separates sites.
    """
    require_prime(m)
    sites: list[tuple[int, int]] = []
    i_phases = 0
    pending_x: int | None = None

    def close_pending():
        nonlocal pending_x
        if pending_x is not None:
            sites.append((pending_x, 0))
            pending_x = None

    for atom in _tokenize(s):
        if atom is None:
            close_pending()
            continue
        if atom == "I":
            close_pending()
            sites.append((0, 0))
        elif atom == "Y":
            close_pending()
            sites.append((1, 1))
            if m == 2:
                i_phases += 1
        else:
            kind, exp = atom
            if exp >= m:
                raise PauliSyntaxError(
                    f"exponent {exp} is not reduced for qudit dimension {m}"
                )
            if kind == "X":
                close_pending()
                if m > 2:
                    pending_x = exp
                else:
                    sites.append((exp, 0))
            else:
                if pending_x is not None:
                    sites.append((pending_x, exp))
                    pending_x = None
                else:
                    sites.append((0, exp))
    close_pending()

    if not sites:
        raise PauliSyntaxError("empty Pauli string")
    x = tuple(a for a, _ in sites)
    z = tuple(b for _, b in sites)
    phase = (i_phases % 4) if m == 2 else 0
    return PauliOperator(m, x, z, phase)
