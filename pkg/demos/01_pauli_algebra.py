"""Qudit Pauli operators in symplectic form: parsing, products, commutation.

Run: python demos/01_pauli_algebra.py
"""

from disjointness import (
    Partition,
    multiply,
    pauli_from_string,
    support,
    symplectic_product,
    weight,
)

# ---------------------------------------------------------------------------
# Parsing: qubit strings are plain letter sequences; qudit strings may carry
# per-site exponents, and "X2Z1" is a single site for m > 2.
# ---------------------------------------------------------------------------
p = pauli_from_string("XZZXI", 2)
print("p       =", p.to_string(), "  x =", p.x, " z =", p.z)

q3 = pauli_from_string("X2Z1 X I", 3)
print("qutrit  =", q3.to_string(), "  x =", q3.x, " z =", q3.z)

# ---------------------------------------------------------------------------
# Products track the exact phase produced by reordering Z past X.
# For qubits the phase is a power of i (Y = iXZ); for odd m a power of
# omega_m = exp(2*pi*i/m).
# ---------------------------------------------------------------------------
x = pauli_from_string("X", 3)
z = pauli_from_string("Z", 3)
zx = multiply(z, x)
print("\nZ * X on a qutrit =", zx.to_string(), " phase exponent:", zx.phase)

y = pauli_from_string("Y", 2)
print("Y * Y on a qubit  =", multiply(y, y).to_string(),
      " phase exponent:", multiply(y, y).phase, "(i^0 = +1)")

# ---------------------------------------------------------------------------
# The symplectic product lam satisfies [p, q] = omega^lam; lam = 0 exactly
# for commuting operators.  [X, Z] = omega^{-1}.
# ---------------------------------------------------------------------------
print("\nlam(X, Z) qutrit:", symplectic_product(x, z), "(-1 mod 3)")
s1 = pauli_from_string("XZZXI", 2)
s2 = pauli_from_string("IXZZX", 2)
print("lam of two five-qubit stabilizers:", symplectic_product(s1, s2))

# ---------------------------------------------------------------------------
# Support is always relative to a partition of the qudits.
# ---------------------------------------------------------------------------
single = Partition.single_qudit(5)
coarse = Partition.of_blocks([(0, 1), (2, 3), (4,)])
print("\nsupp(p) with single-qubit parts:", sorted(support(p, single)))
print("supp(p) with parts {01|23|4}:   ", sorted(support(p, coarse)),
      " weight:", weight(p, coarse))
