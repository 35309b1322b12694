"""Order effects: where quantum and classical probabilities part ways.

Classically the joint probability of two events is order-symmetric while
the conditional is not.  Quantum sequential probabilities invert this:
immediate conditionals are order-symmetric, joints are not (unless the
projectors commute), and with evolution in between nothing is symmetric.
"""

import numpy as np

from qdt import (
    AlternativeBasis,
    JointTable,
    asymmetry_witness,
    classical_conditional,
    induced_joint_from_quantum,
    measure_from_basis,
    random_state,
    random_unitary,
    symmetry_report,
)

# --- the classical picture ---------------------------------------------------

table = JointTable(("rain", "dry"), ("umbrella", "none"), np.array([[0.4, 0.1], [0.2, 0.3]]))
print("Classical joint table is symmetric by construction; conditionals are not:")
print(f"  f(umbrella | rain) = {classical_conditional(table, 0, 0):.4f}")
witness = asymmetry_witness(table)
print(
    f"  largest conditional asymmetry: {witness.value:.4f} "
    f"at ({witness.row_label}, {witness.col_label})"
)

# --- the quantum picture ------------------------------------------------------

rho = random_state(2, 2, seed=3)
a = np.array([1.0, 0.0])
b = np.array([0.8, 0.6])

print("\nImmediate quantum choices (no evolution in between):")
report = symmetry_report(rho, a, b, np.eye(2))
print(f"  conditional forward/reverse: {report.conditional_forward:.6f} / "
      f"{report.conditional_reverse:.6f}  symmetric: {report.conditional_symmetric}")
print(f"  joint       forward/reverse: {report.joint_forward:.6f} / "
      f"{report.joint_reverse:.6f}  symmetric: {report.joint_symmetric}")

print("\nWith a generic unitary between the choices, both become asymmetric:")
report = symmetry_report(rho, a, b, random_unitary(2, seed=4))
print(f"  conditional forward/reverse: {report.conditional_forward:.6f} / "
      f"{report.conditional_reverse:.6f}  symmetric: {report.conditional_symmetric}")
print(f"  joint       forward/reverse: {report.joint_forward:.6f} / "
      f"{report.joint_reverse:.6f}  symmetric: {report.joint_symmetric}")

print("\nCommuting projectors (same direction up to a phase) restore symmetry:")
report = symmetry_report(rho, a, a * np.exp(0.7j), np.eye(2))
print(f"  conditional symmetric: {report.conditional_symmetric}, "
      f"joint symmetric: {report.joint_symmetric}")

# --- arranging quantum joints like a classical table --------------------------

first = measure_from_basis(AlternativeBasis(("A0", "A1"), np.eye(2)))
second = measure_from_basis(
    AlternativeBasis(("B0", "B1"), np.array([[1, 1], [1, -1]]) / np.sqrt(2))
)
induced = induced_joint_from_quantum(rho, first, np.eye(2), second)
print("\nQuantum joints in both orders (rows: first measure, cols: second):")
print("  first-then-second:")
print(np.array2string(induced.forward, precision=6, prefix="  "))
print("  second-then-first:")
print(np.array2string(induced.reverse, precision=6, prefix="  "))
print(f"  largest order gap: {induced.max_order_gap():.6f}")
print(f"  summed difference (vanishes identically): {induced.difference.sum():.2e}")
