"""Two choices in a row: state reduction, joint and conditional probabilities.

Once the first alternative is certainly chosen, the state collapses onto
its projector (normalized), then evolves until the second choice.  The
joint probability of the ordered pair divides by the first-choice prior
to give the conditional, exactly like the classical recipe, except that
here the order of the questions matters.
"""

import numpy as np

from qdt import (
    AlternativeBasis,
    all_probabilities,
    conditional_probability,
    evolve,
    immediate_conditional,
    joint_probability,
    luders_reduce,
    marginal_check,
    measure_from_basis,
    pure_state,
    unitary_from_hamiltonian,
)

canonical = measure_from_basis(AlternativeBasis(("yes", "no"), np.eye(2)))
hadamard = measure_from_basis(
    AlternativeBasis(("agree", "disagree"), np.array([[1, 1], [1, -1]]) / np.sqrt(2))
)

rho = pure_state(np.array([0.8, 0.6]))

# --- the collapse ----------------------------------------------------------

print("Before any choice the 'yes' probability is:")
print(f"  p(yes) = {all_probabilities(rho, canonical)[0]:.4f}")

posterior = luders_reduce(rho, canonical.projectors[0])
print("After certainly choosing 'yes' the posterior is concentrated there:")
print(f"  p(yes | reduced state) = {all_probabilities(posterior, canonical)[0]:.4f}")

# --- immediate second choice ------------------------------------------------

print("\nAsked again immediately, the answer repeats (choice reproducibility):")
eye = np.eye(2)
for k, label in enumerate(canonical.labels):
    value = conditional_probability(rho, canonical.projectors[0], eye, canonical.projectors[k])
    print(f"  p({label} | yes) = {value:.6f}")

print("\nAn immediate switch of question gives the squared overlap:")
value = immediate_conditional(np.array([1.0, 0.0]), np.array([1.0, 1.0]) / np.sqrt(2))
print(f"  p(agree right after yes) = {value:.6f}")

# --- a deliberation period between the choices ------------------------------

print("\nWith time to deliberate (a unitary between the choices) the numbers move:")
h = np.array([[0.0, 1.0], [1.0, 0.0]])
for t in (0.0, 0.3, 0.9):
    u = unitary_from_hamiltonian(h, t)
    joint = joint_probability(rho, canonical.projectors[0], u, hadamard.projectors[0])
    cond = conditional_probability(rho, canonical.projectors[0], u, hadamard.projectors[0])
    print(f"  t={t:.1f}:  joint p(agree, yes) = {joint:.6f}   p(agree | yes) = {cond:.6f}")

# --- the conditional is a quotient of the joint ------------------------------

u = unitary_from_hamiltonian(h, 0.9)
prior = all_probabilities(rho, canonical)[0]
stepwise = all_probabilities(evolve(luders_reduce(rho, canonical.projectors[0]), u), hadamard)[0]
quotient = joint_probability(rho, canonical.projectors[0], u, hadamard.projectors[0]) / prior
print("\nQuotient route and reduce-evolve-measure route agree:")
print(f"  quotient : {quotient:.15f}")
print(f"  stepwise : {stepwise:.15f}")

# --- every normalization identity in one call --------------------------------

report = marginal_check(rho, canonical, u, hadamard)
print("\nMarginal identity residuals (all should be ~1e-16):")
for name, value in report.residuals.items():
    print(f"  {name:26s} {value:.3e}")
