"""A first choice problem: states, measures, and trace-rule probabilities.

A decision problem with N alternatives lives on a complex vector space.
Each alternative gets a unit vector; the family of rank-one projectors
built from them is the event structure, and a density state holds the
decision maker's statistics.  The probability of picking an alternative
is the trace of the state against its projector.
"""

import numpy as np

from qdt import (
    AlternativeBasis,
    all_probabilities,
    choice_probability,
    evolve,
    measure_from_basis,
    pure_state,
    random_state,
    random_unitary,
    uniform_state,
)

# --- a two-alternative problem: keep the portfolio or sell it -------------

basis = AlternativeBasis(("keep", "sell"), np.eye(2))
measure = measure_from_basis(basis)

print("A maximally undecided person (uniform state):")
rho = uniform_state(2)
for label, p in zip(measure.labels, all_probabilities(rho, measure)):
    print(f"  p({label}) = {p:.6f}")

print("\nSomeone already sure they will keep it (pure state on |keep>):")
rho = pure_state(np.array([1.0, 0.0]))
for label, p in zip(measure.labels, all_probabilities(rho, measure)):
    print(f"  p({label}) = {p:.6f}")

print("\nA superposed state (1,1)/sqrt(2) splits the odds:")
rho = pure_state(np.array([1.0, 1.0]) / np.sqrt(2))
for label, p in zip(measure.labels, all_probabilities(rho, measure)):
    print(f"  p({label}) = {p:.6f}")

# --- probabilities are basis-independent -----------------------------------

print("\nConjugating state and projectors by one common unitary changes nothing:")
rho = random_state(2, 2, seed=7)
u = random_unitary(2, seed=8)
before = choice_probability(rho, measure, 0)
rotated_measure = measure_from_basis(
    AlternativeBasis(basis.labels, (u @ basis.vectors.T).T)
)
after = choice_probability(evolve(rho, u), rotated_measure, 0)
print(f"  before: {before:.12f}")
print(f"  after : {after:.12f}")

# --- normalization holds for any state over a complete measure -------------

print("\nComplete measures always hand out a full unit of probability:")
for seed in range(3):
    rho = random_state(2, 2, seed=seed)
    total = all_probabilities(rho, measure).sum()
    print(f"  random state {seed}: sum = {total:.15f}")
