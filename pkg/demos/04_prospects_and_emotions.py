"""Prospects: alternatives dressed with emotions on a bigger space.

The rational side of a decision lives on the alternative space; feelings
live on a subject space of elementary emotions.  An alternative paired
with its emotion vector is a prospect on the tensor-product decision
space.  Its probability splits exactly into a rational fraction (a
classical-looking diagonal part) plus a quality factor (interference of
feelings, possibly negative), which is how an option can be objectively
sound yet subjectively unattractive.
"""

import numpy as np

from qdt import (
    AlternativeBasis,
    EmotionVector,
    decompose_prospect,
    decomposition_sums,
    fluctuate_emotion,
    normalized_for_measure,
    prospect_measure_from_basis,
    prospect_probability,
    random_state,
    resolution_check,
)

# --- two job offers, each with its own emotional coloring --------------------

basis = AlternativeBasis(("startup", "tenure"), np.eye(2))
# feelings: (excitement, security); neither offer is emotionally pure
emotions = (
    EmotionVector(np.array([0.9, np.sqrt(1 - 0.81)])),
    EmotionVector(np.array([0.3, np.sqrt(1 - 0.09)])),
)
family = prospect_measure_from_basis(basis, emotions)

state = normalized_for_measure(random_state(4, 4, seed=12), family)
print(f"unity resolution residual: {resolution_check(state, family):.2e}\n")

print(f"{'prospect':>10s} {'p':>10s} {'rational':>10s} {'quality':>10s}")
for label, prospect in zip(family.labels, family.prospects):
    parts = decompose_prospect(state, prospect)
    print(f"{label:>10s} {parts.total:10.6f} {parts.rational:10.6f} {parts.quality:+10.6f}")

sums = decomposition_sums(state, family)
print(f"\nsums: p = {sums['probability_sum']:.6f}, "
      f"f = {sums['rational_sum']:.6f}, q = {sums['quality_sum']:+.6f}")
print("(probabilities sum to one; the quality factors absorb exactly what the")
print(" rational fractions leave over)")

# --- the quality factor is interference: one-hot emotions kill it -------------

plain = prospect_measure_from_basis(
    basis,
    (EmotionVector(np.array([1.0, 0.0])), EmotionVector(np.array([0.0, 1.0]))),
)
print("\nWith one-hot emotion rows there is nothing to interfere:")
for label, prospect in zip(plain.labels, plain.prospects):
    parts = decompose_prospect(state, prospect)
    print(f"  {label}: quality = {parts.quality:+.2e}")

# --- emotions are contextual: jitter and re-evaluate ---------------------------

print("\nEmotions fluctuate between evaluations; a small jitter moves the split:")
for amplitude in (0.0, 0.05, 0.2):
    jittered = tuple(fluctuate_emotion(e, amplitude, seed) for seed, e in enumerate(emotions))
    jittered_family = prospect_measure_from_basis(basis, jittered)
    p = prospect_probability(state, jittered_family.prospects[0])
    q = decompose_prospect(state, jittered_family.prospects[0]).quality
    print(f"  amplitude {amplitude:.2f}:  p(startup) = {p:.6f}, quality = {q:+.6f}")
