"""Tests for probability spaces: states, measures, trace-rule probabilities."""

import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdt import (
    AlternativeBasis,
    DensityState,
    DimensionError,
    InvariantError,
    NormalizationError,
    ProjectorMeasure,
    UnitarityError,
    all_probabilities,
    choice_probability,
    evolve,
    measure_from_basis,
    projector_from_vector,
    pure_state,
    random_state,
    random_unitary,
    uniform_state,
)
from qdt.space import clamp_probability
from conftest import random_basis, random_measure, random_unit_vector


HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


class TestAlternativeBasis:
    def test_accepts_canonical(self):
        basis = AlternativeBasis(("yes", "no"), np.eye(2))
        assert basis.size == 2 and basis.dim == 2
        assert basis.index_of("no") == 1

    def test_partial_family_allowed(self):
        basis = AlternativeBasis(("a",), np.array([[1.0, 0.0, 0.0]]))
        assert basis.size == 1 and basis.dim == 3

    def test_rejects_duplicate_labels(self):
        with pytest.raises(InvariantError, match="unique"):
            AlternativeBasis(("x", "x"), np.eye(2))

    def test_rejects_non_orthogonal(self):
        vectors = np.array([[1.0, 0.0], [np.sqrt(0.91), 0.3]])
        with pytest.raises(InvariantError, match="not orthogonal"):
            AlternativeBasis(("a", "b"), vectors)

    def test_rejects_non_normalized(self):
        with pytest.raises(InvariantError, match="not normalized"):
            AlternativeBasis(("a",), np.array([[0.5, 0.0]]))

    def test_rejects_too_many_vectors(self):
        with pytest.raises(DimensionError):
            AlternativeBasis(("a", "b", "c"), np.vstack([np.eye(2), [1, 0]]))


class TestDensityState:
    def test_uniform(self):
        rho = uniform_state(4)
        assert rho.dim == 4
        assert np.trace(rho.matrix).real == pytest.approx(1.0)

    def test_rejects_non_hermitian(self):
        with pytest.raises(InvariantError, match="Hermitian"):
            DensityState(np.array([[0.5, 0.5], [0.0, 0.5]]))

    def test_rejects_wrong_trace(self):
        with pytest.raises(InvariantError, match="trace"):
            DensityState(np.eye(2))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(InvariantError, match="semidefinite"):
            DensityState(np.diag([1.5, -0.5]))

    def test_matrix_is_frozen(self):
        rho = uniform_state(2)
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 9.0


class TestProjectorMeasure:
    def test_from_canonical_basis(self):
        measure = measure_from_basis(AlternativeBasis(("a", "b"), np.eye(2)))
        np.testing.assert_allclose(measure.projectors[0], np.diag([1.0, 0.0]))
        np.testing.assert_allclose(measure.projectors[1], np.diag([0.0, 1.0]))

    def test_full_basis_is_complete(self):
        measure = random_measure(4, 5)
        assert measure.is_complete()
        assert measure.completeness_defect() < 1e-12

    def test_hadamard_measure_orthogonal(self):
        measure = measure_from_basis(AlternativeBasis(("p", "m"), HADAMARD))
        cross = measure.projectors[0] @ measure.projectors[1]
        assert np.max(np.abs(cross)) < 1e-12

    def test_rejects_degenerate_projector(self):
        # a rank-two projector is a degenerate-outcome projector
        degenerate = np.diag([1.0, 1.0, 0.0])
        with pytest.raises(InvariantError, match="degenerate"):
            ProjectorMeasure(("d",), degenerate[np.newaxis])

    def test_rejects_overlapping_projectors(self):
        p = np.diag([1.0, 0.0])
        with pytest.raises(InvariantError, match="orthogonal"):
            ProjectorMeasure(("a", "b"), np.stack([p, p]))


class TestProjectorFromVector:
    def test_canonical(self):
        np.testing.assert_array_equal(
            projector_from_vector(np.array([1.0, 0.0])), np.diag([1.0, 0.0])
        )

    def test_analytic_outer_product(self):
        p = projector_from_vector(np.array([1.0, 1.0]) / np.sqrt(2))
        np.testing.assert_allclose(p, np.full((2, 2), 0.5), atol=1e-15)

    def test_idempotent(self, rng):
        p = projector_from_vector(random_unit_vector(5, rng))
        np.testing.assert_allclose(p @ p, p, atol=1e-12)

    def test_rejects_non_normalized(self):
        with pytest.raises(NormalizationError):
            projector_from_vector(np.array([1.0, 1.0]))


class TestChoiceProbability:
    def test_maximally_mixed_is_uniform(self):
        measure = random_measure(5, 2)
        probs = all_probabilities(uniform_state(5), measure)
        np.testing.assert_allclose(probs, np.full(5, 0.2), atol=1e-12)

    def test_certainty_for_own_projector(self, rng):
        v = random_unit_vector(3, rng)
        basis = AlternativeBasis(("v",), v[np.newaxis])
        measure = measure_from_basis(basis)
        assert choice_probability(pure_state(v), measure, 0) == pytest.approx(1.0, abs=1e-12)

    def test_balanced_superposition(self):
        rho = pure_state(np.array([1.0, 1.0]) / np.sqrt(2))
        measure = measure_from_basis(AlternativeBasis(("0", "1"), np.eye(2)))
        np.testing.assert_allclose(all_probabilities(rho, measure), [0.5, 0.5], atol=1e-12)

    def test_born_rule_equivalence(self, rng):
        # trace route against direct vector contraction
        basis = random_basis(4, 31)
        measure = measure_from_basis(basis)
        rho = random_state(4, 3, rng)
        for n in range(4):
            v = basis.vectors[n]
            direct = float(np.real(v.conj() @ rho.matrix @ v))
            assert choice_probability(rho, measure, n) == pytest.approx(direct, abs=1e-12)

    def test_out_of_range_index(self):
        measure = random_measure(2, 1)
        with pytest.raises(IndexError):
            choice_probability(uniform_state(2), measure, 2)

    def test_dimension_mismatch(self):
        measure = random_measure(2, 1)
        with pytest.raises(DimensionError):
            choice_probability(uniform_state(3), measure, 0)

    def test_incomplete_measure_subnormalized(self, rng):
        basis = random_basis(4, 8)
        partial = AlternativeBasis(basis.labels[:2], basis.vectors[:2])
        probs = all_probabilities(random_state(4, 4, rng), measure_from_basis(partial))
        assert probs.sum() <= 1.0 + 1e-9

    def test_complete_measure_normalized_sweep(self):
        measure = random_measure(3, 77)
        for k in range(200):
            rho = random_state(3, 1 + k % 3, 1000 + k)
            assert abs(all_probabilities(rho, measure).sum() - 1.0) < 1e-9


class TestClampProbability:
    def test_passthrough(self):
        assert clamp_probability(0.25) == 0.25

    def test_clamps_rounding_noise(self, caplog):
        with caplog.at_level(logging.DEBUG, logger="qdt.space"):
            assert clamp_probability(-1e-12) == 0.0
            assert clamp_probability(1.0 + 1e-12) == 1.0
        assert any("clamped" in record.message for record in caplog.records)

    def test_rejects_genuine_violation(self):
        with pytest.raises(InvariantError):
            clamp_probability(-1e-6)
        with pytest.raises(InvariantError):
            clamp_probability(1.0 + 1e-6)

    def test_rejects_complex_residue(self):
        with pytest.raises(InvariantError):
            clamp_probability(0.5 + 1e-3j)


class TestEvolve:
    def test_identity_keeps_state(self, rng):
        rho = random_state(3, 2, rng)
        np.testing.assert_allclose(evolve(rho, np.eye(3)).matrix, rho.matrix, atol=1e-15)

    def test_purity_preserved(self, rng):
        rho = pure_state(random_unit_vector(4, rng))
        u = random_unitary(4, 12)
        assert evolve(rho, u).purity() == pytest.approx(1.0, abs=1e-9)

    def test_eigenvalues_preserved(self, rng):
        # independent oracle: conjugation leaves the spectrum untouched
        rho = random_state(5, 3, rng)
        u = random_unitary(5, 13)
        before = np.sort(rho.eigenvalues())
        after = np.sort(evolve(rho, u).eigenvalues())
        np.testing.assert_allclose(before, after, atol=1e-9)

    def test_rejects_non_unitary(self, rng):
        rho = random_state(2, 1, rng)
        with pytest.raises(UnitarityError):
            evolve(rho, np.array([[1.0, 0.0], [0.0, 0.5]]))


class TestRandomState:
    def test_rank_one_is_pure(self):
        assert random_state(4, 1, 3).purity() == pytest.approx(1.0, abs=1e-9)

    def test_full_rank(self):
        rho = random_state(4, 4, 3)
        assert np.min(rho.eigenvalues()) > 1e-6

    def test_deterministic(self):
        np.testing.assert_array_equal(random_state(3, 2, 5).matrix, random_state(3, 2, 5).matrix)

    def test_rejects_bad_rank(self):
        with pytest.raises(DimensionError):
            random_state(3, 4, 0)


def test_basis_independence(rng):
    # conjugating every object by a common unitary leaves probabilities alone
    rho = random_state(4, 2, rng)
    measure = random_measure(4, 21)
    u = random_unitary(4, 22)
    rotated_state = evolve(rho, u)
    rotated = ProjectorMeasure(
        measure.labels, np.stack([u @ p @ u.conj().T for p in measure.projectors])
    )
    np.testing.assert_allclose(
        all_probabilities(rho, measure), all_probabilities(rotated_state, rotated), atol=1e-9
    )


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(2, 8))
def test_complete_measure_probabilities_normalized(seed, dim):
    gen = np.random.default_rng(seed)
    rank = int(gen.integers(1, dim + 1))
    rho = random_state(dim, rank, gen)
    measure = random_measure(dim, gen.integers(2**31))
    probs = all_probabilities(rho, measure)
    assert np.all(probs >= 0.0) and np.all(probs <= 1.0)
    assert abs(probs.sum() - 1.0) < 1e-9
