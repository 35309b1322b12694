"""Tests for prospects, emotions, and the rational/quality decomposition."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdt import (
    AlternativeBasis,
    DimensionError,
    EmotionVector,
    InvariantError,
    NormalizationError,
    Prospect,
    ProspectMeasure,
    SubjectSpace,
    ZeroProbabilityConditioning,
    behavioral_conditional,
    behavioral_joint,
    behavioral_luders,
    behavioral_symmetry_report,
    conditional_probability,
    decompose_prospect,
    decomposition_sums,
    emotion_projector,
    fluctuate_emotion,
    joint_probability,
    normalized_for_measure,
    prospect_measure_from_basis,
    prospect_probability,
    prospect_projector,
    random_state,
    random_unitary,
    resolution_check,
    uniform_state,
)
from qdt.sequential import CONDITIONING_EPS
from qdt.space import projector_from_vector
from conftest import random_basis, random_unit_vector


def random_emotion(dim: int, rng) -> EmotionVector:
    return EmotionVector(random_unit_vector(dim, rng))


def behavioral_setup(dim_a: int, dim_s: int, seed: int):
    gen = np.random.default_rng(seed)
    basis = random_basis(dim_a, int(gen.integers(2**31)))
    emotions = tuple(random_emotion(dim_s, gen) for _ in range(dim_a))
    family = prospect_measure_from_basis(basis, emotions)
    state = random_state(dim_a * dim_s, int(gen.integers(1, dim_a * dim_s + 1)), gen)
    return basis, family, state


class TestSubjectSpace:
    def test_default_labels(self):
        space = SubjectSpace(3)
        assert space.feeling_labels == ("feeling_0", "feeling_1", "feeling_2")

    def test_rejects_duplicate_labels(self):
        with pytest.raises(InvariantError):
            SubjectSpace(2, ("joy", "joy"))

    def test_rejects_bad_dim(self):
        with pytest.raises(DimensionError):
            SubjectSpace(0)


class TestEmotionVector:
    def test_requires_unit_norm(self):
        with pytest.raises(NormalizationError):
            EmotionVector(np.array([0.5, 0.5]))

    def test_overlap_not_kronecker(self, rng):
        x = random_emotion(3, rng)
        y = random_emotion(3, rng)
        assert 0.0 < abs(x.overlap(y)) < 1.0

    def test_fluctuation_hook(self):
        emotion = EmotionVector(np.array([1.0, 0.0]))
        jittered = fluctuate_emotion(emotion, 0.05, 7)
        assert np.linalg.norm(jittered.coefficients) == pytest.approx(1.0, abs=1e-12)
        repeat = fluctuate_emotion(emotion, 0.05, 7)
        np.testing.assert_array_equal(jittered.coefficients, repeat.coefficients)

    def test_zero_amplitude_keeps_vector(self):
        emotion = EmotionVector(np.array([0.6, 0.8]))
        unchanged = fluctuate_emotion(emotion, 0.0, 1)
        np.testing.assert_allclose(unchanged.coefficients, emotion.coefficients, atol=1e-15)


class TestEmotionProjector:
    def test_elementary_feeling(self):
        p = emotion_projector(EmotionVector(np.array([0.0, 1.0, 0.0])))
        np.testing.assert_array_equal(p, np.diag([0.0, 1.0, 0.0]))

    def test_idempotent(self, rng):
        p = emotion_projector(random_emotion(4, rng))
        np.testing.assert_allclose(p @ p, p, atol=1e-12)

    def test_product_carries_overlap(self, rng):
        # the product of two emotion projectors is the overlap times the
        # cross outer product, so distinct emotions are not orthogonal
        x = random_emotion(3, rng)
        y = random_emotion(3, rng)
        product = emotion_projector(x) @ emotion_projector(y)
        expected = x.overlap(y) * np.outer(x.coefficients, y.coefficients.conj())
        np.testing.assert_allclose(product, expected, atol=1e-12)


class TestProspectProjector:
    def test_canonical_case(self):
        prospect = Prospect(0, np.array([1.0, 0.0]), EmotionVector(np.array([1.0, 0.0])))
        expected = np.zeros((4, 4))
        expected[0, 0] = 1.0
        np.testing.assert_allclose(prospect_projector(prospect), expected, atol=1e-15)

    def test_equals_kron_of_factors(self, rng):
        alt = random_unit_vector(3, rng)
        emotion = random_emotion(2, rng)
        prospect = Prospect(0, alt, emotion)
        expected = np.kron(projector_from_vector(alt), emotion_projector(emotion))
        np.testing.assert_allclose(prospect_projector(prospect), expected, atol=1e-12)

    def test_distinct_alternatives_orthogonal(self, rng):
        basis = random_basis(3, 41)
        p1 = prospect_projector(Prospect(0, basis.vectors[0], random_emotion(2, rng)))
        p2 = prospect_projector(Prospect(1, basis.vectors[1], random_emotion(2, rng)))
        assert np.max(np.abs(p1 @ p2)) < 1e-12

    def test_unit_trace(self, rng):
        prospect = Prospect(0, random_unit_vector(4, rng), random_emotion(3, rng))
        assert np.trace(prospect_projector(prospect)).real == pytest.approx(1.0, abs=1e-12)


class TestProspectMeasure:
    def test_orthogonal_and_commuting(self):
        _, family, _ = behavioral_setup(3, 2, 50)
        for m in range(family.size):
            for n in range(m + 1, family.size):
                prod = family.projectors[m] @ family.projectors[n]
                comm = prod - family.projectors[n] @ family.projectors[m]
                assert np.max(np.abs(prod)) < 1e-12
                assert np.max(np.abs(comm)) < 1e-12

    def test_labels_follow_basis(self):
        basis, family, _ = behavioral_setup(2, 2, 51)
        assert family.labels == basis.labels

    def test_rejects_non_orthogonal_alternatives(self, rng):
        emotion = random_emotion(2, rng)
        v = np.array([1.0, 0.0])
        w = np.array([0.8, 0.6])
        with pytest.raises(InvariantError):
            ProspectMeasure.from_prospects(
                (Prospect(0, v, emotion), Prospect(1, w, emotion))
            )


class TestResolutionCheck:
    def test_trivial_subject_space_is_complete(self, rng):
        # one feeling and a full alternative basis: the family resolves
        # unity for every state
        basis = random_basis(3, 52)
        unit = EmotionVector(np.ones(1))
        family = prospect_measure_from_basis(basis, (unit,) * 3)
        rho = random_state(3, 2, rng)
        assert resolution_check(rho, family) < 1e-12

    def test_generic_family_leaves_residual(self):
        _, family, state = behavioral_setup(2, 2, 53)
        assert resolution_check(state, family) > 1e-6

    def test_projection_renormalization_oracle(self):
        # projecting onto the family's range and renormalizing always
        # produces a resolving state
        for seed in range(20):
            _, family, state = behavioral_setup(2 + seed % 3, 2, 1000 + seed)
            normalized = normalized_for_measure(state, family)
            assert resolution_check(normalized, family) < 1e-9


class TestProspectProbability:
    def test_own_projector_is_certain(self, rng):
        _, family, _ = behavioral_setup(2, 2, 54)
        from qdt import DensityState

        rho = DensityState(family.projectors[0])
        assert prospect_probability(rho, family.prospects[0]) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_subspace_vanishes(self):
        _, family, _ = behavioral_setup(2, 2, 55)
        from qdt import DensityState

        rho = DensityState(family.projectors[1])
        assert prospect_probability(rho, family.prospects[0]) == pytest.approx(0.0, abs=1e-12)

    def test_normalized_scenario_sums_to_one(self):
        for seed in range(20):
            _, family, state = behavioral_setup(3, 2, 2000 + seed)
            normalized = normalized_for_measure(state, family)
            total = sum(prospect_probability(normalized, p) for p in family.prospects)
            assert total == pytest.approx(1.0, abs=1e-9)


class TestDecomposeProspect:
    def test_trivial_subject_space_has_no_interference(self, rng):
        prospect = Prospect(0, random_unit_vector(3, rng), EmotionVector(np.ones(1)))
        rho = random_state(3, 2, rng)
        parts = decompose_prospect(rho, prospect)
        assert parts.quality == 0.0
        assert parts.total == pytest.approx(parts.rational, abs=1e-15)

    def test_one_hot_emotions_have_no_interference(self, rng):
        prospect = Prospect(
            0, random_unit_vector(2, rng), EmotionVector(np.array([0.0, 1.0, 0.0]))
        )
        rho = random_state(6, 4, rng)
        parts = decompose_prospect(rho, prospect)
        assert parts.quality == pytest.approx(0.0, abs=1e-15)

    def test_split_is_exact(self):
        for seed in range(40):
            _, family, state = behavioral_setup(2 + seed % 2, 2 + seed % 3, 3000 + seed)
            for prospect in family.prospects:
                parts = decompose_prospect(state, prospect)
                assert abs(parts.total - (parts.rational + parts.quality)) < 1e-12
                assert -1.0 - 1e-9 <= parts.quality <= 1.0 + 1e-9

    def test_total_matches_prospect_probability(self):
        _, family, state = behavioral_setup(3, 3, 56)
        for prospect in family.prospects:
            assert decompose_prospect(state, prospect).total == pytest.approx(
                prospect_probability(state, prospect), abs=1e-12
            )

    def test_normalized_scenario_sum_rule(self):
        # on resolving states the interference budget is whatever the
        # rational fractions leave of unity
        for seed in range(20):
            _, family, state = behavioral_setup(3, 2, 4000 + seed)
            normalized = normalized_for_measure(state, family)
            sums = decomposition_sums(normalized, family)
            assert sums["probability_sum"] == pytest.approx(1.0, abs=1e-9)
            assert sums["quality_sum"] == pytest.approx(
                1.0 - sums["rational_sum"], abs=1e-9
            )


class TestBehavioralLuders:
    def test_uniform_state_reduces_to_projector(self):
        _, family, _ = behavioral_setup(2, 2, 57)
        posterior = behavioral_luders(uniform_state(4), family.prospects[0])
        np.testing.assert_allclose(posterior.matrix, family.projectors[0], atol=1e-12)

    def test_posterior_certainty(self):
        for seed in range(30):
            _, family, state = behavioral_setup(2, 3, 5000 + seed)
            prospect = family.prospects[seed % 2]
            if prospect_probability(state, prospect) <= CONDITIONING_EPS:
                continue
            posterior = behavioral_luders(state, prospect)
            assert prospect_probability(posterior, prospect) == pytest.approx(1.0, abs=1e-9)

    def test_second_reduction_is_idempotent(self):
        _, family, state = behavioral_setup(2, 2, 58)
        once = behavioral_luders(state, family.prospects[0])
        twice = behavioral_luders(once, family.prospects[0])
        np.testing.assert_allclose(once.matrix, twice.matrix, atol=1e-12)

    def test_zero_probability_raises(self):
        from qdt import DensityState

        _, family, _ = behavioral_setup(2, 2, 59)
        rho = DensityState(family.projectors[1])
        with pytest.raises(ZeroProbabilityConditioning):
            behavioral_luders(rho, family.prospects[0])


class TestBehavioralJoint:
    def test_same_prospect_gives_prior(self):
        _, family, state = behavioral_setup(2, 2, 60)
        prospect = family.prospects[0]
        eye = np.eye(4)
        assert behavioral_joint(state, prospect, eye, prospect) == pytest.approx(
            prospect_probability(state, prospect), abs=1e-12
        )

    def test_orthogonal_prospects_vanish(self):
        _, family, state = behavioral_setup(2, 2, 61)
        eye = np.eye(4)
        assert behavioral_joint(
            state, family.prospects[0], eye, family.prospects[1]
        ) == pytest.approx(0.0, abs=1e-12)

    def test_matches_compositional_oracle(self, rng):
        # reduce by the first prospect, evolve, measure the second, scale by
        # the first prospect's prior
        from qdt import evolve

        for seed in range(20):
            _, family, state = behavioral_setup(2, 2, 6000 + seed)
            first = family.prospects[0]
            second = Prospect(0, random_unit_vector(2, rng), random_emotion(2, rng))
            u = random_unitary(4, 7000 + seed)
            prior = prospect_probability(state, first)
            if prior <= CONDITIONING_EPS:
                continue
            stepwise = prospect_probability(evolve(behavioral_luders(state, first), u), second)
            assert behavioral_joint(state, first, u, second) == pytest.approx(
                stepwise * prior, abs=1e-12
            )

    def test_immediate_case_factorizes(self, rng):
        _, family, state = behavioral_setup(3, 2, 62)
        first = family.prospects[0]
        second = Prospect(1, random_unit_vector(3, rng), random_emotion(2, rng))
        overlap2 = abs(np.vdot(second.vector, first.vector)) ** 2
        expected = overlap2 * prospect_probability(state, first)
        assert behavioral_joint(state, first, np.eye(6), second) == pytest.approx(
            expected, abs=1e-12
        )


class TestBehavioralConditional:
    def test_same_prospect_reproduces(self):
        _, family, state = behavioral_setup(2, 2, 63)
        prospect = family.prospects[0]
        assert behavioral_conditional(state, prospect, np.eye(4), prospect) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_immediate_equals_squared_overlap(self, rng):
        _, family, state = behavioral_setup(2, 2, 64)
        first = family.prospects[0]
        second = Prospect(0, random_unit_vector(2, rng), random_emotion(2, rng))
        expected = abs(np.vdot(second.vector, first.vector)) ** 2
        assert behavioral_conditional(state, first, np.eye(4), second) == pytest.approx(
            expected, abs=1e-12
        )

    def test_immediate_interchange_symmetric(self, rng):
        _, family, state = behavioral_setup(2, 2, 65)
        first = family.prospects[0]
        second = Prospect(0, random_unit_vector(2, rng), random_emotion(2, rng))
        eye = np.eye(4)
        forward = behavioral_conditional(state, first, eye, second)
        reverse = behavioral_conditional(state, second, eye, first)
        assert forward == pytest.approx(reverse, abs=1e-12)

    def test_generic_evolution_breaks_symmetry(self, rng):
        _, family, state = behavioral_setup(2, 2, 66)
        first = family.prospects[0]
        second = Prospect(0, random_unit_vector(2, rng), random_emotion(2, rng))
        u = random_unitary(4, 67)
        forward = behavioral_conditional(state, first, u, second)
        reverse = behavioral_conditional(state, second, u, first)
        assert abs(forward - reverse) > 1e-6


class TestBehavioralSymmetryReport:
    def test_one_family_prospects_commute(self):
        _, family, state = behavioral_setup(3, 2, 68)
        report = behavioral_symmetry_report(
            state, family.prospects[0], np.eye(6), family.prospects[1]
        )
        assert report.conditional_symmetric and report.joint_symmetric

    def test_shared_alternative_joint_asymmetric(self, rng):
        _, family, state = behavioral_setup(2, 2, 69)
        first = family.prospects[0]
        other = Prospect(0, first.alternative_vector, random_emotion(2, rng))
        report = behavioral_symmetry_report(state, first, np.eye(4), other)
        assert report.conditional_symmetric
        assert not report.joint_symmetric

    def test_generic_evolution_breaks_both(self, rng):
        _, family, state = behavioral_setup(2, 2, 70)
        first = family.prospects[0]
        other = Prospect(0, random_unit_vector(2, rng), random_emotion(2, rng))
        report = behavioral_symmetry_report(state, first, random_unitary(4, 71), other)
        assert not report.conditional_symmetric
        assert not report.joint_symmetric


class TestTrivialSubjectSpaceReduction:
    def test_behavioral_collapses_to_sequential(self):
        # a single feeling adds nothing: every behavioral value equals its
        # bare-alternative counterpart
        unit = EmotionVector(np.ones(1))
        for seed in range(20):
            gen = np.random.default_rng(seed)
            rho = random_state(4, int(gen.integers(1, 5)), gen)
            a = random_unit_vector(4, gen)
            b = random_unit_vector(4, gen)
            u = random_unitary(4, int(gen.integers(2**31)))
            pa, pb = projector_from_vector(a), projector_from_vector(b)
            first, second = Prospect(0, a, unit), Prospect(1, b, unit)
            assert behavioral_joint(rho, first, u, second) == pytest.approx(
                joint_probability(rho, pa, u, pb), abs=1e-12
            )
            if float(np.real(np.trace(rho.matrix @ pa))) > CONDITIONING_EPS:
                assert behavioral_conditional(rho, first, u, second) == pytest.approx(
                    conditional_probability(rho, pa, u, pb), abs=1e-12
                )


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dim_a=st.integers(2, 4), dim_s=st.integers(1, 4))
def test_decomposition_property(seed, dim_a, dim_s):
    _, family, state = behavioral_setup(dim_a, dim_s, seed)
    for prospect in family.prospects:
        parts = decompose_prospect(state, prospect)
        assert abs(parts.total - (parts.rational + parts.quality)) < 1e-12
        assert parts.rational >= -1e-12
        assert -1.0 - 1e-9 <= parts.quality <= 1.0 + 1e-9
