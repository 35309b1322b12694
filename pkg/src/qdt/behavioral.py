"""Emotion-augmented decision making on the tensor-product decision space.

Rational evaluation of alternatives lives on the alternative space; the
subjective side is carried by an auxiliary *subject space* spanned by
elementary feelings.  An alternative bundled with its emotion vector is a
*prospect*, a product vector on the decision space (alternative space tensor
subject space).

The probability of a prospect splits exactly into a *rational fraction*
(the diagonal part in the elementary-feeling basis, which behaves like a
classical probability) and a *quality factor* (the interference of
emotions, which may be negative).  Sequential prospect choices reuse the
machinery of :mod:`qdt.sequential` verbatim, because a prospect projector is
just a rank-one projector on the decision space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionError,
    InvariantError,
    NormalizationError,
)
from .linalg import ALGEBRAIC_TOL, STRUCTURAL_TOL, as_complex_vector
from .sequential import (
    SymmetryReport,
    conditional_probability,
    joint_probability,
    luders_reduce,
    symmetry_from_projectors,
)
from .space import AlternativeBasis, DensityState, clamp_probability, projector_from_vector

__all__ = [
    "SubjectSpace",
    "EmotionVector",
    "Prospect",
    "ProspectMeasure",
    "ProspectDecomposition",
    "fluctuate_emotion",
    "emotion_projector",
    "prospect_projector",
    "prospect_measure_from_basis",
    "resolution_check",
    "normalized_for_measure",
    "prospect_probability",
    "decompose_prospect",
    "decomposition_sums",
    "behavioral_luders",
    "behavioral_joint",
    "behavioral_conditional",
    "behavioral_symmetry_report",
]


@dataclass(frozen=True)
class SubjectSpace:
    """Space of elementary feelings, one orthonormal direction per feeling."""

    dim: int
    feeling_labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionError(f"subject space dimension must be positive, got {self.dim}")
        labels = tuple(str(s) for s in self.feeling_labels)
        if not labels:
            labels = tuple(f"feeling_{i}" for i in range(self.dim))
        if len(labels) != self.dim:
            raise DimensionError(f"{len(labels)} feeling labels for dimension {self.dim}")
        if len(set(labels)) != len(labels):
            raise InvariantError("feeling labels are not unique")
        object.__setattr__(self, "feeling_labels", labels)


@dataclass(frozen=True, eq=False)
class EmotionVector:
    """Unit vector of feeling amplitudes attached to one alternative.

    Emotion vectors of different alternatives need not be orthogonal (and
    generally are not); that is where interference comes from.
    """

    coefficients: np.ndarray
    tol: float = STRUCTURAL_TOL

    def __post_init__(self):
        c = as_complex_vector(self.coefficients, "emotion coefficients")
        norm = float(np.linalg.norm(c))
        if abs(norm - 1.0) > self.tol:
            raise NormalizationError(
                f"emotion coefficients have squared norm {norm**2:.12g}, expected 1"
            )
        c = c / norm
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def dim(self) -> int:
        return self.coefficients.shape[0]

    def overlap(self, other: "EmotionVector") -> complex:
        """Inner product with another emotion vector; not a Kronecker delta."""
        return complex(np.vdot(self.coefficients, other.coefficients))


def fluctuate_emotion(
    emotion: EmotionVector, amplitude: float, rng: int | np.random.Generator
) -> EmotionVector:
    """Contextual perturbation hook: jitter the amplitudes, renormalize.

    Emotions are contextual and may drift between evaluations; no dynamical
    law is imposed, only a caller-controlled noise amplitude.
    """
    if amplitude < 0:
        raise InvariantError(f"noise amplitude must be non-negative, got {amplitude}")
    gen = np.random.default_rng(rng)
    noise = gen.standard_normal(emotion.dim) + 1j * gen.standard_normal(emotion.dim)
    perturbed = emotion.coefficients + amplitude * noise
    norm = float(np.linalg.norm(perturbed))
    if norm == 0.0:
        raise NormalizationError("perturbation annihilated the emotion vector")
    return EmotionVector(perturbed / norm, tol=emotion.tol)


def emotion_projector(emotion: EmotionVector) -> np.ndarray:
    """Projector onto the feeling subspace of one alternative.

    Idempotent, but projectors of different emotion vectors are generally
    not orthogonal: their product carries the mutual overlap.
    """
    return projector_from_vector(emotion.coefficients, emotion.tol)


@dataclass(frozen=True, eq=False)
class Prospect:
    """An alternative paired with its emotions: a product vector on the
    decision space."""

    alternative_index: int
    alternative_vector: np.ndarray
    emotion: EmotionVector
    tol: float = STRUCTURAL_TOL

    def __post_init__(self):
        if self.alternative_index < 0:
            raise IndexError(f"alternative index must be non-negative, got {self.alternative_index}")
        v = as_complex_vector(self.alternative_vector, "alternative vector")
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > self.tol:
            raise NormalizationError(f"alternative vector has norm {norm:.12g}, expected 1")
        v = v / norm
        v.setflags(write=False)
        object.__setattr__(self, "alternative_vector", v)

    @property
    def alternative_dim(self) -> int:
        return self.alternative_vector.shape[0]

    @property
    def subject_dim(self) -> int:
        return self.emotion.dim

    @property
    def dim(self) -> int:
        return self.alternative_dim * self.subject_dim

    @property
    def vector(self) -> np.ndarray:
        """The prospect vector on the decision space (alternative-major)."""
        return np.kron(self.alternative_vector, self.emotion.coefficients)


def prospect_projector(prospect: Prospect) -> np.ndarray:
    """Rank-one projector of a prospect on the decision space.

    Equals the Kronecker product of the alternative projector with the
    emotion projector; prospects of distinct (orthogonal) alternatives have
    orthogonal, commuting projectors regardless of their emotions.
    """
    return projector_from_vector(prospect.vector, prospect.tol)


@dataclass(frozen=True, eq=False)
class ProspectMeasure:
    """Projector family of a prospect per alternative on the decision space.

    Distinct prospects must carry orthonormal alternative vectors, which
    makes their projectors orthogonal and mutually commuting.  The family
    resolves the identity only on average over a state; completeness is a
    property of the state, checked by :func:`resolution_check`.
    """

    prospects: tuple[Prospect, ...]
    projectors: np.ndarray  # shape (N, D, D) on the decision space
    tol: float = STRUCTURAL_TOL
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        prospects = tuple(self.prospects)
        if not prospects:
            raise DimensionError("a prospect measure needs at least one prospect")
        labels = tuple(str(s) for s in self.labels)
        if not labels:
            labels = tuple(f"P{p.alternative_index}" for p in prospects)
        if len(labels) != len(prospects):
            raise DimensionError(f"{len(labels)} labels but {len(prospects)} prospects")
        if len(set(labels)) != len(labels):
            raise InvariantError("prospect labels are not unique")
        object.__setattr__(self, "labels", labels)
        dims = {(p.alternative_dim, p.subject_dim) for p in prospects}
        if len(dims) != 1:
            raise DimensionError(f"prospects live on different spaces: {sorted(dims)}")
        alt = np.stack([p.alternative_vector for p in prospects])
        gram = alt.conj() @ alt.T
        defect = float(np.max(np.abs(gram - np.eye(len(prospects)))))
        if defect > self.tol:
            raise InvariantError(
                f"alternative vectors of distinct prospects are not orthonormal "
                f"(max defect {defect:.3g})"
            )
        projectors = np.asarray(self.projectors, dtype=np.complex128)
        expected = (len(prospects), prospects[0].dim, prospects[0].dim)
        if projectors.shape != expected:
            raise DimensionError(f"projectors must have shape {expected}, got {projectors.shape}")
        for n, p in enumerate(projectors):
            if float(np.max(np.abs(p @ p - p))) > self.tol:
                raise InvariantError(f"prospect projector {n} is not idempotent")
        for m in range(len(prospects)):
            for n in range(m + 1, len(prospects)):
                cross = float(np.max(np.abs(projectors[m] @ projectors[n])))
                if cross > self.tol:
                    raise InvariantError(
                        f"prospect projectors {m},{n} not orthogonal: max norm {cross:.3g}"
                    )
        projectors.setflags(write=False)
        object.__setattr__(self, "prospects", prospects)
        object.__setattr__(self, "projectors", projectors)

    @classmethod
    def from_prospects(
        cls, prospects, tol: float = STRUCTURAL_TOL, labels: tuple[str, ...] = ()
    ) -> "ProspectMeasure":
        prospects = tuple(prospects)
        projectors = np.stack([prospect_projector(p) for p in prospects])
        return cls(prospects, projectors, tol=tol, labels=labels)

    @property
    def size(self) -> int:
        return len(self.prospects)

    @property
    def dim(self) -> int:
        return self.projectors.shape[1]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise IndexError(f"unknown prospect label {label!r}") from None

    def total_projector(self) -> np.ndarray:
        """Sum of the family; a projector, but generally not the identity."""
        return self.projectors.sum(axis=0)


def prospect_measure_from_basis(
    basis: AlternativeBasis, emotions, tol: float = STRUCTURAL_TOL
) -> ProspectMeasure:
    """Pair each basis alternative with its emotion vector."""
    emotions = tuple(emotions)
    if len(emotions) != basis.size:
        raise DimensionError(
            f"{basis.size} alternatives but {len(emotions)} emotion vectors"
        )
    prospects = tuple(
        Prospect(n, basis.vectors[n], emotions[n], tol=tol) for n in range(basis.size)
    )
    return ProspectMeasure.from_prospects(prospects, tol=tol, labels=basis.labels)


def _check_decision_dim(state: DensityState, dim: int) -> None:
    if state.dim != dim:
        raise DimensionError(
            f"state dimension {state.dim} differs from decision-space dimension {dim}"
        )


def resolution_check(state: DensityState, measure: ProspectMeasure) -> float:
    """How far the prospect family is from resolving unity on this state.

    Returns ``|Tr(rho * sum of prospect projectors) - 1|``.  A scenario is
    behaviorally normalized when this residual is negligible; for generic
    emotions and states it is strictly positive, which is reported, not
    raised.
    """
    _check_decision_dim(state, measure.dim)
    raw = np.trace(state.matrix @ measure.total_projector())
    return abs(float(np.real(raw)) - 1.0)


def normalized_for_measure(state: DensityState, measure: ProspectMeasure) -> DensityState:
    """Project a state onto the prospect family's range and renormalize.

    The result always passes :func:`resolution_check`; use it to build
    behaviorally normalized scenarios from arbitrary seeds.
    """
    _check_decision_dim(state, measure.dim)
    return luders_reduce(state, measure.total_projector(), tol=measure.tol)


def prospect_probability(state: DensityState, prospect: Prospect) -> float:
    """Probability of a prospect: trace rule on the decision space."""
    _check_decision_dim(state, prospect.dim)
    raw = np.trace(state.matrix @ prospect_projector(prospect))
    return clamp_probability(raw, prospect.tol, what="prospect probability")


@dataclass(frozen=True)
class ProspectDecomposition:
    """Split of a prospect probability into rational and interference parts.

    ``total == rational + quality`` is an exact algebraic split of the trace;
    the quality factor is real and bounded by one in magnitude.
    """

    total: float
    rational: float
    quality: float
    split_tol: float = ALGEBRAIC_TOL

    def __post_init__(self):
        if abs(self.total - (self.rational + self.quality)) > self.split_tol:
            raise InvariantError(
                f"decomposition does not add up: |{self.total!r} - "
                f"({self.rational!r} + {self.quality!r})| > {self.split_tol:g}"
            )
        if not -1.0 - STRUCTURAL_TOL <= self.quality <= 1.0 + STRUCTURAL_TOL:
            raise InvariantError(f"quality factor {self.quality!r} outside [-1, 1]")


def _feeling_block(state: DensityState, prospect: Prospect) -> np.ndarray:
    """Matrix of cross-feeling amplitudes of the state at one alternative.

    Entry (a, b) is the state matrix element between the decision-space
    basis vectors (alternative, feeling a) and (alternative, feeling b).
    """
    da, ds = prospect.alternative_dim, prospect.subject_dim
    _check_decision_dim(state, da * ds)
    rho4 = state.matrix.reshape(da, ds, da, ds)
    a = prospect.alternative_vector
    return np.einsum("i,iajb,j->ab", a.conj(), rho4, a)


def decompose_prospect(state: DensityState, prospect: Prospect) -> ProspectDecomposition:
    """Split a prospect probability into rational fraction plus quality factor.

    The rational fraction collects the diagonal (same-feeling) terms,
    weighted by the squared emotion amplitudes; the quality factor collects
    the cross-feeling interference terms.  The interference sum is
    analytically real (its terms come in conjugate pairs under a Hermitian
    state); the residual imaginary part is asserted negligible and dropped.
    """
    b = prospect.emotion.coefficients
    block = _feeling_block(state, prospect)
    total_raw = complex(b.conj() @ block @ b)
    rational_raw = complex(np.sum((np.abs(b) ** 2) * np.diagonal(block)))
    quality_raw = complex(b.conj() @ (block - np.diag(np.diagonal(block))) @ b)
    for name, value in (("total", total_raw), ("rational", rational_raw), ("quality", quality_raw)):
        if abs(value.imag) > STRUCTURAL_TOL:
            raise InvariantError(
                f"{name} part has non-negligible imaginary residue {value.imag:.3g}"
            )
    return ProspectDecomposition(
        total=clamp_probability(total_raw, prospect.tol, what="prospect probability"),
        rational=rational_raw.real,
        quality=quality_raw.real,
        split_tol=max(ALGEBRAIC_TOL, 4 * np.finfo(float).eps * state.dim),
    )


def decomposition_sums(state: DensityState, measure: ProspectMeasure) -> dict[str, float]:
    """Diagnostic sums of the decomposition over a whole prospect family.

    The rational fractions summing to one (and hence the quality factors
    summing to zero) is an assumption about admissible states, not an
    algebraic identity; both residuals are reported for the caller to
    judge.
    """
    parts = [decompose_prospect(state, p) for p in measure.prospects]
    total = sum(p.total for p in parts)
    rational = sum(p.rational for p in parts)
    quality = sum(p.quality for p in parts)
    return {
        "probability_sum": total,
        "rational_sum": rational,
        "quality_sum": quality,
        "probability_sum_residual": abs(total - 1.0),
        "rational_sum_residual": abs(rational - 1.0),
        "quality_sum_residual": abs(quality),
    }


def behavioral_luders(state: DensityState, prospect: Prospect) -> DensityState:
    """State after a prospect is certainly chosen.

    The posterior assigns the chosen prospect probability one; reducing
    again by the same prospect is a no-op.
    """
    return luders_reduce(state, prospect_projector(prospect), tol=prospect.tol)


def behavioral_joint(
    state0: DensityState, first: Prospect, u, second: Prospect, tol: float = STRUCTURAL_TOL
) -> float:
    """Joint probability of choosing ``first`` then ``second`` prospect."""
    return joint_probability(
        state0, prospect_projector(first), u, prospect_projector(second), tol
    )


def behavioral_conditional(
    state0: DensityState, first: Prospect, u, second: Prospect, tol: float = STRUCTURAL_TOL
) -> float:
    """Probability of the ``second`` prospect given the ``first`` was chosen.

    With no evolution in between this reduces to the squared overlap of the
    two prospect vectors, which is interchange-symmetric.
    """
    return conditional_probability(
        state0, prospect_projector(first), u, prospect_projector(second), tol
    )


def behavioral_symmetry_report(
    state0: DensityState,
    a: Prospect,
    u,
    b: Prospect,
    tolerance: float = ALGEBRAIC_TOL,
    tol: float = STRUCTURAL_TOL,
) -> SymmetryReport:
    """Order-symmetry report for a pair of prospects.

    Same flags as the alternative-space report: immediate conditionals are
    always symmetric, immediate joints only for commuting prospect
    projectors, and nothing is symmetric in general once evolution
    intervenes.
    """
    return symmetry_from_projectors(
        state0,
        prospect_projector(a),
        prospect_projector(b),
        u,
        tolerance=tolerance,
        tol=tol,
    )
