"""Sequential choice: state reduction, joint and conditional probabilities.

The two-step story: a first alternative is certainly chosen at ``t0`` (the
state collapses to the reduced state ``P rho P / Tr(rho P)``), the state then
evolves by a unitary ``U`` until the second choice at ``t``, where the trace
rule applies again.  Time never appears explicitly; callers supply the
unitary that acted between the two choices.  The immediate-succession case is
``U = I``.

Reversed-order quantities come from the same operations with the arguments
swapped; there is no separate code path for them.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    DimensionError,
    IncompleteMeasureError,
    InvariantError,
    NormalizationError,
    UnitarityError,
    ZeroProbabilityConditioning,
)
from .linalg import (
    STRUCTURAL_TOL,
    ALGEBRAIC_TOL,
    as_complex_matrix,
    as_complex_vector,
    hermiticity_defect,
    require_square,
    unitarity_defect,
)
from .space import DensityState, ProjectorMeasure, clamp_probability, projector_from_vector

__all__ = [
    "CONDITIONING_EPS",
    "TimeTag",
    "ChoiceRecord",
    "SymmetryReport",
    "MarginalReport",
    "luders_reduce",
    "joint_probability",
    "conditional_probability",
    "immediate_conditional",
    "marginal_check",
    "symmetry_from_projectors",
    "symmetry_report",
]

# Conditioning threshold: a first-choice probability at or below this is
# treated as zero, and conditioning on it is a typed error rather than a
# division by numerical dust.
CONDITIONING_EPS = 1e-12


class TimeTag(str, Enum):
    """Which instant of the two-choice timeline a record refers to."""

    BEFORE = "before"  # just before the first choice
    AT = "at"  # the first choice itself
    IMMEDIATELY_AFTER = "immediately_after"  # right after the reduction
    LATER = "later"  # after the inter-choice evolution


@dataclass(frozen=True)
class ChoiceRecord:
    """Bookkeeping for one resolved choice in a sequential run."""

    measure_label: str
    outcome_index: int
    time_tag: TimeTag

    def __post_init__(self):
        if self.outcome_index < 0:
            raise IndexError(f"outcome index must be non-negative, got {self.outcome_index}")
        object.__setattr__(self, "time_tag", TimeTag(self.time_tag))

    @classmethod
    def for_measure(
        cls, measure: ProjectorMeasure, measure_label: str, outcome_index: int, time_tag: TimeTag
    ) -> "ChoiceRecord":
        if not 0 <= outcome_index < measure.size:
            raise IndexError(
                f"outcome index {outcome_index} out of range for measure of size {measure.size}"
            )
        return cls(measure_label, outcome_index, time_tag)


@dataclass(frozen=True)
class SymmetryReport:
    """Forward/reverse conditional and joint probabilities with symmetry flags.

    A flag is true exactly when the forward and reverse values differ by less
    than ``tolerance``.  ``zero_conditioning`` is set (instead of raising)
    when one of the conditionals is undefined because its conditioning
    probability vanishes; the undefined values are NaN.
    """

    conditional_forward: float
    conditional_reverse: float
    joint_forward: float
    joint_reverse: float
    conditional_symmetric: bool
    joint_symmetric: bool
    tolerance: float
    zero_conditioning: bool = False

    @classmethod
    def from_values(
        cls,
        conditional_forward: float,
        conditional_reverse: float,
        joint_forward: float,
        joint_reverse: float,
        tolerance: float,
        zero_conditioning: bool = False,
    ) -> "SymmetryReport":
        def close(x: float, y: float) -> bool:
            return np.isfinite(x) and np.isfinite(y) and abs(x - y) < tolerance

        return cls(
            conditional_forward=conditional_forward,
            conditional_reverse=conditional_reverse,
            joint_forward=joint_forward,
            joint_reverse=joint_reverse,
            conditional_symmetric=close(conditional_forward, conditional_reverse),
            joint_symmetric=close(joint_forward, joint_reverse),
            tolerance=tolerance,
            zero_conditioning=zero_conditioning,
        )


def _require_projector(p, tol: float = STRUCTURAL_TOL, name: str = "projector") -> np.ndarray:
    m = require_square(as_complex_matrix(p, name), name)
    if hermiticity_defect(m) > tol:
        raise InvariantError(f"{name} is not Hermitian")
    if float(np.max(np.abs(m @ m - m))) > tol:
        raise InvariantError(f"{name} is not idempotent")
    return m


def _require_unitary(u, dim: int, tol: float = STRUCTURAL_TOL) -> np.ndarray:
    m = require_square(as_complex_matrix(u, "evolution operator"), "evolution operator")
    if m.shape[0] != dim:
        raise DimensionError(
            f"evolution operator dimension {m.shape[0]} differs from state dimension {dim}"
        )
    defect = unitarity_defect(m)
    if defect > tol:
        raise UnitarityError(f"evolution operator not unitary: max|U†U - I| = {defect:.3g}")
    return m


def luders_reduce(state: DensityState, projector, tol: float = STRUCTURAL_TOL) -> DensityState:
    """State after an alternative is certainly chosen: ``P rho P / Tr(rho P)``.

    The posterior assigns probability one to the chosen alternative.
    Conditioning on an outcome of vanishing probability is undefined and
    raises :class:`ZeroProbabilityConditioning`.
    """
    p = _require_projector(projector, tol)
    if p.shape[0] != state.dim:
        raise DimensionError(
            f"projector dimension {p.shape[0]} differs from state dimension {state.dim}"
        )
    weight = float(np.real(np.trace(state.matrix @ p)))
    if weight <= CONDITIONING_EPS:
        raise ZeroProbabilityConditioning(
            f"cannot condition on an outcome of probability {weight:.3g} <= {CONDITIONING_EPS:g}"
        )
    reduced = p @ state.matrix @ p / weight
    # symmetrize away rounding so the posterior passes its own invariants
    return DensityState((reduced + reduced.conj().T) / 2, tol=state.tol)


def joint_probability(
    state0: DensityState, first, u, second, tol: float = STRUCTURAL_TOL
) -> float:
    """Two-step joint probability of choosing ``first`` then ``second``.

    ``state0`` is the state just before the first choice; ``u`` is the
    unitary acting between the choices.  Computed as
    ``Tr(U P1 rho P1 U† P2)``.
    """
    p1 = _require_projector(first, tol, "first projector")
    p2 = _require_projector(second, tol, "second projector")
    if p1.shape[0] != state0.dim or p2.shape[0] != state0.dim:
        raise DimensionError("projector dimensions differ from state dimension")
    um = _require_unitary(u, state0.dim, tol)
    evolved = um @ (p1 @ state0.matrix @ p1) @ um.conj().T
    raw = np.trace(evolved @ p2)
    return clamp_probability(raw, tol, what="joint probability")


def conditional_probability(
    state0: DensityState, first, u, second, tol: float = STRUCTURAL_TOL
) -> float:
    """Probability of ``second`` given that ``first`` was certainly chosen.

    Equals the joint probability divided by the first-choice probability,
    and coincides with the reduce-evolve-measure pipeline.
    """
    p1 = _require_projector(first, tol, "first projector")
    weight = float(np.real(np.trace(state0.matrix @ p1)))
    if weight <= CONDITIONING_EPS:
        raise ZeroProbabilityConditioning(
            f"cannot condition on an outcome of probability {weight:.3g} <= {CONDITIONING_EPS:g}"
        )
    joint = joint_probability(state0, p1, u, second, tol)
    return clamp_probability(joint / weight, tol, what="conditional probability")


def immediate_conditional(first_vector, second_vector, tol: float = STRUCTURAL_TOL) -> float:
    """Conditional probability for back-to-back choices: ``|<second|first>|^2``.

    This is the no-evolution limit of :func:`conditional_probability` for
    rank-one projectors, and it is symmetric under interchange.
    """
    a = as_complex_vector(first_vector, "first vector")
    b = as_complex_vector(second_vector, "second vector")
    if a.shape != b.shape:
        raise DimensionError(f"vector dimensions differ: {a.shape[0]} vs {b.shape[0]}")
    for name, v in (("first", a), ("second", b)):
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > tol:
            raise NormalizationError(f"{name} vector has norm {norm:.12g}, expected 1")
    return clamp_probability(abs(np.vdot(b, a)) ** 2, tol, what="immediate conditional")


@dataclass(frozen=True)
class MarginalReport:
    """Residuals of the normalization identities of a two-choice experiment.

    ``joint_forward[n, k]`` is the probability of alternative ``n`` of the
    first measure followed by alternative ``k`` of the second;
    ``joint_reverse[n, k]`` is the probability of ``k`` first, then ``n``.

    Residuals (all zero in exact arithmetic for complete measures):

    * ``conditional_normalization``: conditionals given either first choice
      sum to one.
    * ``joint_marginal``: summing the joint over the second choice recovers
      the first-choice probability.
    * ``total_normalization``: the joint sums to one over both indices, in
      either order.
    * ``antisymmetry``: the two orders have equal total mass, so the summed
      difference vanishes.
    """

    joint_forward: np.ndarray
    joint_reverse: np.ndarray
    residuals: dict[str, float]

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())

    def passed(self, tol: float = STRUCTURAL_TOL) -> bool:
        return self.max_residual <= tol


def marginal_check(
    state0: DensityState,
    first_measure: ProjectorMeasure,
    u,
    second_measure: ProjectorMeasure,
    tol: float = STRUCTURAL_TOL,
) -> MarginalReport:
    """Verify the normalization identities of sequential probabilities.

    Both measures must be complete over the ambient space.  Rows whose
    conditioning probability vanishes are skipped in the conditional
    identity (conditioning there is undefined).
    """
    for name, measure in (("first", first_measure), ("second", second_measure)):
        if measure.dim != state0.dim:
            raise DimensionError(f"{name} measure dimension differs from state dimension")
        if not measure.is_complete(tol):
            raise IncompleteMeasureError(
                f"{name} measure is incomplete: projector sum deviates from identity "
                f"by {measure.completeness_defect():.3g}"
            )
    um = _require_unitary(u, state0.dim, tol)

    na, nb = first_measure.size, second_measure.size
    fwd = np.empty((na, nb))
    rev = np.empty((na, nb))
    for n in range(na):
        for k in range(nb):
            fwd[n, k] = joint_probability(
                state0, first_measure.projectors[n], um, second_measure.projectors[k], tol
            )
            rev[n, k] = joint_probability(
                state0, second_measure.projectors[k], um, first_measure.projectors[n], tol
            )

    p_first = np.array(
        [float(np.real(np.trace(state0.matrix @ p))) for p in first_measure.projectors]
    )
    p_second = np.array(
        [float(np.real(np.trace(state0.matrix @ p))) for p in second_measure.projectors]
    )

    cond_residual = 0.0
    for n in range(na):
        if p_first[n] > CONDITIONING_EPS:
            cond_residual = max(cond_residual, abs(fwd[n, :].sum() / p_first[n] - 1.0))
    for k in range(nb):
        if p_second[k] > CONDITIONING_EPS:
            cond_residual = max(cond_residual, abs(rev[:, k].sum() / p_second[k] - 1.0))

    marginal_residual = max(
        float(np.max(np.abs(fwd.sum(axis=1) - p_first))),
        float(np.max(np.abs(rev.sum(axis=0) - p_second))),
    )
    total_residual = max(abs(fwd.sum() - 1.0), abs(rev.sum() - 1.0))
    antisymmetry_residual = abs((fwd - rev).sum())

    return MarginalReport(
        joint_forward=fwd,
        joint_reverse=rev,
        residuals={
            "conditional_normalization": float(cond_residual),
            "joint_marginal": float(marginal_residual),
            "total_normalization": float(total_residual),
            "antisymmetry": float(antisymmetry_residual),
        },
    )


def symmetry_from_projectors(
    state0: DensityState,
    first,
    second,
    u,
    tolerance: float = ALGEBRAIC_TOL,
    tol: float = STRUCTURAL_TOL,
) -> SymmetryReport:
    """Symmetry report for an arbitrary pair of projectors.

    Forward means ``first`` is chosen first; reverse swaps the roles.  A
    vanishing conditioning probability is flagged, not raised: the affected
    conditional is NaN and ``zero_conditioning`` is set.
    """
    p1 = _require_projector(first, tol, "first projector")
    p2 = _require_projector(second, tol, "second projector")
    um = _require_unitary(u, state0.dim, tol)

    joint_fwd = joint_probability(state0, p1, um, p2, tol)
    joint_rev = joint_probability(state0, p2, um, p1, tol)
    w1 = float(np.real(np.trace(state0.matrix @ p1)))
    w2 = float(np.real(np.trace(state0.matrix @ p2)))

    zero = False
    if w1 > CONDITIONING_EPS:
        cond_fwd = clamp_probability(joint_fwd / w1, tol, what="conditional probability")
    else:
        cond_fwd, zero = float("nan"), True
    if w2 > CONDITIONING_EPS:
        cond_rev = clamp_probability(joint_rev / w2, tol, what="conditional probability")
    else:
        cond_rev, zero = float("nan"), True

    return SymmetryReport.from_values(
        conditional_forward=cond_fwd,
        conditional_reverse=cond_rev,
        joint_forward=joint_fwd,
        joint_reverse=joint_rev,
        tolerance=tolerance,
        zero_conditioning=zero,
    )


def symmetry_report(
    state0: DensityState,
    a,
    b,
    u,
    tolerance: float = ALGEBRAIC_TOL,
    tol: float = STRUCTURAL_TOL,
) -> SymmetryReport:
    """Order-symmetry report for the rank-one projectors of two unit vectors.

    With no evolution between the choices the conditional probabilities are
    always interchange-symmetric, while the joints are symmetric only when
    the two projectors commute.
    """
    p1 = projector_from_vector(a, tol)
    p2 = projector_from_vector(b, tol)
    return symmetry_from_projectors(state0, p1, p2, u, tolerance=tolerance, tol=tol)
