"""Quantum probability spaces for separate alternatives.

A choice problem is a labeled orthonormal family of alternative vectors, a
density state over the ambient space, and the projector-valued measure built
from the family.  Probabilities come from the trace rule
``p = Tr(rho P)``.

The ambient dimension ``D`` may exceed the number of alternatives ``N``; a
measure whose projectors do not sum to the identity is *incomplete* and its
probabilities need not sum to one.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionError,
    InvariantError,
    NormalizationError,
    UnitarityError,
)
from .linalg import (
    STRUCTURAL_TOL,
    as_complex_matrix,
    as_complex_vector,
    hermiticity_defect,
    require_square,
    unitarity_defect,
)

__all__ = [
    "AlternativeBasis",
    "DensityState",
    "ProjectorMeasure",
    "clamp_probability",
    "projector_from_vector",
    "measure_from_basis",
    "choice_probability",
    "all_probabilities",
    "evolve",
    "random_state",
    "pure_state",
    "uniform_state",
]

logger = logging.getLogger(__name__)


def clamp_probability(raw: complex, tol: float = STRUCTURAL_TOL, what: str = "probability") -> float:
    """Validate and clamp a raw trace value to [0, 1].

    Floating noise on the boundary (within ``tol`` of the interval) is
    clamped and logged; anything farther out is a genuine invariant
    violation and raises.
    """
    value = complex(raw)
    if abs(value.imag) > tol:
        raise InvariantError(f"{what} has non-negligible imaginary part {value.imag:.3g}")
    p = value.real
    if p < -tol or p > 1.0 + tol:
        raise InvariantError(f"{what} {p!r} is outside [0, 1] beyond tolerance {tol:.3g}")
    if p < 0.0 or p > 1.0:
        clamped = min(max(p, 0.0), 1.0)
        logger.debug("clamped %s %.3e to %g", what, p, clamped)
        return clamped
    return p


def _real_trace_product(rho: np.ndarray, op: np.ndarray) -> complex:
    # Tr(rho op) without forming the full product.
    return complex(np.sum(rho.T * op))


@dataclass(frozen=True, eq=False)
class AlternativeBasis:
    """Labeled orthonormal family of alternative vectors.

    ``vectors[n]`` is the unit vector attached to the alternative named
    ``labels[n]``.  The family must be pairwise orthonormal; it need not
    span the ambient space.
    """

    labels: tuple[str, ...]
    vectors: np.ndarray  # shape (N, D)
    tol: float = STRUCTURAL_TOL

    def __post_init__(self):
        labels = tuple(str(s) for s in self.labels)
        object.__setattr__(self, "labels", labels)
        vectors = np.atleast_2d(np.asarray(self.vectors, dtype=np.complex128))
        if not np.all(np.isfinite(vectors.real)) or not np.all(np.isfinite(vectors.imag)):
            raise InvariantError("basis vectors contain non-finite entries")
        if len(labels) != vectors.shape[0]:
            raise DimensionError(
                f"{len(labels)} labels but {vectors.shape[0]} vectors"
            )
        if len(set(labels)) != len(labels):
            raise InvariantError("basis labels are not unique")
        if vectors.shape[0] > vectors.shape[1]:
            raise DimensionError(
                f"{vectors.shape[0]} orthonormal vectors cannot fit in dimension {vectors.shape[1]}"
            )
        gram = vectors.conj() @ vectors.T
        defect = np.abs(gram - np.eye(vectors.shape[0]))
        if np.max(defect) > self.tol:
            i, j = np.unravel_index(int(np.argmax(defect)), defect.shape)
            if i == j:
                raise InvariantError(
                    f"vector {i} not normalized: <v{i}|v{i}> = {gram[i, i].real:.12g}"
                )
            raise InvariantError(
                f"vectors {i},{j} not orthogonal: |<v{i}|v{j}>| = {abs(gram[i, j]):.3g}"
            )
        vectors.setflags(write=False)
        object.__setattr__(self, "vectors", vectors)

    @property
    def size(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise IndexError(f"unknown alternative label {label!r}") from None


@dataclass(frozen=True, eq=False)
class DensityState:
    """Statistical state: Hermitian, positive-semidefinite, unit trace."""

    matrix: np.ndarray
    tol: float = STRUCTURAL_TOL

    def __post_init__(self):
        m = require_square(as_complex_matrix(self.matrix, "density matrix"), "density matrix")
        defect = hermiticity_defect(m)
        if defect > self.tol:
            raise InvariantError(f"density matrix not Hermitian: defect {defect:.3g}")
        tr = np.trace(m)
        if abs(tr - 1.0) > self.tol:
            raise InvariantError(f"density matrix trace {tr:.12g} differs from 1")
        smallest = float(np.min(np.linalg.eigvalsh((m + m.conj().T) / 2)))
        if smallest < -self.tol:
            raise InvariantError(
                f"density matrix not positive semidefinite: smallest eigenvalue {smallest:.3g}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


@dataclass(frozen=True, eq=False)
class ProjectorMeasure:
    """Labeled family of rank-one orthogonal projectors.

    Rejects degenerate projectors (rank above one) at construction: each
    member must be Hermitian, idempotent, and of unit trace, and distinct
    members must annihilate each other.
    """

    labels: tuple[str, ...]
    projectors: np.ndarray  # shape (N, D, D)
    tol: float = STRUCTURAL_TOL

    def __post_init__(self):
        labels = tuple(str(s) for s in self.labels)
        object.__setattr__(self, "labels", labels)
        projectors = np.asarray(self.projectors, dtype=np.complex128)
        if projectors.ndim != 3 or projectors.shape[1] != projectors.shape[2]:
            raise DimensionError(
                f"projectors must have shape (N, D, D), got {projectors.shape}"
            )
        if len(labels) != projectors.shape[0]:
            raise DimensionError(f"{len(labels)} labels but {projectors.shape[0]} projectors")
        if len(set(labels)) != len(labels):
            raise InvariantError("measure labels are not unique")
        for n, p in enumerate(projectors):
            if hermiticity_defect(p) > self.tol:
                raise InvariantError(f"projector {n} is not Hermitian")
            if np.max(np.abs(p @ p - p)) > self.tol:
                raise InvariantError(f"projector {n} is not idempotent")
            tr = np.trace(p).real
            if abs(tr - 1.0) > self.tol:
                raise InvariantError(
                    f"projector {n} has trace {tr:.6g}; degenerate (non rank-one) "
                    "projectors are not admitted"
                )
        for m in range(len(projectors)):
            for n in range(m + 1, len(projectors)):
                cross = float(np.max(np.abs(projectors[m] @ projectors[n])))
                if cross > self.tol:
                    raise InvariantError(
                        f"projectors {m},{n} not orthogonal: max|P{m} P{n}| = {cross:.3g}"
                    )
        projectors.setflags(write=False)
        object.__setattr__(self, "projectors", projectors)

    @property
    def size(self) -> int:
        return self.projectors.shape[0]

    @property
    def dim(self) -> int:
        return self.projectors.shape[1]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise IndexError(f"unknown measure label {label!r}") from None

    def completeness_defect(self) -> float:
        """Max-norm distance of the projector sum from the identity."""
        total = self.projectors.sum(axis=0)
        return float(np.max(np.abs(total - np.eye(self.dim))))

    def is_complete(self, tol: float | None = None) -> bool:
        return self.completeness_defect() <= (self.tol if tol is None else tol)


def projector_from_vector(v, tol: float = STRUCTURAL_TOL) -> np.ndarray:
    """Rank-one projector ``|v><v|`` for a unit vector ``v``."""
    w = as_complex_vector(v)
    norm = float(np.linalg.norm(w))
    if abs(norm - 1.0) > tol:
        raise NormalizationError(f"vector has norm {norm:.12g}, expected 1")
    w = w / norm  # remove the residual so the projector has exactly unit trace
    return np.outer(w, w.conj())


def measure_from_basis(basis: AlternativeBasis) -> ProjectorMeasure:
    """One rank-one projector per basis vector, in label order."""
    projectors = np.stack([projector_from_vector(v, basis.tol) for v in basis.vectors])
    return ProjectorMeasure(basis.labels, projectors, tol=basis.tol)


def _check_same_dim(state: DensityState, dim: int) -> None:
    if state.dim != dim:
        raise DimensionError(f"state dimension {state.dim} differs from operator dimension {dim}")


def choice_probability(state: DensityState, measure: ProjectorMeasure, index: int) -> float:
    """Probability of the alternative at ``index``: ``Tr(rho P)``."""
    _check_same_dim(state, measure.dim)
    if not 0 <= index < measure.size:
        raise IndexError(f"alternative index {index} out of range [0, {measure.size})")
    raw = _real_trace_product(state.matrix, measure.projectors[index])
    return clamp_probability(raw, measure.tol, what=f"p({measure.labels[index]})")


def all_probabilities(state: DensityState, measure: ProjectorMeasure) -> np.ndarray:
    """Probabilities of every alternative, in label order.

    For a complete measure the entries sum to one; for an incomplete one
    the sum may fall short.
    """
    return np.array(
        [choice_probability(state, measure, n) for n in range(measure.size)], dtype=float
    )


def evolve(state: DensityState, u, tol: float = STRUCTURAL_TOL) -> DensityState:
    """Conjugate the state by a unitary: ``rho -> U rho U†``."""
    m = require_square(as_complex_matrix(u, "evolution operator"), "evolution operator")
    _check_same_dim(state, m.shape[0])
    defect = unitarity_defect(m)
    if defect > tol:
        raise UnitarityError(f"evolution operator not unitary: max|U†U - I| = {defect:.3g}")
    return DensityState(m @ state.matrix @ m.conj().T, tol=state.tol)


def random_state(dim: int, rank: int, seed: int | np.random.Generator) -> DensityState:
    """Random density state of the requested rank, deterministic under seed.

    Built as ``G G† / Tr(G G†)`` with ``G`` a ``dim x rank`` matrix of
    standard complex Gaussians.
    """
    if not 1 <= rank <= dim:
        raise DimensionError(f"rank must lie in [1, {dim}], got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    gram = g @ g.conj().T
    return DensityState(gram / np.trace(gram).real)


def pure_state(v, tol: float = STRUCTURAL_TOL) -> DensityState:
    """Density state of a unit vector."""
    return DensityState(projector_from_vector(v, tol), tol=tol)


def uniform_state(dim: int) -> DensityState:
    """Maximally mixed state ``I / dim``."""
    if dim < 1:
        raise DimensionError(f"dimension must be positive, got {dim}")
    return DensityState(np.eye(dim, dtype=np.complex128) / dim)
