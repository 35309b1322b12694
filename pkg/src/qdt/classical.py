"""Classical (Kolmogorov) joint and conditional probabilities.

The comparison baseline: a classical joint table is symmetric under event
interchange by construction, while classical conditionals are generally
asymmetric.  Quantum sequential probabilities invert that picture, and
:func:`induced_joint_from_quantum` lays the two side by side.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvariantError, ZeroProbabilityConditioning
from .linalg import ALGEBRAIC_TOL, STRUCTURAL_TOL
from .sequential import CONDITIONING_EPS, marginal_check
from .space import DensityState, ProjectorMeasure

__all__ = [
    "JointTable",
    "AsymmetryWitness",
    "InducedJointReport",
    "classical_conditional",
    "asymmetry_witness",
    "induced_joint_from_quantum",
]


@dataclass(frozen=True, eq=False)
class JointTable:
    """Dense table of joint frequencies over two finite event families.

    ``cells[n, k]`` stores the (order-free) joint probability of row event
    ``n`` and column event ``k``; cells are non-negative and sum to one.
    """

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    cells: np.ndarray
    tol: float = ALGEBRAIC_TOL

    def __post_init__(self):
        rows = tuple(str(s) for s in self.row_labels)
        cols = tuple(str(s) for s in self.col_labels)
        cells = np.asarray(self.cells, dtype=float)
        if cells.ndim != 2 or cells.shape != (len(rows), len(cols)):
            raise DimensionError(
                f"cells shape {cells.shape} does not match {len(rows)} x {len(cols)} labels"
            )
        if not np.all(np.isfinite(cells)):
            raise InvariantError("joint table contains non-finite cells")
        if np.min(cells) < 0:
            raise InvariantError(f"joint table has a negative cell: {np.min(cells):.3g}")
        total = float(cells.sum())
        if abs(total - 1.0) > self.tol:
            raise InvariantError(f"joint table sums to {total!r}, expected 1")
        cells.setflags(write=False)
        object.__setattr__(self, "row_labels", rows)
        object.__setattr__(self, "col_labels", cols)
        object.__setattr__(self, "cells", cells)

    def row_marginals(self) -> np.ndarray:
        return self.cells.sum(axis=1)

    def col_marginals(self) -> np.ndarray:
        return self.cells.sum(axis=0)


def classical_conditional(table: JointTable, given_a: int, b: int) -> float:
    """Conditional probability of column event ``b`` given row event ``given_a``."""
    if not 0 <= given_a < len(table.row_labels):
        raise IndexError(f"row index {given_a} out of range")
    if not 0 <= b < len(table.col_labels):
        raise IndexError(f"column index {b} out of range")
    marginal = float(table.row_marginals()[given_a])
    if marginal <= CONDITIONING_EPS:
        raise ZeroProbabilityConditioning(
            f"row event {table.row_labels[given_a]!r} has probability "
            f"{marginal:.3g} <= {CONDITIONING_EPS:g}"
        )
    return float(table.cells[given_a, b]) / marginal


@dataclass(frozen=True)
class AsymmetryWitness:
    """Largest gap between the two conditioning directions of a joint table."""

    value: float
    row_index: int
    col_index: int
    row_label: str
    col_label: str
    forward: float  # p(column | row)
    reverse: float  # p(row | column)


def asymmetry_witness(table: JointTable) -> AsymmetryWitness:
    """Find the event pair where conditional asymmetry is largest.

    The joint table itself is order-symmetric by construction; conditionals
    are symmetric only when the paired marginals agree.  Pairs where either
    marginal vanishes are skipped (conditioning there is undefined).
    """
    row_m = table.row_marginals()
    col_m = table.col_marginals()
    best = AsymmetryWitness(0.0, 0, 0, table.row_labels[0], table.col_labels[0], 0.0, 0.0)
    for n in range(len(table.row_labels)):
        if row_m[n] <= CONDITIONING_EPS:
            continue
        for k in range(len(table.col_labels)):
            if col_m[k] <= CONDITIONING_EPS:
                continue
            forward = table.cells[n, k] / row_m[n]
            reverse = table.cells[n, k] / col_m[k]
            gap = abs(forward - reverse)
            if gap > best.value:
                best = AsymmetryWitness(
                    value=float(gap),
                    row_index=n,
                    col_index=k,
                    row_label=table.row_labels[n],
                    col_label=table.col_labels[k],
                    forward=float(forward),
                    reverse=float(reverse),
                )
    return best


@dataclass(frozen=True, eq=False)
class InducedJointReport:
    """Quantum two-choice probabilities arranged like a classical table.

    ``forward[n, k]`` is the probability of row alternative ``n`` chosen
    first, column alternative ``k`` second; ``reverse[n, k]`` swaps the
    order.  Unlike a classical joint, the two need not agree; their summed
    difference still vanishes because each order is normalized.
    """

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    forward: np.ndarray
    reverse: np.ndarray
    difference: np.ndarray
    residuals: dict[str, float]

    def max_order_gap(self) -> float:
        return float(np.max(np.abs(self.difference)))

    def to_joint_table(self, tol: float = STRUCTURAL_TOL) -> JointTable:
        """Reinterpret as a classical table; only valid when order-symmetric."""
        gap = self.max_order_gap()
        if gap > tol:
            raise InvariantError(
                f"order-dependent joint (max gap {gap:.3g}) does not define a classical table"
            )
        return JointTable(self.row_labels, self.col_labels, self.forward, tol=max(tol, ALGEBRAIC_TOL))


def induced_joint_from_quantum(
    state0: DensityState,
    first_measure: ProjectorMeasure,
    u,
    second_measure: ProjectorMeasure,
    tol: float = STRUCTURAL_TOL,
) -> InducedJointReport:
    """Tabulate quantum joint probabilities in both choice orders.

    Requires complete measures.  Residuals cover the per-row/column
    marginal identities and the vanishing of the summed order difference.
    """
    report = marginal_check(state0, first_measure, u, second_measure, tol)
    difference = report.joint_forward - report.joint_reverse
    residuals = dict(report.residuals)
    residuals["difference_total"] = abs(float(difference.sum()))
    return InducedJointReport(
        row_labels=first_measure.labels,
        col_labels=second_measure.labels,
        forward=report.joint_forward,
        reverse=report.joint_reverse,
        difference=difference,
        residuals=residuals,
    )
