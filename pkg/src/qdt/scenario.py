"""Scenario documents: the JSON schema, parser/validator, and emitter.

A scenario is a UTF-8 JSON document describing one choice problem: the
ambient space, alternative bases, initial state, inter-choice evolution,
and (optionally) a subject space with per-alternative emotion rows.
Complex numbers are two-element ``[re, im]`` arrays; matrices are row-major
arrays of rows.  Unknown fields are rejected.

Parsing is total: every input either yields a fully validated
:class:`Scenario` or raises a typed error carrying its location
(:class:`~qdt.errors.ScenarioSyntaxError` with line/column,
:class:`~qdt.errors.SchemaError` or :class:`~qdt.errors.InvariantError`
with a JSON-path).

Document layout (defaults in parentheses)::

    {
      "schema": "qdt/1",                      (optional, must be "qdt/1")
      "ambient_dim": 2,                       (required)
      "alternative_basis": {                  (canonical basis)
        "labels": ["A0", "A1"],               (generated)
        "vectors": [[[1,0],[0,0]], ...]
      },
      "second_basis": { ... },                (absent)
      "initial_state": {"kind": "uniform"},   (uniform)
        // or {"kind": "pure", "vector": [...]}
        // or {"kind": "density", "matrix": [...]}
      "evolution": {"kind": "identity"},      (identity)
        // or {"kind": "unitary", "matrix": [...]}
        // or {"kind": "hamiltonian", "matrix": [...], "time": 1.0}
        // or {"kind": "product", "alternative": [...], "subject": [...]}
      "subject_space": {                      (absent)
        "dim": 2,
        "feeling_labels": ["f0", "f1"],       (generated)
        "emotions": [[[re,im], ...], ...],    (one unit row per alternative)
        "second_emotions": [...]              (optional, rows for second_basis)
      },
      "tolerances": {"structural": 1e-9, "algebraic": 1e-12},
      "seed": 0
    }

With a subject space present, the state and the evolution live on the
decision space of dimension ``ambient_dim * subject_space.dim``; the
``product`` evolution kind supplies the two tensor factors separately.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Any

import numpy as np

from .behavioral import EmotionVector, ProspectMeasure, prospect_measure_from_basis
from .errors import (
    InvariantError,
    QDTError,
    ScenarioSyntaxError,
    SchemaError,
)
from .linalg import ALGEBRAIC_TOL, STRUCTURAL_TOL, hermiticity_defect, unitarity_defect
from .space import (
    AlternativeBasis,
    DensityState,
    ProjectorMeasure,
    measure_from_basis,
    pure_state,
    uniform_state,
)

__all__ = ["SCHEMA_VERSION", "Scenario", "parse_scenario", "emit_scenario", "load_scenario"]

SCHEMA_VERSION = "qdt/1"

_STATE_KINDS = ("uniform", "pure", "density")
_EVOLUTION_KINDS = ("identity", "unitary", "hamiltonian", "product")


@dataclass(frozen=True, eq=False)
class Scenario:
    """Fully validated scenario with all defaults materialized."""

    ambient_dim: int
    alternative_labels: tuple[str, ...]
    alternative_vectors: np.ndarray
    second_labels: tuple[str, ...] | None
    second_vectors: np.ndarray | None
    state_kind: str
    state_vector: np.ndarray | None
    state_matrix: np.ndarray | None
    evolution_kind: str
    evolution_matrix: np.ndarray | None
    evolution_alternative: np.ndarray | None
    evolution_subject: np.ndarray | None
    evolution_time: float | None
    subject_dim: int | None
    feeling_labels: tuple[str, ...] | None
    emotions: np.ndarray | None
    second_emotions: np.ndarray | None
    structural_tol: float
    algebraic_tol: float
    seed: int
    schema: str = SCHEMA_VERSION

    # -- structure ---------------------------------------------------------

    @property
    def is_behavioral(self) -> bool:
        return self.subject_dim is not None

    @property
    def decision_dim(self) -> int:
        """Dimension the state and evolution live on."""
        return self.ambient_dim * (self.subject_dim or 1)

    def with_overrides(
        self, seed: int | None = None, structural_tol: float | None = None
    ) -> "Scenario":
        out = self
        if seed is not None:
            out = replace(out, seed=int(seed))
        if structural_tol is not None:
            out = replace(out, structural_tol=float(structural_tol))
        return out

    # -- resolved objects --------------------------------------------------

    def alternative_basis(self) -> AlternativeBasis:
        return AlternativeBasis(
            self.alternative_labels, self.alternative_vectors, tol=self.structural_tol
        )

    def second_basis(self) -> AlternativeBasis | None:
        if self.second_labels is None:
            return None
        return AlternativeBasis(self.second_labels, self.second_vectors, tol=self.structural_tol)

    def alternative_measure(self) -> ProjectorMeasure:
        return measure_from_basis(self.alternative_basis())

    def second_measure(self) -> ProjectorMeasure | None:
        basis = self.second_basis()
        return None if basis is None else measure_from_basis(basis)

    def emotion_vectors(self) -> tuple[EmotionVector, ...] | None:
        if self.emotions is None:
            return None
        return tuple(EmotionVector(row, tol=self.structural_tol) for row in self.emotions)

    def second_emotion_vectors(self) -> tuple[EmotionVector, ...] | None:
        if self.second_emotions is None:
            return None
        return tuple(EmotionVector(row, tol=self.structural_tol) for row in self.second_emotions)

    def prospect_measure(self) -> ProspectMeasure | None:
        emotions = self.emotion_vectors()
        if emotions is None:
            return None
        return prospect_measure_from_basis(
            self.alternative_basis(), emotions, tol=self.structural_tol
        )

    def second_prospect_measure(self) -> ProspectMeasure | None:
        emotions = self.second_emotion_vectors()
        basis = self.second_basis()
        if emotions is None or basis is None:
            return None
        return prospect_measure_from_basis(basis, emotions, tol=self.structural_tol)

    def initial_state(self) -> DensityState:
        if self.state_kind == "uniform":
            return uniform_state(self.decision_dim)
        if self.state_kind == "pure":
            return pure_state(self.state_vector, tol=self.structural_tol)
        return DensityState(self.state_matrix, tol=self.structural_tol)

    def unitary(self) -> np.ndarray:
        if self.evolution_kind == "identity":
            return np.eye(self.decision_dim, dtype=np.complex128)
        if self.evolution_kind == "unitary":
            return np.array(self.evolution_matrix)
        if self.evolution_kind == "product":
            return np.kron(self.evolution_alternative, self.evolution_subject)
        from .linalg import unitary_from_hamiltonian

        return unitary_from_hamiltonian(
            self.evolution_matrix, self.evolution_time, tol=self.structural_tol
        )

    # -- serialization -----------------------------------------------------

    def to_document(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "schema": self.schema,
            "ambient_dim": self.ambient_dim,
            "alternative_basis": {
                "labels": list(self.alternative_labels),
                "vectors": _emit_matrix(self.alternative_vectors),
            },
        }
        if self.second_labels is not None:
            doc["second_basis"] = {
                "labels": list(self.second_labels),
                "vectors": _emit_matrix(self.second_vectors),
            }
        state: dict[str, Any] = {"kind": self.state_kind}
        if self.state_kind == "pure":
            state["vector"] = _emit_vector(self.state_vector)
        elif self.state_kind == "density":
            state["matrix"] = _emit_matrix(self.state_matrix)
        doc["initial_state"] = state
        evolution: dict[str, Any] = {"kind": self.evolution_kind}
        if self.evolution_kind in ("unitary", "hamiltonian"):
            evolution["matrix"] = _emit_matrix(self.evolution_matrix)
        if self.evolution_kind == "hamiltonian":
            evolution["time"] = self.evolution_time
        if self.evolution_kind == "product":
            evolution["alternative"] = _emit_matrix(self.evolution_alternative)
            evolution["subject"] = _emit_matrix(self.evolution_subject)
        doc["evolution"] = evolution
        if self.subject_dim is not None:
            subject: dict[str, Any] = {
                "dim": self.subject_dim,
                "feeling_labels": list(self.feeling_labels),
                "emotions": _emit_matrix(self.emotions),
            }
            if self.second_emotions is not None:
                subject["second_emotions"] = _emit_matrix(self.second_emotions)
            doc["subject_space"] = subject
        doc["tolerances"] = {
            "structural": self.structural_tol,
            "algebraic": self.algebraic_tol,
        }
        doc["seed"] = self.seed
        return doc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Scenario):
            return NotImplemented
        return self.to_document() == other.to_document()

    def __hash__(self):  # documents are the identity
        return hash(json.dumps(self.to_document(), sort_keys=True))


# ---------------------------------------------------------------------------
# emission helpers


def _emit_complex(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _emit_vector(v: np.ndarray) -> list[list[float]]:
    return [_emit_complex(z) for z in np.asarray(v, dtype=np.complex128)]


def _emit_matrix(m: np.ndarray) -> list[list[list[float]]]:
    return [_emit_vector(row) for row in np.atleast_2d(np.asarray(m, dtype=np.complex128))]


def emit_scenario(scenario: Scenario) -> str:
    """Serialize a scenario to canonical JSON text.

    Parsing the emitted text reproduces an equal scenario (floats are
    written with shortest round-trip precision).
    """
    return json.dumps(scenario.to_document(), indent=2) + "\n"


# ---------------------------------------------------------------------------
# parsing


def _check_keys(obj: dict, allowed: tuple[str, ...], path: str) -> None:
    for key in obj:
        if key not in allowed:
            raise SchemaError(f"unknown field {key!r} (allowed: {', '.join(allowed)})", f"{path}.{key}")


def _expect_object(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise SchemaError(f"expected an object, got {type(value).__name__}", path)
    return value


def _expect_list(value, path: str) -> list:
    if not isinstance(value, list):
        raise SchemaError(f"expected an array, got {type(value).__name__}", path)
    return value


def _expect_int(value, path: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"expected an integer, got {type(value).__name__}", path)
    if minimum is not None and value < minimum:
        raise SchemaError(f"expected an integer >= {minimum}, got {value}", path)
    return value


def _expect_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"expected a number, got {type(value).__name__}", path)
    x = float(value)
    if not np.isfinite(x):
        raise SchemaError(f"expected a finite number, got {value!r}", path)
    return x


def _expect_string(value, path: str) -> str:
    if not isinstance(value, str):
        raise SchemaError(f"expected a string, got {type(value).__name__}", path)
    return value


def _parse_complex(value, path: str) -> complex:
    entry = _expect_list(value, path)
    if len(entry) != 2:
        raise SchemaError(f"complex entries are [re, im] pairs, got {len(entry)} elements", path)
    re = _expect_number(entry[0], f"{path}[0]")
    im = _expect_number(entry[1], f"{path}[1]")
    return complex(re, im)


def _parse_vector(value, path: str, length: int | None = None) -> np.ndarray:
    raw = _expect_list(value, path)
    if length is not None and len(raw) != length:
        raise SchemaError(f"expected {length} entries, got {len(raw)}", path)
    if not raw:
        raise SchemaError("vector must not be empty", path)
    return np.array([_parse_complex(z, f"{path}[{i}]") for i, z in enumerate(raw)])


def _parse_matrix(
    value, path: str, rows: int | None = None, cols: int | None = None
) -> np.ndarray:
    raw = _expect_list(value, path)
    if rows is not None and len(raw) != rows:
        raise SchemaError(f"expected {rows} rows, got {len(raw)}", path)
    if not raw:
        raise SchemaError("matrix must not be empty", path)
    parsed = []
    width = cols
    for i, row in enumerate(raw):
        vec = _parse_vector(row, f"{path}[{i}]", length=width)
        if width is None:
            width = vec.shape[0]
        parsed.append(vec)
    return np.stack(parsed)


def _parse_labels(value, path: str, count: int, prefix: str) -> tuple[str, ...]:
    if value is None:
        return tuple(f"{prefix}{i}" for i in range(count))
    raw = _expect_list(value, path)
    labels = tuple(_expect_string(s, f"{path}[{i}]") for i, s in enumerate(raw))
    if len(labels) != count:
        raise SchemaError(f"expected {count} labels, got {len(labels)}", path)
    return labels


def _parse_basis(
    value, path: str, dim: int, prefix: str, tol: float
) -> tuple[tuple[str, ...], np.ndarray]:
    obj = _expect_object(value, path)
    _check_keys(obj, ("labels", "vectors"), path)
    if "vectors" in obj:
        vectors = _parse_matrix(obj["vectors"], f"{path}.vectors", cols=dim)
        if vectors.shape[1] != dim:
            raise SchemaError(
                f"vectors have length {vectors.shape[1]}, ambient dimension is {dim}",
                f"{path}.vectors",
            )
    else:
        vectors = np.eye(dim, dtype=np.complex128)
    labels = _parse_labels(obj.get("labels"), f"{path}.labels", vectors.shape[0], prefix)
    _validated(lambda: AlternativeBasis(labels, vectors, tol=tol), path)
    return labels, vectors


def _validated(factory, path: str):
    """Run a constructor, converting its typed failure into a located one."""
    try:
        return factory()
    except (SchemaError, ScenarioSyntaxError):
        raise
    except QDTError as exc:
        detail = getattr(exc, "detail", None) or str(exc)
        raise InvariantError(detail, path=path) from exc


def parse_scenario(text: str) -> Scenario:
    """Parse and fully validate scenario text.

    Raises :class:`ScenarioSyntaxError` for malformed JSON,
    :class:`SchemaError` for structural violations, and
    :class:`InvariantError` when an embedded object fails its invariants;
    the latter two carry the JSON-path of the offending field.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioSyntaxError(exc.msg, exc.lineno, exc.colno) from exc

    root = _expect_object(document, "$")
    _check_keys(
        root,
        (
            "schema",
            "ambient_dim",
            "alternative_basis",
            "second_basis",
            "initial_state",
            "evolution",
            "subject_space",
            "tolerances",
            "seed",
        ),
        "$",
    )

    schema = _expect_string(root.get("schema", SCHEMA_VERSION), "$.schema")
    if schema != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema {schema!r}, expected {SCHEMA_VERSION!r}", "$.schema")

    if "ambient_dim" not in root:
        raise SchemaError("missing required field 'ambient_dim'", "$.ambient_dim")
    dim = _expect_int(root["ambient_dim"], "$.ambient_dim", minimum=1)

    tolerances = _expect_object(root.get("tolerances", {}), "$.tolerances")
    _check_keys(tolerances, ("structural", "algebraic"), "$.tolerances")
    structural = _expect_number(tolerances.get("structural", STRUCTURAL_TOL), "$.tolerances.structural")
    algebraic = _expect_number(tolerances.get("algebraic", ALGEBRAIC_TOL), "$.tolerances.algebraic")
    for name, value in (("structural", structural), ("algebraic", algebraic)):
        if value <= 0:
            raise SchemaError(f"tolerance must be positive, got {value!r}", f"$.tolerances.{name}")

    seed = _expect_int(root.get("seed", 0), "$.seed", minimum=0)

    # subject space first: it decides the dimension the state lives on
    subject_dim = None
    feeling_labels = None
    emotions = None
    second_emotions_raw = None
    if "subject_space" in root:
        subject = _expect_object(root["subject_space"], "$.subject_space")
        _check_keys(subject, ("dim", "feeling_labels", "emotions", "second_emotions"), "$.subject_space")
        if "dim" not in subject:
            raise SchemaError("missing required field 'dim'", "$.subject_space.dim")
        subject_dim = _expect_int(subject["dim"], "$.subject_space.dim", minimum=1)
        feeling_labels = _parse_labels(
            subject.get("feeling_labels"), "$.subject_space.feeling_labels", subject_dim, "feeling_"
        )
        if len(set(feeling_labels)) != len(feeling_labels):
            raise InvariantError("feeling labels are not unique", path="$.subject_space.feeling_labels")
        if "emotions" not in subject:
            raise SchemaError("missing required field 'emotions'", "$.subject_space.emotions")
        second_emotions_raw = subject.get("second_emotions")

    if "alternative_basis" in root:
        alt_labels, alt_vectors = _parse_basis(
            root["alternative_basis"], "$.alternative_basis", dim, "A", structural
        )
    else:
        alt_vectors = np.eye(dim, dtype=np.complex128)
        alt_labels = tuple(f"A{i}" for i in range(dim))

    second_labels = second_vectors = None
    if "second_basis" in root:
        second_labels, second_vectors = _parse_basis(
            root["second_basis"], "$.second_basis", dim, "B", structural
        )

    if subject_dim is not None:
        emotions = _parse_matrix(
            root["subject_space"]["emotions"],
            "$.subject_space.emotions",
            rows=len(alt_labels),
            cols=subject_dim,
        )
        for i, row in enumerate(emotions):
            _validated(
                lambda row=row: EmotionVector(row, tol=structural),
                f"$.subject_space.emotions[{i}]",
            )

    second_emotions = None
    if second_emotions_raw is not None:
        if second_labels is None:
            raise SchemaError(
                "'second_emotions' requires a 'second_basis'", "$.subject_space.second_emotions"
            )
        second_emotions = _parse_matrix(
            second_emotions_raw,
            "$.subject_space.second_emotions",
            rows=len(second_labels),
            cols=subject_dim,
        )
        for i, row in enumerate(second_emotions):
            _validated(
                lambda row=row: EmotionVector(row, tol=structural),
                f"$.subject_space.second_emotions[{i}]",
            )

    state_dim = dim * (subject_dim or 1)

    state = _expect_object(root.get("initial_state", {"kind": "uniform"}), "$.initial_state")
    _check_keys(state, ("kind", "vector", "matrix"), "$.initial_state")
    state_kind = _expect_string(state.get("kind", "uniform"), "$.initial_state.kind")
    if state_kind not in _STATE_KINDS:
        raise SchemaError(
            f"unknown state kind {state_kind!r} (one of: {', '.join(_STATE_KINDS)})",
            "$.initial_state.kind",
        )
    state_vector = state_matrix = None
    if state_kind == "pure":
        if "vector" not in state:
            raise SchemaError("state kind 'pure' requires 'vector'", "$.initial_state.vector")
        state_vector = _parse_vector(state["vector"], "$.initial_state.vector", length=state_dim)
        _validated(lambda: pure_state(state_vector, tol=structural), "$.initial_state.vector")
    elif state_kind == "density":
        if "matrix" not in state:
            raise SchemaError("state kind 'density' requires 'matrix'", "$.initial_state.matrix")
        state_matrix = _parse_matrix(
            state["matrix"], "$.initial_state.matrix", rows=state_dim, cols=state_dim
        )
        _validated(lambda: DensityState(state_matrix, tol=structural), "$.initial_state.matrix")
    else:
        for key in ("vector", "matrix"):
            if key in state:
                raise SchemaError(f"state kind 'uniform' does not take {key!r}", f"$.initial_state.{key}")

    evolution = _expect_object(root.get("evolution", {"kind": "identity"}), "$.evolution")
    _check_keys(evolution, ("kind", "matrix", "time", "alternative", "subject"), "$.evolution")
    evolution_kind = _expect_string(evolution.get("kind", "identity"), "$.evolution.kind")
    if evolution_kind not in _EVOLUTION_KINDS:
        raise SchemaError(
            f"unknown evolution kind {evolution_kind!r} (one of: {', '.join(_EVOLUTION_KINDS)})",
            "$.evolution.kind",
        )
    evolution_matrix = evolution_time = None
    evolution_alternative = evolution_subject = None
    if evolution_kind == "identity":
        for key in ("matrix", "time", "alternative", "subject"):
            if key in evolution:
                raise SchemaError(
                    f"evolution kind 'identity' does not take {key!r}", f"$.evolution.{key}"
                )
    elif evolution_kind in ("unitary", "hamiltonian"):
        if "matrix" not in evolution:
            raise SchemaError(
                f"evolution kind {evolution_kind!r} requires 'matrix'", "$.evolution.matrix"
            )
        evolution_matrix = _parse_matrix(
            evolution["matrix"], "$.evolution.matrix", rows=state_dim, cols=state_dim
        )
        if evolution_kind == "unitary":
            defect = unitarity_defect(evolution_matrix)
            if defect > structural:
                raise InvariantError(
                    f"matrix is not unitary: max|U†U - I| = {defect:.3g}", path="$.evolution.matrix"
                )
            if "time" in evolution:
                raise SchemaError("evolution kind 'unitary' does not take 'time'", "$.evolution.time")
        else:
            defect = hermiticity_defect(evolution_matrix)
            if defect > structural:
                raise InvariantError(
                    f"matrix is not Hermitian: max|H - H†| = {defect:.3g}", path="$.evolution.matrix"
                )
            if "time" not in evolution:
                raise SchemaError("evolution kind 'hamiltonian' requires 'time'", "$.evolution.time")
            evolution_time = _expect_number(evolution["time"], "$.evolution.time")
    else:  # product
        if subject_dim is None:
            raise SchemaError(
                "evolution kind 'product' requires a 'subject_space'", "$.evolution.kind"
            )
        for key in ("alternative", "subject"):
            if key not in evolution:
                raise SchemaError(f"evolution kind 'product' requires {key!r}", f"$.evolution.{key}")
        evolution_alternative = _parse_matrix(
            evolution["alternative"], "$.evolution.alternative", rows=dim, cols=dim
        )
        evolution_subject = _parse_matrix(
            evolution["subject"], "$.evolution.subject", rows=subject_dim, cols=subject_dim
        )
        for key, factor in (("alternative", evolution_alternative), ("subject", evolution_subject)):
            defect = unitarity_defect(factor)
            if defect > structural:
                raise InvariantError(
                    f"matrix is not unitary: max|U†U - I| = {defect:.3g}", path=f"$.evolution.{key}"
                )

    return Scenario(
        ambient_dim=dim,
        alternative_labels=alt_labels,
        alternative_vectors=alt_vectors,
        second_labels=second_labels,
        second_vectors=second_vectors,
        state_kind=state_kind,
        state_vector=state_vector,
        state_matrix=state_matrix,
        evolution_kind=evolution_kind,
        evolution_matrix=evolution_matrix,
        evolution_alternative=evolution_alternative,
        evolution_subject=evolution_subject,
        evolution_time=evolution_time,
        subject_dim=subject_dim,
        feeling_labels=feeling_labels,
        emotions=emotions,
        second_emotions=second_emotions,
        structural_tol=structural,
        algebraic_tol=algebraic,
        seed=seed,
        schema=schema,
    )


def load_scenario(path) -> Scenario:
    """Read and parse a scenario file."""
    with open(path, "r", encoding="utf-8") as handle:
        return parse_scenario(handle.read())
