"""Quantum decision-theory engine.

Choice problems as quantum probability spaces on small dense complex
matrices: single-choice probabilities via the trace rule, sequential
choices via state reduction plus unitary evolution, and behavioral
(emotion-augmented) prospect probabilities on a tensor-product decision
space, together with the machinery to verify every symmetry and
normalization identity the theory provides.
"""

from .errors import (
    DimensionError,
    HermiticityError,
    IncompleteMeasureError,
    InvariantError,
    NormalizationError,
    QDTError,
    ScenarioSyntaxError,
    SchemaError,
    UnitarityError,
    ZeroProbabilityConditioning,
)
from .linalg import (
    ALGEBRAIC_TOL,
    STRUCTURAL_TOL,
    adjoint,
    kron,
    matmul,
    random_unitary,
    trace,
    unitary_from_hamiltonian,
)
from .space import (
    AlternativeBasis,
    DensityState,
    ProjectorMeasure,
    all_probabilities,
    choice_probability,
    evolve,
    measure_from_basis,
    projector_from_vector,
    pure_state,
    random_state,
    uniform_state,
)
from .sequential import (
    CONDITIONING_EPS,
    ChoiceRecord,
    MarginalReport,
    SymmetryReport,
    TimeTag,
    conditional_probability,
    immediate_conditional,
    joint_probability,
    luders_reduce,
    marginal_check,
    symmetry_report,
)
from .behavioral import (
    EmotionVector,
    Prospect,
    ProspectDecomposition,
    ProspectMeasure,
    SubjectSpace,
    behavioral_conditional,
    behavioral_joint,
    behavioral_luders,
    behavioral_symmetry_report,
    decompose_prospect,
    decomposition_sums,
    emotion_projector,
    fluctuate_emotion,
    normalized_for_measure,
    prospect_measure_from_basis,
    prospect_probability,
    prospect_projector,
    resolution_check,
)
from .classical import (
    JointTable,
    asymmetry_witness,
    classical_conditional,
    induced_joint_from_quantum,
)
from .scenario import Scenario, emit_scenario, load_scenario, parse_scenario
from .report import ProbabilityReport
from .runners import (
    run_behavioral,
    run_eval,
    run_sample,
    run_sequence,
    run_symmetry_audit,
)

__version__ = "0.1.0"
