"""Desk-scale verification toolkit for qudit chained measurements, their
correlation gaps, and finite ontological models of preparation catalogs."""

from __future__ import annotations

from ._kernels import backend
from .born import JointConditional, JointTable, assemble_joint_conditional, born_joint
from .chained import (
    correlation_gap,
    correlation_gap_closed_form,
    evaluate_chain,
    quantum_bound,
)
from .distance import (
    FiniteDistribution,
    coupling_gap,
    shift_distribution,
    total_variation,
    uniform_distance_bound,
    uniform_distribution,
    uniformity_certificate,
)
from .linalg import ComplexMatrix, ComplexVector, build_isometry, fractional_shift_power
from .measurements import alice_family, bob_family, measurement_vector
from .modelio import load_bundled, load_model, save_model
from .ontology import (
    ConditionViolation,
    FiniteOntologicalModel,
    StateFunctionResult,
    SupportReport,
    analyze_pair,
    check_all,
    recover_state_function,
    support_threshold,
    uniqueness_analysis,
)
from .states import (
    OverlapParams,
    maximally_entangled_state,
    overlap,
    overlap_partner_state,
    solve_overlap,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend",
    "JointConditional",
    "JointTable",
    "assemble_joint_conditional",
    "born_joint",
    "correlation_gap",
    "correlation_gap_closed_form",
    "evaluate_chain",
    "quantum_bound",
    "FiniteDistribution",
    "coupling_gap",
    "shift_distribution",
    "total_variation",
    "uniform_distance_bound",
    "uniform_distribution",
    "uniformity_certificate",
    "ComplexMatrix",
    "ComplexVector",
    "build_isometry",
    "fractional_shift_power",
    "alice_family",
    "bob_family",
    "measurement_vector",
    "load_bundled",
    "load_model",
    "save_model",
    "ConditionViolation",
    "FiniteOntologicalModel",
    "StateFunctionResult",
    "SupportReport",
    "analyze_pair",
    "check_all",
    "recover_state_function",
    "support_threshold",
    "uniqueness_analysis",
    "OverlapParams",
    "maximally_entangled_state",
    "overlap",
    "overlap_partner_state",
    "solve_overlap",
]
