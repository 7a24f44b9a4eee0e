"""framekit: structural certification of finite real frames and
reconstruction of signals from squared-magnitude measurements."""

from .exceptions import (
    BudgetExhausted,
    EnumerationCapExceeded,
    FramekitError,
    FrameParseError,
    InconsistentMeasurements,
    InconsistentSigns,
    InsufficientVectors,
    SingularOperator,
)
from .frames import (
    DEFAULT_TOLERANCE,
    Frame,
    FrameReport,
    Tolerance,
    apply_invertible,
    classify,
    frame_bounds,
    frame_operator,
    load_frame,
    load_measurements,
    measure,
)
from .properties import (
    ENUMERATION_CAP,
    PartitionWitness,
    Verdict,
    complement_property,
    cross_product_recoverable,
    does_phase_retrieval,
    does_weak_phaseless,
    extend_to_full_spark,
    is_full_spark,
    spark,
    weak_pr_verdict,
)
from .reconstruction import (
    LiftedSystem,
    ProductEstimate,
    SolutionKind,
    WeakSolution,
    assemble,
    build_lifted,
    reconstruct,
    recover_products,
    vech,
    vech_pairs,
    unvech,
    weakly_same_phase,
)
from .oracle import (
    PAIR_TOL,
    EqualMeasurementPair,
    cp_failure_pairs,
    kernel_pair_search,
    minimality_scan,
    random_frame,
)
from .estimators import FrameAnalyzer, WeakPhaseReconstructor
from .fixtures import (
    FIXTURE_MATRICES,
    certification_checks,
    fixture_frame,
    fixture_names,
    r4_counterexample,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExhausted",
    "EnumerationCapExceeded",
    "FramekitError",
    "FrameParseError",
    "InconsistentMeasurements",
    "InconsistentSigns",
    "InsufficientVectors",
    "SingularOperator",
    "DEFAULT_TOLERANCE",
    "Frame",
    "FrameReport",
    "Tolerance",
    "apply_invertible",
    "classify",
    "frame_bounds",
    "frame_operator",
    "load_frame",
    "load_measurements",
    "measure",
    "ENUMERATION_CAP",
    "PartitionWitness",
    "Verdict",
    "complement_property",
    "cross_product_recoverable",
    "does_phase_retrieval",
    "does_weak_phaseless",
    "extend_to_full_spark",
    "is_full_spark",
    "spark",
    "weak_pr_verdict",
    "LiftedSystem",
    "ProductEstimate",
    "SolutionKind",
    "WeakSolution",
    "assemble",
    "build_lifted",
    "reconstruct",
    "recover_products",
    "vech",
    "vech_pairs",
    "unvech",
    "weakly_same_phase",
    "PAIR_TOL",
    "EqualMeasurementPair",
    "cp_failure_pairs",
    "kernel_pair_search",
    "minimality_scan",
    "random_frame",
    "FrameAnalyzer",
    "WeakPhaseReconstructor",
    "FIXTURE_MATRICES",
    "certification_checks",
    "fixture_frame",
    "fixture_names",
    "r4_counterexample",
    "__version__",
]
