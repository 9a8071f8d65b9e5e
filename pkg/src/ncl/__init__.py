"""Linear realizations of block codes on normal graphs over prime fields.

Build realizations (by hand, from generator or check matrices, or as
product trellises), compute their behaviors and the codes they realize,
test observability/controllability and the local trim/proper structure,
dualize them, and reduce them state by state down to minimal form on
cycle-free graphs. A brute-force oracle cross-checks everything at desk
scale, and a CLI exposes the lot over a JSON document format.
"""

from .blockcode import (
    DEFAULT_ENUM_CAP,
    BlockedCode,
    BlockStructure,
    format_word,
    parse_word,
)
from .constructions import (
    ComponentReport,
    Span,
    SpannedGenerator,
    generator_realization,
    is_tail_biting_trellis,
    parity_check_realization,
    product_trellis,
    trajectory_components,
)
from .docio import (
    emit_realization,
    export_dot,
    natural_key,
    parse_code_document,
    parse_realization,
)
from .errors import (
    BudgetExceededError,
    DimensionMismatchError,
    DocumentError,
    EnumerationLimitError,
    FieldMismatchError,
    InvalidRealizationError,
    NclError,
    NotCycleFreeError,
    NotReducibleError,
    UnknownBlockError,
)
from .fields import (
    GF2,
    GF3,
    MatrixF,
    PrimeField,
    Subspace,
    complete_to_basis,
    inverse,
    kernel,
    rank,
    rref,
)
from .oracle import (
    EnumerationBudget,
    RealizesVerdict,
    brute_behavior,
    brute_realized_words,
    check_realizes,
)
from .realization import (
    AnalysisReport,
    Behavior,
    Constraint,
    ConstraintReport,
    ProperVerdict,
    Realization,
    StateVar,
    SymbolVar,
    Topology,
    TrimVerdict,
    ValidationIssue,
    analyze,
    behavior,
    controllability_defect,
    dualize,
    is_branch_trim,
    is_controllable,
    is_observable,
    is_proper,
    is_reduced,
    is_state_trim,
    is_trim,
    realized_code,
    unobservable_behavior,
    validate,
)
from .reduction import (
    EdgeCut,
    ReductionStep,
    cut_dims,
    dual_merge_unobservable,
    merge_state,
    minimize_cycle_free,
    next_reduction,
    reduce_to_fixpoint,
    reduce_unobservable,
    trim_state,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "Behavior",
    "BlockStructure",
    "BlockedCode",
    "BudgetExceededError",
    "ComponentReport",
    "Constraint",
    "ConstraintReport",
    "DEFAULT_ENUM_CAP",
    "DimensionMismatchError",
    "DocumentError",
    "EdgeCut",
    "EnumerationBudget",
    "EnumerationLimitError",
    "FieldMismatchError",
    "GF2",
    "GF3",
    "InvalidRealizationError",
    "MatrixF",
    "NclError",
    "NotCycleFreeError",
    "NotReducibleError",
    "PrimeField",
    "ProperVerdict",
    "Realization",
    "RealizesVerdict",
    "ReductionStep",
    "Span",
    "SpannedGenerator",
    "StateVar",
    "Subspace",
    "SymbolVar",
    "Topology",
    "TrimVerdict",
    "UnknownBlockError",
    "ValidationIssue",
    "analyze",
    "behavior",
    "brute_behavior",
    "brute_realized_words",
    "check_realizes",
    "complete_to_basis",
    "controllability_defect",
    "cut_dims",
    "dual_merge_unobservable",
    "dualize",
    "emit_realization",
    "export_dot",
    "format_word",
    "generator_realization",
    "inverse",
    "is_branch_trim",
    "is_controllable",
    "is_observable",
    "is_proper",
    "is_reduced",
    "is_state_trim",
    "is_tail_biting_trellis",
    "is_trim",
    "kernel",
    "merge_state",
    "minimize_cycle_free",
    "natural_key",
    "next_reduction",
    "parity_check_realization",
    "parse_code_document",
    "parse_realization",
    "parse_word",
    "product_trellis",
    "rank",
    "realized_code",
    "reduce_to_fixpoint",
    "reduce_unobservable",
    "rref",
    "trajectory_components",
    "trim_state",
    "unobservable_behavior",
    "validate",
]
