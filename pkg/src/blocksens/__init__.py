"""Exact workbench for sensitivity and block sensitivity of Boolean functions.

Truth-table measures, disjunctive-normal-form structure checks, witness
constructions with certified sensitivity bounds, named gap families, and
reconstruction of functions from values on a Hamming ball.
"""

from ._kernels import HAVE_FAST, active_kernel
from .core import (
    DEFAULT_BS_MAX,
    DEFAULT_N_MAX,
    BlockFamily,
    MeasureReport,
    TruthTable,
    block_sensitivity_at,
    block_sensitivity_report,
    bs_capped,
    depends_on_all,
    is_monotone,
    relevant_vars,
    restrict,
    sensitivity_at,
    sensitivity_report,
    xor_shift,
    xor_tt,
)
from .dnf import (
    BoundsReport,
    CompactFormReport,
    Dnf,
    DnfStats,
    NormalizationResult,
    Term,
    bounds_report,
    check_compact_form,
    eval_dnf,
    normalize,
    stats,
    term_components,
    to_truth_table,
)
from .errors import (
    BlocksensError,
    CapacityError,
    DegenerateFunctionError,
    InconsistentDataError,
    InternalInvariantError,
    ParseError,
    PropertyViolation,
    SolverFailure,
)
from .families import (
    EXPANSION_CAP,
    FamilyInstance,
    ambainis_sun,
    disjoint_or_compose,
    explicit_or_expand,
    onesbound_tight,
    proposition_pair,
    rubinstein,
    virza,
)
from .lowsens import (
    DISAGREE_AT_CENTER,
    BallValues,
    SubcubeComponent,
    agreement_radius,
    hypercubes_to_dnf,
    one_set_components,
    reconstruct_majority,
    reconstruct_monotone,
)
from .witness import (
    GateGraph,
    WitnessResult,
    block_greedy_bound,
    dnf_sensitivity_at,
    greedy_independent_gates,
    solve_sensitivity_problem,
    tblock_greedy_bound,
    witness_2mixing_components,
    witness_onesbound,
    zero_witness_block,
    zero_witness_tblock,
)

__version__ = "0.1.0"

__all__ = [
    "BallValues",
    "BlockFamily",
    "BlocksensError",
    "BoundsReport",
    "CapacityError",
    "CompactFormReport",
    "DEFAULT_BS_MAX",
    "DEFAULT_N_MAX",
    "DISAGREE_AT_CENTER",
    "DegenerateFunctionError",
    "Dnf",
    "DnfStats",
    "EXPANSION_CAP",
    "FamilyInstance",
    "GateGraph",
    "HAVE_FAST",
    "InconsistentDataError",
    "InternalInvariantError",
    "MeasureReport",
    "NormalizationResult",
    "ParseError",
    "PropertyViolation",
    "SolverFailure",
    "SubcubeComponent",
    "Term",
    "TruthTable",
    "WitnessResult",
    "active_kernel",
    "agreement_radius",
    "ambainis_sun",
    "block_greedy_bound",
    "block_sensitivity_at",
    "block_sensitivity_report",
    "bounds_report",
    "bs_capped",
    "check_compact_form",
    "depends_on_all",
    "disjoint_or_compose",
    "dnf_sensitivity_at",
    "eval_dnf",
    "explicit_or_expand",
    "greedy_independent_gates",
    "hypercubes_to_dnf",
    "is_monotone",
    "normalize",
    "one_set_components",
    "onesbound_tight",
    "proposition_pair",
    "reconstruct_majority",
    "reconstruct_monotone",
    "relevant_vars",
    "restrict",
    "rubinstein",
    "sensitivity_at",
    "sensitivity_report",
    "solve_sensitivity_problem",
    "stats",
    "tblock_greedy_bound",
    "term_components",
    "to_truth_table",
    "virza",
    "witness_2mixing_components",
    "witness_onesbound",
    "xor_shift",
    "xor_tt",
    "zero_witness_block",
    "zero_witness_tblock",
]
