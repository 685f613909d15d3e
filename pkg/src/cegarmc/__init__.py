"""Explicit-state CEGAR model checking with variable-hiding abstraction.

Models are Kripke structures over finite-domain variables.  Abstraction hides
variables; spurious abstract counterexamples are detected by In/Out fixpoint
analysis and removed either by adding one synthetic boolean per refinement
(splitting only the failure state) or by the classical baseline of making a
minimal separating set of variables visible.
"""

from .abstraction import (
    AbstractState,
    Abstraction,
    SyntheticVar,
    build_abstract_model,
    check_formula_visibility,
    hide,
    origins,
    origins_map,
    project,
)
from .cegar import (
    BenchCase,
    BenchRow,
    CegarConfig,
    CegarReport,
    IterationRecord,
    RefinementError,
    Strategy,
    StrategyDisagreement,
    abstract_mc,
    run_benchmark,
)
from .checker import Counterexample, FinitePath, Lasso, check, holds_on_path, validate_path
from .model import (
    And,
    Eq,
    KripkeModel,
    Not,
    Or,
    Predicate,
    Prop,
    PropertyFormula,
    State,
    UNDEF,
    Value,
    VariableDecl,
    eval_predicate,
    validate_model,
    validate_predicate,
)
from .parsing import (
    ParseError,
    parse_model,
    parse_property,
    render_model,
    render_predicate,
    render_property,
)
from .refinement import (
    TO_BAD,
    TO_DEAD,
    minimal_separating_set,
    refine_extra_var,
    refine_smallest,
    refine_visible,
)
from .reporting import export_dot, format_counterexample, write_bench_csv, write_report
from .spurious import FailureAnalysis, check_spurious, concretize, in_sets, out_set, unroll

__version__ = "0.1.0"

__all__ = [
    "AbstractState",
    "Abstraction",
    "And",
    "BenchCase",
    "BenchRow",
    "CegarConfig",
    "CegarReport",
    "Counterexample",
    "Eq",
    "FailureAnalysis",
    "FinitePath",
    "IterationRecord",
    "KripkeModel",
    "Lasso",
    "Not",
    "Or",
    "ParseError",
    "Predicate",
    "Prop",
    "PropertyFormula",
    "RefinementError",
    "State",
    "Strategy",
    "StrategyDisagreement",
    "SyntheticVar",
    "TO_BAD",
    "TO_DEAD",
    "UNDEF",
    "Value",
    "VariableDecl",
    "abstract_mc",
    "build_abstract_model",
    "check",
    "check_formula_visibility",
    "check_spurious",
    "concretize",
    "eval_predicate",
    "export_dot",
    "format_counterexample",
    "hide",
    "holds_on_path",
    "in_sets",
    "minimal_separating_set",
    "origins",
    "origins_map",
    "out_set",
    "parse_model",
    "parse_property",
    "project",
    "refine_extra_var",
    "refine_smallest",
    "refine_visible",
    "render_model",
    "render_predicate",
    "render_property",
    "run_benchmark",
    "unroll",
    "validate_model",
    "validate_path",
    "validate_predicate",
    "write_bench_csv",
    "write_report",
]
