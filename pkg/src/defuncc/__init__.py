"""Type-preserving defunctionalization for a dependently typed calculus.

Source programs live in a calculus of constructions with a Nat base type.
`defun` translates well-typed judgements into a label calculus where every
function is a named, closed code block applied to its captured environment,
`refun` translates back, and `harness` re-checks the expected metatheory
(type preservation, reduction preservation, coherence, round-tripping) on
concrete programs.
"""

from .cc import (
    cc_check_context,
    cc_equiv,
    cc_infer,
    cc_normalize,
    cc_reduce_step,
    cc_reduce_trace,
    cc_wf_context,
)
from .dcc import (
    dcc_check,
    dcc_equiv,
    dcc_infer,
    dcc_normalize,
    dcc_reduce_step,
    dcc_reduce_trace,
    dcc_wf,
)
from .defun import TranslationResult, defun, defun_expr, label_subset, label_union
from .errors import (
    ClosureArity,
    ClosureTypeMismatch,
    DefunccError,
    DiagramFailure,
    IllFormedContext,
    LabelClash,
    NotAFunction,
    NotAType,
    ParseError,
    StepBudgetExceeded,
    TypeCheckError,
    TypeMismatch,
    UnboundVariable,
    UnknownLabel,
)
from .harness import (
    CheckResult,
    EnumConfig,
    check_reduction_preservation,
    check_round_trip,
    check_type_preservation,
    check_type_safety,
    check_weakening,
    enumerate_small_terms,
    verify_file,
    verify_path,
)
from .refun import refun, refun_context, refun_expr
from .sigma import DiagramReport, ccs_equiv, ccs_infer, ccs_normalize, check_diagram
from .surface import (
    emit_json,
    emit_text,
    parse_dcc,
    parse_source,
    parse_term,
    show_term,
)
from .syntax import (
    NAT,
    Add,
    App,
    Ctx,
    ESubst,
    Label,
    LabelCtx,
    LabelEntry,
    Lam,
    NatLit,
    NatType,
    Pi,
    SBind,
    Term,
    Universe,
    Var,
    alpha_eq,
    free_var_set,
    free_vars,
    subst,
    subst_many,
)

__all__ = [
    "Add",
    "App",
    "CheckResult",
    "ClosureArity",
    "ClosureTypeMismatch",
    "Ctx",
    "DefunccError",
    "DiagramFailure",
    "DiagramReport",
    "ESubst",
    "EnumConfig",
    "IllFormedContext",
    "Label",
    "LabelClash",
    "LabelCtx",
    "LabelEntry",
    "Lam",
    "NAT",
    "NatLit",
    "NatType",
    "NotAFunction",
    "NotAType",
    "ParseError",
    "Pi",
    "SBind",
    "StepBudgetExceeded",
    "Term",
    "TranslationResult",
    "TypeCheckError",
    "TypeMismatch",
    "UnboundVariable",
    "Universe",
    "UnknownLabel",
    "Var",
    "alpha_eq",
    "cc_check_context",
    "cc_equiv",
    "cc_infer",
    "cc_normalize",
    "cc_reduce_step",
    "cc_reduce_trace",
    "cc_wf_context",
    "ccs_equiv",
    "ccs_infer",
    "ccs_normalize",
    "check_diagram",
    "check_reduction_preservation",
    "check_round_trip",
    "check_type_preservation",
    "check_type_safety",
    "check_weakening",
    "dcc_check",
    "dcc_equiv",
    "dcc_infer",
    "dcc_normalize",
    "dcc_reduce_step",
    "dcc_reduce_trace",
    "dcc_wf",
    "defun",
    "defun_expr",
    "emit_json",
    "emit_text",
    "enumerate_small_terms",
    "free_var_set",
    "free_vars",
    "label_subset",
    "label_union",
    "parse_dcc",
    "parse_source",
    "parse_term",
    "refun",
    "refun_context",
    "refun_expr",
    "show_term",
    "subst",
    "subst_many",
    "verify_file",
    "verify_path",
]
