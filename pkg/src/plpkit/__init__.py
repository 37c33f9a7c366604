"""Compiler and verification toolkit for ordered logic programs."""

from .emit import Dialect, emit, nice_filter
from .errors import (
    GroundingError,
    NotAnswerSetError,
    OrderError,
    ParseError,
    PlpError,
    ResourceLimitError,
    ValidationError,
)
from .grounder import GroundingConfig, flatten_terms, ground, herbrand_constants, instantiate
from .model import (
    INCONSISTENT,
    Atom,
    Literal,
    PreferenceOrder,
    Program,
    Rule,
    Term,
    complement,
    defeated,
    desugar_constraint,
    lit,
    static_order,
    validate_ordered,
)
from .oracles import (
    EnumerationWitness,
    be_C_operator,
    be_characterisation,
    be_preferred,
    check_be_preserving,
    check_dynamic_preserving,
    check_static_preserving,
    check_wzl_preserving,
    total_extensions,
)
from .parser import format_program, parse_program
from .search import answer_sets_search
from .semantics import (
    answer_sets_bruteforce,
    generating_rules,
    is_answer_set,
    reduct,
    stage_of,
    th_closure,
    tp_trace,
)
from .transforms import (
    Compiled,
    Strategy,
    compile_program,
    prime_mirror,
    ta_closure,
    tau_T,
    transform_S,
    transform_T,
    transform_T_static,
    transform_U,
    transform_V,
    transform_W,
    transform_WTA,
)

__version__ = "0.1.0"

__all__ = [
    "answer_sets_bruteforce",
    "answer_sets_search",
    "Atom",
    "be_C_operator",
    "be_characterisation",
    "be_preferred",
    "check_be_preserving",
    "check_dynamic_preserving",
    "check_static_preserving",
    "check_wzl_preserving",
    "compile_program",
    "Compiled",
    "complement",
    "defeated",
    "desugar_constraint",
    "Dialect",
    "emit",
    "EnumerationWitness",
    "flatten_terms",
    "format_program",
    "generating_rules",
    "ground",
    "GroundingConfig",
    "GroundingError",
    "herbrand_constants",
    "INCONSISTENT",
    "instantiate",
    "is_answer_set",
    "lit",
    "Literal",
    "nice_filter",
    "NotAnswerSetError",
    "OrderError",
    "parse_program",
    "ParseError",
    "PlpError",
    "PreferenceOrder",
    "prime_mirror",
    "Program",
    "reduct",
    "ResourceLimitError",
    "Rule",
    "stage_of",
    "static_order",
    "Strategy",
    "ta_closure",
    "tau_T",
    "Term",
    "th_closure",
    "total_extensions",
    "tp_trace",
    "transform_S",
    "transform_T",
    "transform_T_static",
    "transform_U",
    "transform_V",
    "transform_W",
    "transform_WTA",
    "validate_ordered",
    "ValidationError",
]
