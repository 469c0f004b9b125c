"""Formula and sequent languages used as cell-state alphabets."""

from .equality import EqualityMode, states_equal
from .parser import (
    ArityError,
    FormulaSyntaxError,
    LexicalError,
    ParseError,
    parse_formula,
    parse_sequent,
    parse_term,
)
from .syntax import (
    And,
    EqAtom,
    Formula,
    Impl,
    Neg,
    Or,
    PredAtom,
    PropVar,
    Sequent,
    Succ,
    Term,
    Var,
    Zero,
    format_formula,
    format_sequent,
    format_state,
    format_term,
    free_vars,
    fresh_name,
    substitute,
)

__all__ = [
    "And", "ArityError", "EqAtom", "EqualityMode", "Formula", "FormulaSyntaxError",
    "Impl", "LexicalError", "Neg", "Or", "ParseError", "PredAtom", "PropVar",
    "Sequent", "Succ", "Term", "Var", "Zero", "format_formula", "format_sequent",
    "format_state", "format_term", "free_vars", "fresh_name", "parse_formula",
    "parse_sequent", "parse_term", "states_equal", "substitute",
]
