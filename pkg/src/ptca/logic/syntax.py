"""Abstract syntax for the formula and sequent state alphabets.

Terms are built from ``0``, variables and successor.  Formulas cover the
propositional connectives plus the atoms ``N(t)``, ``E(t)``, ``O(t)`` and
``t = u``.  Every node is a frozen dataclass, so states are hashable and
safe to share between cells.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union


# --------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Zero:
    def __str__(self) -> str:
        return "0"


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Succ:
    inner: "Term"

    def __str__(self) -> str:
        return f"{self.inner}+1"


Term = Union[Zero, Var, Succ]


# --------------------------------------------------------------------------
# Formulas


@dataclass(frozen=True)
class PropVar:
    name: str


@dataclass(frozen=True)
class Neg:
    inner: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Impl:
    left: "Formula"
    right: "Formula"


PREDICATES = ("N", "E", "O")


@dataclass(frozen=True)
class PredAtom:
    pred: str
    arg: Term

    def __post_init__(self):
        if self.pred not in PREDICATES:
            raise ValueError(f"unknown predicate {self.pred!r}")


@dataclass(frozen=True)
class EqAtom:
    left: Term
    right: Term


Formula = Union[PropVar, Neg, Or, And, Impl, PredAtom, EqAtom]
BINARY = (Or, And, Impl)


@dataclass(frozen=True)
class Sequent:
    antecedent: tuple[Formula, ...] = ()
    succedent: tuple[Formula, ...] = ()

    def __post_init__(self):
        # Accept lists from callers but store tuples.
        object.__setattr__(self, "antecedent", tuple(self.antecedent))
        object.__setattr__(self, "succedent", tuple(self.succedent))

    def __str__(self) -> str:
        return format_sequent(self)


# --------------------------------------------------------------------------
# Printing

# Binding strength; higher binds tighter.
_LEVEL = {Impl: 1, Or: 2, And: 3}
_SYMBOL = {Impl: "->", Or: "|", And: "&"}


def format_term(t: Term) -> str:
    return str(t)


def format_formula(f: Formula) -> str:
    """Render ``f`` with the fewest parentheses that still reparse to ``f``.

    ``&`` and ``|`` associate to the left and ``->`` to the right, so only
    the "wrong-side" nesting of an operator with itself is parenthesised.
    """
    return _fmt(f)


def _fmt(f: Formula) -> str:
    if isinstance(f, PropVar):
        return f.name
    if isinstance(f, PredAtom):
        return f"{f.pred}({format_term(f.arg)})"
    if isinstance(f, EqAtom):
        return f"{format_term(f.left)}={format_term(f.right)}"
    if isinstance(f, Neg):
        inner = _fmt(f.inner)
        if isinstance(f.inner, BINARY):
            inner = f"({inner})"
        return "~" + inner
    op = type(f)
    level = _LEVEL[op]
    left, right = _fmt(f.left), _fmt(f.right)
    if isinstance(f.left, BINARY):
        ll = _LEVEL[type(f.left)]
        if ll < level or (ll == level and op is Impl):
            left = f"({left})"
    if isinstance(f.right, BINARY):
        rl = _LEVEL[type(f.right)]
        if rl < level or (rl == level and op is not Impl):
            right = f"({right})"
    return f"{left}{_SYMBOL[op]}{right}"


def format_sequent(s: Sequent) -> str:
    ant = ", ".join(_fmt(f) for f in s.antecedent)
    suc = ", ".join(_fmt(f) for f in s.succedent)
    return f"{ant} => {suc}".strip()


def format_state(state) -> str:
    """Format any logical state; other values fall back to ``str``."""
    if isinstance(state, Sequent):
        return format_sequent(state)
    if isinstance(state, (PropVar, Neg, Or, And, Impl, PredAtom, EqAtom)):
        return format_formula(state)
    return str(state)


# --------------------------------------------------------------------------
# Variables and substitution


def term_vars(t: Term) -> set[str]:
    while isinstance(t, Succ):
        t = t.inner
    return {t.name} if isinstance(t, Var) else set()


def formula_vars(f: Formula) -> set[str]:
    if isinstance(f, PropVar):
        return set()
    if isinstance(f, PredAtom):
        return term_vars(f.arg)
    if isinstance(f, EqAtom):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, Neg):
        return formula_vars(f.inner)
    return formula_vars(f.left) | formula_vars(f.right)


def free_vars(s) -> set[str]:
    """Term variable names occurring anywhere in a sequent or formula.

    There are no binders in the language, so every occurrence is free.
    """
    if isinstance(s, Sequent):
        out: set[str] = set()
        for f in s.antecedent + s.succedent:
            out |= formula_vars(f)
        return out
    return formula_vars(s)


def subst_term(t: Term, renaming: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return renaming.get(t.name, t)
    if isinstance(t, Succ):
        return Succ(subst_term(t.inner, renaming))
    return t


def subst_formula(f: Formula, renaming: Mapping[str, Term]) -> Formula:
    if isinstance(f, PropVar):
        return f
    if isinstance(f, PredAtom):
        return PredAtom(f.pred, subst_term(f.arg, renaming))
    if isinstance(f, EqAtom):
        return EqAtom(subst_term(f.left, renaming), subst_term(f.right, renaming))
    if isinstance(f, Neg):
        return Neg(subst_formula(f.inner, renaming))
    return type(f)(subst_formula(f.left, renaming), subst_formula(f.right, renaming))


def substitute(s, renaming: Mapping[str, Term]):
    """Replace every occurrence of each key variable by its image.

    Works on sequents and on bare formulas.
    """
    if not renaming:
        return s
    if isinstance(s, Sequent):
        return Sequent(
            tuple(subst_formula(f, renaming) for f in s.antecedent),
            tuple(subst_formula(f, renaming) for f in s.succedent),
        )
    return subst_formula(s, renaming)


def replace_term(f: Formula, old: Term, new: Term) -> Formula:
    """Replace every occurrence of the subterm ``old`` by ``new``."""

    def rt(t: Term) -> Term:
        if t == old:
            return new
        if isinstance(t, Succ):
            return Succ(rt(t.inner))
        return t

    if isinstance(f, PropVar):
        return f
    if isinstance(f, PredAtom):
        return PredAtom(f.pred, rt(f.arg))
    if isinstance(f, EqAtom):
        return EqAtom(rt(f.left), rt(f.right))
    if isinstance(f, Neg):
        return Neg(replace_term(f.inner, old, new))
    return type(f)(replace_term(f.left, old, new), replace_term(f.right, old, new))


def fresh_name(avoid, prefix: str = "x") -> str:
    """First of ``x1, x2, ...`` not in ``avoid``."""
    i = 1
    while f"{prefix}{i}" in avoid:
        i += 1
    return f"{prefix}{i}"
