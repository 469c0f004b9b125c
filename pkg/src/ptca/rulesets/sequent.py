"""Sequent rules: the fourteen classical rules and the N/E/O predicate rules.

Conventions shared by every case:

* the principal formula of a side is its last formula;
* formulas a rule would have to invent (weakening, conjunction-left,
  disjunction-right) come from an explicit pool and the rule is
  inapplicable while the pool is empty;
* where a neighbor must repeat the context of the own sequent, the sides
  are compared as sequences or, in ``set`` side mode, as sets.

The predicate rules also accept ``principal="rightmost-variable"``: the
principal of a side is its rightmost N/E/O atom whose argument is a bare
variable, and a predicate rule fires only when that atom carries its
predicate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..logic.parser import parse_formula
from ..logic.syntax import (
    And,
    EqAtom,
    Formula,
    Impl,
    Neg,
    Or,
    PredAtom,
    Sequent,
    Succ,
    Var,
    Zero,
    format_formula,
    free_vars,
    fresh_name,
    replace_term,
    substitute,
)
from .base import Case, CaseRuleset

STRUCTURAL = ("SEQ-WL", "SEQ-WR", "SEQ-CL", "SEQ-CR", "SEQ-XL", "SEQ-XR")
UNARY = ("SEQ-NEG-L", "SEQ-NEG-R", "SEQ-AND-L", "SEQ-OR-R", "SEQ-IMPL-R")
TWO_PREMISE = ("SEQ-AND-R", "SEQ-OR-L", "SEQ-IMPL-L")
SEQUENT_ORDER = STRUCTURAL + UNARY + TWO_PREMISE

BROTHERSTON_ORDER = (
    "BR-N-R", "BR-N0-R", "BR-E-R", "BR-O-R", "BR-E0-R",
    "BR-N-L", "BR-N0-L", "BR-E-L", "BR-O-L", "BR-E0-L",
    "BR-CASE-N", "BR-SUBST", "BR-SUBST-EQ",
)
# Rules that introduce an atom from nothing fire on every sequent; they
# stay off unless a scenario enables them.
BROTHERSTON_OFF = ("BR-N0-R", "BR-E0-R", "BR-N0-L", "BR-E0-L")
# Rule order for the driven-loop scenario: rename, Case N, then the predicate steps.
DRIVEN_LOOP_ORDER = ("BR-SUBST", "BR-CASE-N", "BR-N-R", "BR-E-R", "BR-O-R", "BR-SUBST-EQ")


def S(ant, suc) -> Sequent:
    return Sequent(tuple(ant), tuple(suc))


def _seq(own):
    return own if isinstance(own, Sequent) else None


# -- structural ------------------------------------------------------------------


def _weaken(side: str):
    def match(own, neighbors, rs):
        if _seq(own) is None:
            return None
        current = own.antecedent if side == "L" else own.succedent
        for phi in rs.pool:
            if phi not in current:
                return {"Gamma": own.antecedent, "Delta": own.succedent, "phi": phi}, None
        return None

    return match


def _contract(side: str):
    def match(own, neighbors, rs):
        if _seq(own) is None:
            return None
        fs = own.antecedent if side == "L" else own.succedent
        for j, f in enumerate(fs):
            if f in fs[:j]:
                i = fs.index(f)
                b = {"Gamma1": fs[:i], "phi": f, "Gamma2": fs[i + 1:j], "Gamma3": fs[j + 1:]}
                b["Other"] = own.succedent if side == "L" else own.antecedent
                return b, None
        return None

    return match


def _exchange(side: str):
    def match(own, neighbors, rs):
        if _seq(own) is None:
            return None
        fs = own.antecedent if side == "L" else own.succedent
        for i in range(len(fs) - 1):
            if format_formula(fs[i]) > format_formula(fs[i + 1]):
                b = {"Gamma1": fs[:i], "phi": fs[i], "psi": fs[i + 1], "Gamma2": fs[i + 2:]}
                b["Other"] = own.succedent if side == "L" else own.antecedent
                return b, None
        return None

    return match


def _on_side(side, main, other):
    return S(main, other) if side == "L" else S(other, main)


def _contract_case(rid, side):
    return Case(
        rid, _contract(side),
        premise=lambda b: _on_side(side, b["Gamma1"] + (b["phi"],) + b["Gamma2"] + (b["phi"],) + b["Gamma3"], b["Other"]),
        conclusion=lambda b: _on_side(side, b["Gamma1"] + (b["phi"],) + b["Gamma2"] + b["Gamma3"], b["Other"]),
    )


def _exchange_case(rid, side):
    return Case(
        rid, _exchange(side),
        premise=lambda b: _on_side(side, b["Gamma1"] + (b["phi"], b["psi"]) + b["Gamma2"], b["Other"]),
        conclusion=lambda b: _on_side(side, b["Gamma1"] + (b["psi"], b["phi"]) + b["Gamma2"], b["Other"]),
    )


# -- unary logical ---------------------------------------------------------------


def _last_left(own):
    if _seq(own) is None or not own.antecedent:
        return None
    return {"Gamma": own.antecedent[:-1], "Delta": own.succedent, "phi": own.antecedent[-1]}


def _last_right(own):
    if _seq(own) is None or not own.succedent:
        return None
    return {"Gamma": own.antecedent, "Delta": own.succedent[:-1], "phi": own.succedent[-1]}


def _neg_left(own, neighbors, rs):
    b = _last_right(own)
    return (b, None) if b else None


def _neg_right(own, neighbors, rs):
    b = _last_left(own)
    return (b, None) if b else None


def _and_left(own, neighbors, rs):
    b = _last_left(own)
    if not b or not rs.pool:
        return None
    return {"Gamma": b["Gamma"], "Delta": b["Delta"], "psi": b["phi"], "chi": rs.pool[0]}, None


def _or_right(own, neighbors, rs):
    b = _last_right(own)
    if not b or not rs.pool:
        return None
    return {"Gamma": b["Gamma"], "Delta": b["Delta"], "psi": b["phi"], "chi": rs.pool[0]}, None


def _impl_right(own, neighbors, rs):
    if _seq(own) is None or not own.antecedent or not own.succedent:
        return None
    return {
        "Gamma": own.antecedent[:-1], "Delta": own.succedent[:-1],
        "psi": own.antecedent[-1], "chi": own.succedent[-1],
    }, None


# -- two-premise logical -------------------------------------------------------------


def _and_right(own, neighbors, rs):
    if _seq(own) is None or not own.succedent:
        return None
    gamma, gamma2, psi = own.antecedent, own.succedent[:-1], own.succedent[-1]
    for i, n in enumerate(neighbors):
        if isinstance(n, Sequent) and n.succedent and rs.sides_match(n.antecedent, gamma) and rs.sides_match(n.succedent[:-1], gamma2):
            return {"Gamma": gamma, "Gamma'": gamma2, "psi": psi, "chi": n.succedent[-1]}, i
    return None


def _or_left(own, neighbors, rs):
    if _seq(own) is None or not own.antecedent:
        return None
    gamma, psi, gamma2 = own.antecedent[:-1], own.antecedent[-1], own.succedent
    for i, n in enumerate(neighbors):
        if isinstance(n, Sequent) and n.antecedent and rs.sides_match(n.antecedent[:-1], gamma) and rs.sides_match(n.succedent, gamma2):
            return {"Gamma": gamma, "Gamma'": gamma2, "psi": psi, "chi": n.antecedent[-1]}, i
    return None


def _impl_left(own, neighbors, rs):
    if _seq(own) is None or not own.succedent:
        return None
    for i, n in enumerate(neighbors):
        if isinstance(n, Sequent) and n.antecedent:
            return {
                "Gamma": own.antecedent, "Gamma'": own.succedent[:-1], "psi": own.succedent[-1],
                "chi": n.antecedent[0], "Delta": n.antecedent[1:], "Delta'": n.succedent,
            }, i
    return None


SEQUENT_CASES = {
    "SEQ-WL": Case(
        "SEQ-WL", _weaken("L"),
        premise=lambda b: S(b["Gamma"], b["Delta"]),
        conclusion=lambda b: S(b["Gamma"] + (b["phi"],), b["Delta"]),
    ),
    "SEQ-WR": Case(
        "SEQ-WR", _weaken("R"),
        premise=lambda b: S(b["Gamma"], b["Delta"]),
        conclusion=lambda b: S(b["Gamma"], b["Delta"] + (b["phi"],)),
    ),
    "SEQ-CL": _contract_case("SEQ-CL", "L"),
    "SEQ-CR": _contract_case("SEQ-CR", "R"),
    "SEQ-XL": _exchange_case("SEQ-XL", "L"),
    "SEQ-XR": _exchange_case("SEQ-XR", "R"),
    "SEQ-NEG-L": Case(
        "SEQ-NEG-L", _neg_left,
        premise=lambda b: S(b["Gamma"], b["Delta"] + (b["phi"],)),
        conclusion=lambda b: S(b["Gamma"] + (Neg(b["phi"]),), b["Delta"]),
    ),
    "SEQ-NEG-R": Case(
        "SEQ-NEG-R", _neg_right,
        premise=lambda b: S(b["Gamma"] + (b["phi"],), b["Delta"]),
        conclusion=lambda b: S(b["Gamma"], b["Delta"] + (Neg(b["phi"]),)),
    ),
    "SEQ-AND-L": Case(
        "SEQ-AND-L", _and_left,
        premise=lambda b: S(b["Gamma"] + (b["psi"],), b["Delta"]),
        conclusion=lambda b: S(b["Gamma"] + (And(b["psi"], b["chi"]),), b["Delta"]),
    ),
    "SEQ-OR-R": Case(
        "SEQ-OR-R", _or_right,
        premise=lambda b: S(b["Gamma"], b["Delta"] + (b["psi"],)),
        conclusion=lambda b: S(b["Gamma"], b["Delta"] + (Or(b["psi"], b["chi"]),)),
    ),
    "SEQ-IMPL-R": Case(
        "SEQ-IMPL-R", _impl_right,
        premise=lambda b: S(b["Gamma"] + (b["psi"],), b["Delta"] + (b["chi"],)),
        conclusion=lambda b: S(b["Gamma"], b["Delta"] + (Impl(b["psi"], b["chi"]),)),
    ),
    "SEQ-AND-R": Case(
        "SEQ-AND-R", _and_right,
        premise=lambda b: S(b["Gamma"], b["Gamma'"] + (b["psi"],)),
        conclusion=lambda b: S(b["Gamma"], b["Gamma'"] + (And(b["psi"], b["chi"]),)),
        side_premise=lambda b: S(b["Gamma"], b["Gamma'"] + (b["chi"],)),
    ),
    "SEQ-OR-L": Case(
        "SEQ-OR-L", _or_left,
        premise=lambda b: S(b["Gamma"] + (b["psi"],), b["Gamma'"]),
        conclusion=lambda b: S(b["Gamma"] + (Or(b["psi"], b["chi"]),), b["Gamma'"]),
        side_premise=lambda b: S(b["Gamma"] + (b["chi"],), b["Gamma'"]),
    ),
    "SEQ-IMPL-L": Case(
        "SEQ-IMPL-L", _impl_left,
        premise=lambda b: S(b["Gamma"], b["Gamma'"] + (b["psi"],)),
        conclusion=lambda b: S((Impl(b["psi"], b["chi"]),) + b["Gamma"] + b["Delta"], b["Gamma'"] + b["Delta'"]),
        side_premise=lambda b: S((b["chi"],) + b["Delta"], b["Delta'"]),
    ),
}


# -- predicate rules ---------------------------------------------------------------


def _find_principal(fs, preds, rs):
    """Index of the side's principal atom if its predicate is in ``preds``.

    The principal is chosen before the predicate is looked at, so the
    predicate rules never compete for different atoms of one side.
    """
    if rs.principal == "last":
        i = len(fs) - 1 if fs else None
    else:
        i = next(
            (k for k in range(len(fs) - 1, -1, -1) if isinstance(fs[k], PredAtom) and isinstance(fs[k].arg, Var)),
            None,
        )
    if i is not None and isinstance(fs[i], PredAtom) and fs[i].pred in preds:
        return i
    return None


def _step_atom(side: str, pred: str, new_pred: str):
    """``pred(x)`` on ``side`` becomes ``new_pred(x+1)``."""

    def match(own, neighbors, rs):
        if _seq(own) is None:
            return None
        fs = own.antecedent if side == "L" else own.succedent
        i = _find_principal(fs, (pred,), rs)
        if i is None:
            return None
        return {"Gamma1": fs[:i], "x": fs[i].arg, "Gamma2": fs[i + 1:], "Other": own.succedent if side == "L" else own.antecedent}, None

    return Case(
        "",
        match,
        premise=lambda b: _on_side(side, b["Gamma1"] + (PredAtom(pred, b["x"]),) + b["Gamma2"], b["Other"]),
        conclusion=lambda b: _on_side(side, b["Gamma1"] + (PredAtom(new_pred, Succ(b["x"])),) + b["Gamma2"], b["Other"]),
    )


def _intro_zero(side: str, pred: str):
    atom = PredAtom(pred, Zero())

    def match(own, neighbors, rs):
        if _seq(own) is None:
            return None
        fs = own.antecedent if side == "L" else own.succedent
        if atom in fs:
            return None
        return {"Gamma": own.antecedent, "Delta": own.succedent}, None

    if side == "L":
        concl = lambda b: S(b["Gamma"] + (atom,), b["Delta"])  # noqa: E731
    else:
        concl = lambda b: S(b["Gamma"], b["Delta"] + (atom,))  # noqa: E731
    return Case("", match, premise=lambda b: S(b["Gamma"], b["Delta"]), conclusion=concl)


def _case_n(own, neighbors, rs):
    # own: Gamma, t=x+1, N(x) => Delta ; neighbor: Gamma, t=0 => Delta
    if _seq(own) is None or len(own.antecedent) < 2:
        return None
    eq, nat = own.antecedent[-2], own.antecedent[-1]
    if not (isinstance(eq, EqAtom) and isinstance(eq.right, Succ) and isinstance(eq.right.inner, Var)):
        return None
    x = eq.right.inner
    if nat != PredAtom("N", x):
        return None
    gamma, delta, t = own.antecedent[:-2], own.succedent, eq.left
    conclusion = S(gamma + (PredAtom("N", t),), delta)
    if x.name in free_vars(conclusion):
        return None  # eigenvariable condition
    for i, n in enumerate(neighbors):
        if (
            isinstance(n, Sequent)
            and n.antecedent
            and n.antecedent[-1] == EqAtom(t, Zero())
            and rs.sides_match(n.antecedent[:-1], gamma)
            and rs.sides_match(n.succedent, delta)
        ):
            return {"Gamma": gamma, "Delta": delta, "t": t, "x": x}, i
    return None


def _case_variable(neighbors, pred):
    """First neighbor whose last antecedent formula is ``v=0`` for a
    variable ``v`` satisfying ``pred``."""
    for i, n in enumerate(neighbors):
        if isinstance(n, Sequent) and n.antecedent:
            last = n.antecedent[-1]
            if isinstance(last, EqAtom) and isinstance(last.left, Var) and last.right == Zero() and pred(last.left.name):
                return i, last.left.name, n
    return None


def _has_eq(s: Sequent) -> bool:
    return any(isinstance(f, EqAtom) for f in s.antecedent)


def _subst_rename(own, neighbors, rs):
    # Rename the variable a neighbor is case-splitting on, before the split.
    if _seq(own) is None or _has_eq(own):
        return None
    nat_vars = {f.arg.name for f in own.antecedent if isinstance(f, PredAtom) and f.pred == "N" and isinstance(f.arg, Var)}
    hit = _case_variable(neighbors, lambda v: v in nat_vars)
    if hit is None:
        return None
    i, v, n = hit
    y = fresh_name(free_vars(own) | free_vars(n))
    return {"Gamma": own.antecedent, "Delta": own.succedent, "x": Var(v), "y": Var(y)}, i


def _subst_fold(own, neighbors, rs):
    # Gamma, N(u) => Delta[u+1]  becomes  Gamma[v], v=u+1, N(u) => Delta[v]
    if _seq(own) is None or _has_eq(own) or not own.antecedent:
        return None
    nat = own.antecedent[-1]
    if not (isinstance(nat, PredAtom) and nat.pred == "N" and isinstance(nat.arg, Var)):
        return None
    succ = Succ(nat.arg)
    if not any(succ in _subterms(f) for f in own.antecedent[:-1] + own.succedent):
        return None
    hit = _case_variable(neighbors, lambda v: v not in free_vars(own))
    if hit is None:
        return None
    i, v, _ = hit
    return {"Gamma": own.antecedent[:-1], "Delta": own.succedent, "u": nat.arg, "v": Var(v)}, i


def _subterms(f: Formula):
    terms = []
    if isinstance(f, PredAtom):
        terms = [f.arg]
    elif isinstance(f, EqAtom):
        terms = [f.left, f.right]
    elif isinstance(f, Neg):
        return _subterms(f.inner)
    elif isinstance(f, (And, Or, Impl)):
        return _subterms(f.left) + _subterms(f.right)
    out = []
    for t in terms:
        while True:
            out.append(t)
            if not isinstance(t, Succ):
                break
            t = t.inner
    return out


def _fold_conclusion(b):
    old, new = Succ(b["u"]), b["v"]
    gamma = tuple(replace_term(f, old, new) for f in b["Gamma"])
    delta = tuple(replace_term(f, old, new) for f in b["Delta"])
    return S(gamma + (EqAtom(new, old), PredAtom("N", b["u"])), delta)


def _named(rid, case: Case) -> Case:
    return Case(rid, case.match, case.premise, case.conclusion, case.side_premise)


BROTHERSTON_CASES = {
    "BR-N-R": _named("BR-N-R", _step_atom("R", "N", "N")),
    "BR-N0-R": _named("BR-N0-R", _intro_zero("R", "N")),
    "BR-E-R": _named("BR-E-R", _step_atom("R", "E", "O")),
    "BR-O-R": _named("BR-O-R", _step_atom("R", "O", "E")),
    "BR-E0-R": _named("BR-E0-R", _intro_zero("R", "E")),
    "BR-N-L": _named("BR-N-L", _step_atom("L", "N", "N")),
    "BR-N0-L": _named("BR-N0-L", _intro_zero("L", "N")),
    "BR-E-L": _named("BR-E-L", _step_atom("L", "E", "O")),
    "BR-O-L": _named("BR-O-L", _step_atom("L", "O", "E")),
    "BR-E0-L": _named("BR-E0-L", _intro_zero("L", "E")),
    "BR-CASE-N": Case(
        "BR-CASE-N", _case_n,
        premise=lambda b: S(b["Gamma"] + (EqAtom(b["t"], Succ(b["x"])), PredAtom("N", b["x"])), b["Delta"]),
        conclusion=lambda b: S(b["Gamma"] + (PredAtom("N", b["t"]),), b["Delta"]),
        side_premise=lambda b: S(b["Gamma"] + (EqAtom(b["t"], Zero()),), b["Delta"]),
    ),
    "BR-SUBST": Case(
        "BR-SUBST", _subst_rename,
        premise=lambda b: S(b["Gamma"], b["Delta"]),
        conclusion=lambda b: substitute(S(b["Gamma"], b["Delta"]), {b["x"].name: b["y"]}),
    ),
    "BR-SUBST-EQ": Case(
        "BR-SUBST-EQ", _subst_fold,
        premise=lambda b: S(b["Gamma"] + (PredAtom("N", b["u"]),), b["Delta"]),
        conclusion=_fold_conclusion,
    ),
}

ALL_CASES = {**SEQUENT_CASES, **BROTHERSTON_CASES}


@dataclass(frozen=True)
class SequentRuleOptions:
    weakening_pool: tuple[Formula, ...] = ()
    enabled_rules: frozenset[str] | None = None  # None: all fourteen
    side_mode: str = "sequence"  # or "set"

    @classmethod
    def from_texts(cls, pool: Sequence[str] = (), enabled=None, side_mode="sequence"):
        return cls(tuple(parse_formula(t) for t in pool), None if enabled is None else frozenset(enabled), side_mode)


class SequentRules(CaseRuleset):
    """Ordered sequent cases (classical and predicate rules share one registry)."""

    name = "sequent"
    cases = ALL_CASES

    def __init__(self, order: Sequence[str] = SEQUENT_ORDER, pool=(), side_mode: str = "sequence", principal: str = "last"):
        super().__init__(order)
        if side_mode not in ("sequence", "set"):
            raise ValueError(f"side_mode must be 'sequence' or 'set', got {side_mode!r}")
        if principal not in ("last", "rightmost-variable"):
            raise ValueError(f"principal must be 'last' or 'rightmost-variable', got {principal!r}")
        self.pool = tuple(pool)
        self.side_mode = side_mode
        self.principal = principal

    @classmethod
    def from_options(cls, opts: SequentRuleOptions) -> "SequentRules":
        enabled = opts.enabled_rules
        order = [r for r in SEQUENT_ORDER if enabled is None or r in enabled]
        return cls(order, opts.weakening_pool, opts.side_mode)

    def sides_match(self, a, b) -> bool:
        if self.side_mode == "set":
            return set(a) == set(b)
        return tuple(a) == tuple(b)


class BrotherstonRules(SequentRules):
    name = "brotherston"

    def __init__(self, order: Sequence[str] | None = None, side_mode: str = "sequence", principal: str = "last", pool=()):
        if order is None:
            order = [r for r in BROTHERSTON_ORDER if r not in BROTHERSTON_OFF]
        super().__init__(order, pool, side_mode, principal)


def sequent_delta(own, neighbors, opts: SequentRuleOptions = SequentRuleOptions()):
    return SequentRules.from_options(opts)(own, neighbors)


def brotherston_delta(own, neighbors, **kwargs):
    return BrotherstonRules(**kwargs)(own, neighbors)
