"""The logical transition rules: modus ponens, Shoenfield, sequent, predicate."""

from .base import Case, CaseRuleset, RuleTrace
from .hilbert import ModusPonens, Shoenfield, mp_delta, shoenfield_delta
from .sequent import (
    BROTHERSTON_OFF,
    BROTHERSTON_ORDER,
    DRIVEN_LOOP_ORDER,
    SEQUENT_ORDER,
    BrotherstonRules,
    SequentRuleOptions,
    SequentRules,
    brotherston_delta,
    sequent_delta,
)

__all__ = [
    "BROTHERSTON_OFF", "BROTHERSTON_ORDER", "BrotherstonRules", "Case", "CaseRuleset",
    "DRIVEN_LOOP_ORDER", "ModusPonens", "RuleTrace", "SEQUENT_ORDER", "SequentRuleOptions",
    "SequentRules", "Shoenfield", "brotherston_delta", "mp_delta", "sequent_delta",
    "shoenfield_delta",
]
