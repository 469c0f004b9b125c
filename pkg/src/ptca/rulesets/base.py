"""First-match dispatch over an ordered list of rule cases.

Each case knows how to match the own state (plus, possibly, one neighbor)
and how to rebuild both its premise and its conclusion from the recorded
bindings.  That second half lets tests check mechanically that a recorded
:class:`RuleTrace` really explains the transition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence

from ..engine.evolution import TransitionRule
from ..logic.syntax import format_state

Bindings = dict[str, Any]
# A matcher returns (bindings, neighbor index or None) or None.
Matcher = Callable[[Any, Sequence, "CaseRuleset"], "tuple[Bindings, int | None] | None"]


@dataclass(frozen=True)
class RuleTrace:
    applied: str | None
    bindings: Mapping[str, Any] = field(default_factory=dict)
    neighbor_used: int | None = None

    def describe(self) -> str:
        if self.applied is None:
            return "-"
        parts = [self.applied]
        for k, v in self.bindings.items():
            parts.append(f"{k}={format_binding(v)}")
        if self.neighbor_used is not None:
            parts.append(f"neighbor={self.neighbor_used}")
        return " ".join(parts)


def format_binding(v) -> str:
    if isinstance(v, tuple):
        return "[" + ", ".join(format_binding(x) for x in v) + "]"
    return format_state(v)


@dataclass(frozen=True)
class Case:
    rule_id: str
    match: Matcher
    premise: Callable[[Bindings], Any]
    conclusion: Callable[[Bindings], Any]
    # Pattern the used neighbor must equal (under the ruleset's side mode),
    # when the side condition is an equation rather than a containment test.
    side_premise: Callable[[Bindings], Any] | None = None


class CaseRuleset(TransitionRule):
    """Ordered cases; the first one that matches fires, otherwise the own
    state is returned unchanged."""

    cases: dict[str, Case] = {}

    def __init__(self, order: Sequence[str]):
        unknown = [r for r in order if r not in self.cases]
        if unknown:
            raise ValueError(f"unknown rule identifiers for {self.name}: {unknown}")
        self.order = tuple(order)

    def apply(self, own, neighbors, second_ring=None):
        for rid in self.order:
            case = self.cases[rid]
            m = case.match(own, neighbors, self)
            if m is not None:
                bindings, used = m
                return case.conclusion(bindings), RuleTrace(rid, bindings, used)
        return own, None

    def explain(self, own, neighbors) -> RuleTrace:
        return self.apply(own, neighbors)[1] or RuleTrace(None)

    def sides_match(self, a, b) -> bool:
        """Equality used when a neighbor must repeat part of the own state."""
        return a == b
