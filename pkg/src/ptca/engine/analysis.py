"""Derivation traces and what can be proven about them from a finite run.

A trace is one cell's state sequence.  Claims about the infinite future
are only made when the global configuration provably recurs: the
configuration at ``start`` reappears exactly at ``start + period`` and every
scripted cell's schedule is shift-invariant by ``period`` from ``start`` on.
Determinism of the step then forces the recurrence to continue forever.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from ..logic.equality import EqualityMode, states_equal
from .evolution import Evolution, ScriptedCell, State
from .lattice import Point


@dataclass(frozen=True)
class Trace:
    point: Point
    states: tuple[State, ...]

    def __len__(self) -> int:
        return len(self.states)


class Recurrence(NamedTuple):
    start: int
    period: int


@dataclass(frozen=True)
class EventuallyConstant:
    settle_time: int
    cyclic: bool = False  # constant from t=0, hence also circular with period 1

    def __str__(self) -> str:
        extra = ", cyclic" if self.cyclic else ""
        return f"EventuallyConstant(settle={self.settle_time}{extra})"


@dataclass(frozen=True)
class Cyclic:
    period: int

    def __str__(self) -> str:
        return f"Cyclic({self.period})"


@dataclass(frozen=True)
class Unknown:
    def __str__(self) -> str:
        return "Unknown"


TraceClass = EventuallyConstant | Cyclic | Unknown


@dataclass(frozen=True)
class Reversible:
    def __str__(self) -> str:
        return "Reversible"


@dataclass(frozen=True)
class NotReversibleWitness:
    point: Point

    def __str__(self) -> str:
        return f"NotReversible(witness={','.join(map(str, self.point))})"


@dataclass(frozen=True)
class UnknownWithinHorizon:
    def __str__(self) -> str:
        return "UnknownWithinHorizon"


def trace_of(evolution: Sequence, z: Point) -> Trace:
    z = tuple(z)
    first = evolution[0]
    if z not in first.region:
        raise KeyError(f"point {z} is outside the region")
    return Trace(z, tuple(c[z] for c in evolution))


def detect_global_cycle(
    evolution: Evolution | Sequence,
    scripted: Sequence[ScriptedCell] | None = None,
    mode: EqualityMode = EqualityMode.SYNTACTIC,
) -> Recurrence | None:
    """Smallest ``(start, period)`` (by start, then period) of a recurrence
    observed within the horizon, re-verified for every available offset.

    ``mode`` defaults to exact equality, the only mode under which a single
    observed repeat is a proof for the rules shipped here.
    """
    if scripted is None:
        scripted = getattr(evolution, "scripted", ())
    configs = list(evolution)
    T = len(configs) - 1
    for s in range(T + 1):
        for p in range(1, T - s + 1):
            if not configs[s].equals(configs[s + p], mode):
                continue
            if not all(sc.agrees(s, p) for sc in scripted):
                continue
            if all(configs[s + k].equals(configs[s + p + k], mode) for k in range(T - s - p + 1)):
                return Recurrence(s, p)
    return None


def _extended(states: Sequence, rec: Recurrence):
    s, p = rec

    def at(t: int):
        if t < len(states):
            return states[t]
        return states[s + (t - s) % p]

    return at


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def classify_trace(
    trace: Trace,
    cycle: Recurrence | tuple[int, int] | None,
    mode: EqualityMode = EqualityMode.SYNTACTIC,
) -> TraceClass:
    """Classify one trace given a proven global recurrence.

    The reported period is the least divisor of the global period under
    which the cell's own sequence repeats from ``t = 0``.
    """
    if cycle is None:
        return Unknown()
    rec = Recurrence(*cycle)
    s, p = rec
    if len(trace.states) < s + p + 1:
        raise ValueError("trace is shorter than the recurrence it is classified against")
    at = _extended(trace.states, rec)
    eq = lambda a, b: states_equal(a, b, mode)  # noqa: E731

    for u in range(s + 1):
        ref = at(u)
        if all(eq(at(t), ref) for t in range(u, s + p)):
            return EventuallyConstant(u, cyclic=(u == 0))
    for l in _divisors(p):
        if all(eq(at(t), at(t + l)) for t in range(s + p)):
            return Cyclic(l)
    return Unknown()


def is_circular(cls: TraceClass) -> bool:
    return isinstance(cls, Cyclic) or (isinstance(cls, EventuallyConstant) and cls.cyclic)


def is_reversible(
    evolution: Evolution,
    mode: EqualityMode = EqualityMode.SYNTACTIC,
    cycle: Recurrence | None = None,
):
    """Every trace circular from ``t = 0`` => Reversible; a cell that provably
    is not => a witness; no proven recurrence => unknown."""
    if cycle is None:
        cycle = detect_global_cycle(evolution)
    if cycle is None:
        return UnknownWithinHorizon()
    if cycle.start == 0:
        return Reversible()
    for z in evolution[0].points():
        if not is_circular(classify_trace(trace_of(evolution, z), cycle, mode)):
            return NotReversibleWitness(z)
    return Reversible()
