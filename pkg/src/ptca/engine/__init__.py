"""Generic proof-theoretic cellular automaton core."""

from .analysis import (
    Cyclic,
    EventuallyConstant,
    NotReversibleWitness,
    Recurrence,
    Reversible,
    Trace,
    TraceClass,
    Unknown,
    UnknownWithinHorizon,
    classify_trace,
    detect_global_cycle,
    is_circular,
    is_reversible,
    trace_of,
)
from .evolution import (
    IDENTITY,
    Configuration,
    Evolution,
    FunctionRule,
    ScheduleEntry,
    ScriptedCell,
    StepError,
    TransitionRule,
    as_rule,
    evolve,
    step,
)
from .lattice import Neighborhood, Point, Region, add, moore, neighbor_points, von_neumann

__all__ = [
    "Configuration", "Cyclic", "EventuallyConstant", "Evolution", "FunctionRule",
    "IDENTITY", "Neighborhood", "NotReversibleWitness", "Point", "Recurrence",
    "Region", "Reversible", "ScheduleEntry", "ScriptedCell", "StepError", "Trace",
    "TraceClass", "TransitionRule", "Unknown", "UnknownWithinHorizon", "add",
    "as_rule", "classify_trace", "detect_global_cycle", "evolve", "is_circular",
    "is_reversible", "moore", "neighbor_points", "step", "trace_of", "von_neumann",
]
