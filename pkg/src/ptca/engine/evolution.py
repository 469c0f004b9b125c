"""Configurations and synchronous evolution.

A configuration is a time-stamped map from every point of a finite
:class:`Region` to a state.  :func:`step` computes the successor
configuration from an immutable snapshot; points outside the region are
passed to the rule as ``None`` ("absent") and never wrap around.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence

from ..logic.equality import EqualityMode, states_equal
from .lattice import Neighborhood, Point, Region, add

State = Any


class StepError(RuntimeError):
    """A transition rule raised while evaluating one cell."""

    def __init__(self, point: Point, time: int, cause: BaseException):
        self.point = point
        self.time = time
        self.cause = cause
        super().__init__(f"rule failed at cell {point} (t={time}): {cause}")


@dataclass(frozen=True, eq=False)
class Configuration:
    time: int
    region: Region
    cells: Mapping[Point, State]

    def __post_init__(self):
        cells = {tuple(p): s for p, s in dict(self.cells).items()}
        object.__setattr__(self, "cells", cells)
        if self.time < 0:
            raise ValueError("time must be non-negative")
        pts = self.region.points()
        if len(cells) != len(pts) or any(p not in cells for p in pts):
            missing = [p for p in pts if p not in cells]
            extra = [p for p in cells if p not in self.region]
            raise ValueError(f"configuration must cover the region exactly (missing={missing[:3]}, extra={extra[:3]})")

    def __getitem__(self, p: Point) -> State:
        return self.cells[tuple(p)]

    def get(self, p: Point) -> State | None:
        return self.cells.get(tuple(p))

    def points(self) -> list[Point]:
        return self.region.points()

    def equals(self, other: "Configuration", mode: EqualityMode = EqualityMode.SYNTACTIC) -> bool:
        """Pointwise comparison; the time stamps are ignored."""
        if self.region != other.region:
            return False
        return all(states_equal(s, other.cells[p], mode) for p, s in self.cells.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.time == other.time and self.region == other.region and self.cells == other.cells

    def at_time(self, t: int) -> "Configuration":
        return Configuration(t, self.region, self.cells)

    def replace(self, updates: Mapping[Point, State]) -> "Configuration":
        cells = dict(self.cells)
        cells.update({tuple(p): s for p, s in updates.items()})
        return Configuration(self.time, self.region, cells)


# --------------------------------------------------------------------------
# Scripted cells


@dataclass(frozen=True)
class ScheduleEntry:
    """Matches ``t == at``, or ``t >= offset`` with ``(t - offset) % every == 0``."""

    state: State
    at: int | None = None
    every: int | None = None
    offset: int = 0

    def __post_init__(self):
        if (self.at is None) == (self.every is None):
            raise ValueError("schedule entry needs exactly one of 'at' or 'every'")
        if self.every is not None and self.every < 1:
            raise ValueError("'every' must be positive")

    def matches(self, t: int) -> bool:
        if self.at is not None:
            return t == self.at
        return t >= self.offset and (t - self.offset) % self.every == 0


@dataclass(frozen=True)
class ScriptedCell:
    """A cell whose state is a fixed function of time; it bypasses delta."""

    point: Point
    default: State
    entries: tuple[ScheduleEntry, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "point", tuple(self.point))
        object.__setattr__(self, "entries", tuple(self.entries))

    def state_at(self, t: int) -> State:
        for e in self.entries:
            if e.matches(t):
                return e.state
        return self.default

    def _horizon(self) -> tuple[int, int]:
        # After ``settle`` the schedule is purely periodic with ``period``.
        settle = 0
        period = 1
        for e in self.entries:
            if e.at is not None:
                settle = max(settle, e.at + 1)
            else:
                settle = max(settle, e.offset)
                period = math.lcm(period, e.every)
        return settle, period

    def agrees(self, start: int, shift: int) -> bool:
        """True iff ``state_at(t) == state_at(t + shift)`` for every ``t >= start``."""
        settle, period = self._horizon()
        first = max(start, settle)
        return all(self.state_at(t) == self.state_at(t + shift) for t in range(start, first + period))


# --------------------------------------------------------------------------
# Rules


class TransitionRule:
    """Base class for local transition functions.

    Subclasses implement :meth:`apply`, returning the next state together
    with an explanation object (or ``None`` when nothing fired).  A rule
    with ``reach = 2`` additionally receives, for each neighbor slot, the
    states around that neighbor (``None`` for an absent neighbor).
    """

    reach = 1
    name = "rule"

    def apply(self, own, neighbors, second_ring=None):
        raise NotImplementedError

    def __call__(self, own, neighbors, second_ring=None):
        return self.apply(own, neighbors, second_ring)[0]


class FunctionRule(TransitionRule):
    """Wrap a plain ``delta(own, neighbors)`` callable."""

    def __init__(self, delta: Callable, name: str = "delta"):
        self.delta = delta
        self.name = name

    def apply(self, own, neighbors, second_ring=None):
        out = self.delta(own, neighbors)
        return out, (None if out == own else self.name)


def as_rule(rule) -> TransitionRule:
    return rule if isinstance(rule, TransitionRule) else FunctionRule(rule)


IDENTITY = FunctionRule(lambda own, neighbors: own, name="identity")


def _snapshot(c: Configuration, z: Point, nbhd: Neighborhood) -> tuple:
    return tuple(c.cells.get(add(z, a)) for a in nbhd)


def step(
    c: Configuration,
    rule,
    nbhd: Neighborhood,
    scripted: Iterable[ScriptedCell] = (),
    *,
    record: dict | None = None,
) -> Configuration:
    """One synchronous update.

    Every non-scripted point reads the time-``t`` snapshot; scripted points
    take their scheduled state for ``t + 1``.  When ``record`` is a dict it
    receives ``point -> explanation`` for every cell whose rule fired.
    """
    rule = as_rule(rule)
    scripted = {s.point: s for s in scripted}
    t1 = c.time + 1
    new = {}
    for z in c.region.points():
        if z in scripted:
            new[z] = scripted[z].state_at(t1)
            continue
        neighbors = _snapshot(c, z, nbhd)
        second = None
        if rule.reach >= 2:
            second = tuple(
                None if s is None else _snapshot(c, add(z, a), nbhd)
                for a, s in zip(nbhd, neighbors)
            )
        try:
            out, why = rule.apply(c.cells[z], neighbors, second)
        except Exception as exc:  # noqa: BLE001 - reported with position
            raise StepError(z, c.time, exc) from exc
        new[z] = out
        if record is not None and why is not None:
            record[z] = why
    return Configuration(t1, c.region, new)


@dataclass
class Evolution:
    """``configs[t]`` is the configuration at time ``t`` for ``t = 0..T``.

    With early stopping, ``fixpoint_at`` is the first ``t`` with
    ``configs[t+1] == configs[t]`` and later entries are padded copies.
    ``rule_traces[t]`` explains the step ``t -> t+1``.
    """

    configs: list[Configuration]
    fixpoint_at: int | None = None
    padded: bool = False
    rule_traces: list[dict] = field(default_factory=list)
    scripted: tuple[ScriptedCell, ...] = ()

    def __len__(self) -> int:
        return len(self.configs)

    def __getitem__(self, t):
        return self.configs[t]

    def __iter__(self) -> Iterator[Configuration]:
        return iter(self.configs)

    @property
    def horizon(self) -> int:
        return len(self.configs) - 1


def evolve(
    initial: Configuration,
    rule,
    nbhd: Neighborhood,
    scripted: Iterable[ScriptedCell] = (),
    horizon: int = 0,
    *,
    early_stop: bool = False,
) -> Evolution:
    if horizon < 0:
        raise ValueError("horizon must be non-negative")
    scripted = tuple(scripted)
    rule = as_rule(rule)
    configs = [initial]
    traces: list[dict] = []
    fixpoint_at = None
    for _ in range(horizon):
        if fixpoint_at is not None:
            configs.append(configs[-1].at_time(configs[-1].time + 1))
            traces.append({})
            continue
        record: dict = {}
        nxt = step(configs[-1], rule, nbhd, scripted, record=record)
        configs.append(nxt)
        traces.append(record)
        if (
            early_stop
            and nxt.cells == configs[-2].cells
            and all(s.agrees(configs[-2].time, 1) for s in scripted)
        ):
            fixpoint_at = configs[-2].time
    return Evolution(configs, fixpoint_at, fixpoint_at is not None and fixpoint_at + 1 < horizon, traces, scripted)
