"""Run reports, snapshot rendering and golden-file comparison."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

from .engine.analysis import (
    EventuallyConstant,
    Recurrence,
    classify_trace,
    detect_global_cycle,
    is_reversible,
    trace_of,
)
from .engine.evolution import Configuration, Evolution, evolve
from .engine.lattice import Point
from .logic.equality import states_equal
from .logic.syntax import format_state
from .scenario import GOLDEN_SCHEMA, Scenario, ScenarioError, _read_text, format_coord, load_yaml, parse_coord


def describe_why(why) -> str:
    if why is None:
        return "-"
    if hasattr(why, "describe"):
        return why.describe()
    return str(why)


@dataclass
class RunReport:
    """Everything a run produces; a pure function of the scenario and step count.

    ``evolution`` holds the snapshots ``0..T``.  Claims about the future are
    made from ``analysis``, which carries one look-ahead step past ``T`` so
    that a fixpoint reached exactly at ``T`` is provable.
    """

    scenario: Scenario
    evolution: Evolution
    analysis: Evolution
    cycle: Recurrence | None
    classes: dict = field(default_factory=dict)
    verdict: Any = None

    @property
    def horizon(self) -> int:
        return self.evolution.horizon

    def snapshots(self) -> list[Configuration]:
        return list(self.evolution)

    def trace(self, z: Point):
        return trace_of(self.evolution, z)

    def rule_table(self) -> list[dict]:
        """``rows[t][point]`` describes what fired in the step ``t -> t+1``."""
        return [{p: describe_why(w) for p, w in rec.items()} for rec in self.evolution.rule_traces]


def run_scenario(scenario: Scenario, steps: int | None = None, early_stop: bool = False) -> RunReport:
    T = scenario.horizon if steps is None else steps
    if T < 0:
        raise ValueError("steps must be non-negative")
    full = evolve(scenario.initial, scenario.rule, scenario.nbhd, scenario.scripted, T + 1, early_stop=early_stop)
    shown = Evolution(full.configs[: T + 1], full.fixpoint_at, full.padded, full.rule_traces[:T], full.scripted)
    cycle = detect_global_cycle(full)
    classes = {
        z: classify_trace(trace_of(full, z), cycle, scenario.equality)
        for z in scenario.region.points()
    }
    verdict = is_reversible(full, scenario.equality, cycle)
    return RunReport(scenario, shown, full, cycle, classes, verdict)


# --------------------------------------------------------------------------
# Snapshots


def _grid_rows(config: Configuration) -> list[list[str]]:
    region = config.region
    if region.dimension == 1:
        return [[format_state(config[p]) for p in region.points()]]
    if region.dimension == 2:
        (r0, c0), (r1, c1) = region.lower, region.upper
        return [[format_state(config[(r, c)]) for c in range(c0, c1 + 1)] for r in range(r0, r1 + 1)]
    raise ValueError("grid format needs dimension 1 or 2")


def dump_snapshot(config: Configuration, fmt: str = "grid") -> str:
    """Render one configuration as an aligned text grid or as YAML.

    The structured form is ``{time, cells}`` where ``cells`` can be pasted
    into a scenario's ``initial`` section unchanged.
    """
    if fmt == "structured":
        doc = snapshot_dict(config)
        return yaml.safe_dump(doc, sort_keys=False, allow_unicode=True, width=1000)
    if fmt != "grid":
        raise ValueError(f"unknown snapshot format {fmt!r}")
    if config.region.dimension > 2:
        return "\n".join(f"{format_coord(p)}: {format_state(config[p])}" for p in config.points()) + "\n"
    rows = _grid_rows(config)
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    lines = [" | ".join(s.ljust(w) for s, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


def snapshot_dict(config: Configuration) -> dict:
    return {"time": config.time, "cells": {format_coord(p): format_state(config[p]) for p in config.points()}}


def golden_document(report: RunReport, times=None) -> dict:
    configs = report.snapshots()
    if times is not None:
        configs = [c for c in configs if c.time in set(times)]
    return {
        "schema": GOLDEN_SCHEMA,
        "scenario": report.scenario.name,
        "snapshots": [snapshot_dict(c) for c in configs],
    }


# --------------------------------------------------------------------------
# Goldens


@dataclass(frozen=True)
class Golden:
    scenario: str
    snapshots: tuple  # of (time, {point: state}, label)
    source: str = ""

    @property
    def last_time(self) -> int:
        return max((t for t, _, _ in self.snapshots), default=0)


def load_golden(path_or_name: str | Path, scenario: Scenario) -> Golden:
    text, source = _read_text(path_or_name, "goldens")
    data = load_yaml(text, source)
    if not isinstance(data, dict) or data.get("schema") != GOLDEN_SCHEMA:
        raise ScenarioError(f"expected schema {GOLDEN_SCHEMA!r}", field="schema")
    snaps = []
    for i, snap in enumerate(data.get("snapshots") or ()):
        fld = f"snapshots[{i}]"
        t = snap.get("time")
        if not isinstance(t, int) or t < 0:
            raise ScenarioError("snapshot time must be a non-negative integer", field=fld)
        cells = {}
        for key, st in (snap.get("cells") or {}).items():
            try:
                p = parse_coord(key, scenario.dimension)
                cells[p] = scenario.parse_state(str(st))
            except ValueError as exc:
                raise ScenarioError(str(exc), field=fld, cell=str(key)) from None
            if p not in scenario.region:
                raise ScenarioError("coordinate outside the region", field=fld, cell=str(key))
        snaps.append((t, cells, str(snap.get("label", ""))))
    return Golden(str(data.get("scenario", "")), tuple(snaps), source)


@dataclass(frozen=True)
class CellDiff:
    time: int
    point: Point
    expected: Any
    actual: Any

    def __str__(self) -> str:
        return (f"t={self.time} cell {format_coord(self.point)}: expected {format_state(self.expected)!r}, "
                f"got {format_state(self.actual)!r}")


def compare(report: RunReport, golden: Golden, stop_at_first: bool = True) -> list[CellDiff]:
    """Cell-level differences under the scenario's equality mode.

    With ``stop_at_first`` only the first mismatching snapshot is reported.
    """
    mode = report.scenario.equality
    diffs: list[CellDiff] = []
    for t, cells, _ in sorted(golden.snapshots, key=lambda s: s[0]):
        if t > report.horizon:
            raise ScenarioError(f"golden snapshot at t={t} lies beyond the run horizon {report.horizon}")
        actual = report.evolution[t]
        here = [CellDiff(t, p, s, actual[p]) for p, s in cells.items() if not states_equal(s, actual[p], mode)]
        diffs.extend(here)
        if here and stop_at_first:
            break
    return diffs


def divergence_markdown(report: RunReport, golden: Golden) -> str:
    """Per-snapshot, per-cell comparison table in Markdown."""
    mode = report.scenario.equality
    lines = [
        f"# Divergence report: `{report.scenario.name}` against `{_golden_label(golden)}`",
        "",
        f"Equality mode: `{mode.value}`. Every transcribed cell is listed; `match` means equal"
        " as a multiset of clusters (or under the mode above for logical states).",
        "",
    ]
    total = mismatched = 0
    for t, cells, label in sorted(golden.snapshots, key=lambda s: s[0]):
        actual = report.evolution[t]
        title = f"t={t}" + (f" (panel {label})" if label else "")
        lines += [f"## {title}", "", "| cell | status | expected | produced |", "|---|---|---|---|"]
        for p in sorted(cells):
            ok = states_equal(cells[p], actual[p], mode)
            total += 1
            mismatched += not ok
            lines.append(f"| {format_coord(p)} | {'match' if ok else 'DIFFERS'} | "
                         f"`{format_state(cells[p])}` | `{format_state(actual[p])}` |")
        lines.append("")
    lines.insert(4, f"Summary: {total - mismatched} of {total} cells match; {mismatched} differ.")
    lines.insert(5, "")
    return "\n".join(lines)


def class_note(cls) -> str:
    if isinstance(cls, EventuallyConstant) and not cls.cyclic:
        return "finite, not circular from t=0"
    return ""


def _golden_label(golden: Golden) -> str:
    if golden.source.startswith("builtin:"):
        return f"goldens/{golden.source[len('builtin:'):]}.yaml"
    return Path(golden.source).name
