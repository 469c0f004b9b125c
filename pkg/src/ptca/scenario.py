"""Scenario files: region, neighborhood, ruleset, initial and scripted cells.

Scenarios are YAML documents with a version header::

    schema: ptca-scenario/1
    name: fig1
    dimension: 2
    region: {lower: [1, 1], upper: [5, 5]}
    neighborhood: moore            # vonneumann | moore | {offsets: [[-1, 0], ...]}
    rule: {name: mp}               # mp | shoenfield | sequent | brotherston | bz
    equality: syntactic            # syntactic | set | alpha
    horizon: 3
    fill: p                        # optional state for cells not listed below
    initial:
      "1,1": (p->q)->r
    scripted:
      - cell: "1,2"
        default: "z=0 =>"
        entries:
          - {state: "z=0 => O(z), E(z)", every: 10, offset: 4}
          - {state: "z=0 =>", at: 7}

Coordinates are comma-separated integers.  Errors carry the offending field
and, when the YAML node can be located, its line number.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Callable

import yaml

from .bz import BZRule, MixtureError, parse_mixture
from .engine.evolution import Configuration, ScheduleEntry, ScriptedCell, TransitionRule
from .engine.lattice import Neighborhood, Point, Region, moore, von_neumann
from .logic.equality import EqualityMode
from .logic.parser import ParseError, parse_formula, parse_sequent
from .logic.syntax import Impl, Neg, Or, PropVar
from .rulesets import BrotherstonRules, ModusPonens, SequentRules, SequentRuleOptions, Shoenfield

SCHEMA = "ptca-scenario/1"
GOLDEN_SCHEMA = "ptca-golden/1"
BUILTINS = ("fig1", "shoenfield-demo", "sequent-demo", "brotherston-example4", "bz-fig5")


class ScenarioError(ValueError):
    """Invalid scenario or golden file."""

    def __init__(self, message: str, field: str | None = None, cell: str | None = None, line: int | None = None):
        self.field = field
        self.cell = cell
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        if cell is not None:
            where.append(f"cell {cell}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


# --------------------------------------------------------------------------
# Rulesets and their state alphabets


def _only(kinds, label):
    def check(f):
        stack = [f]
        while stack:
            g = stack.pop()
            if not isinstance(g, kinds):
                raise ValueError(f"{type(g).__name__} is not allowed in the {label} language")
            stack.extend(getattr(g, a) for a in ("inner", "left", "right") if hasattr(g, a))
        return f

    return check


_IMPLICATIONAL = _only((PropVar, Impl), "implication-only")
_NEG_OR = _only((PropVar, Neg, Or), "negation/disjunction")


@dataclass(frozen=True)
class RulesetKind:
    name: str
    parse_state: Callable[[str], Any]
    build: Callable[[dict, Neighborhood], TransitionRule]


def _build_sequent(opts: dict, nbhd) -> TransitionRule:
    o = SequentRuleOptions.from_texts(
        opts.get("weakening_pool", ()), opts.get("enabled_rules"), opts.get("side_mode", "sequence")
    )
    return SequentRules.from_options(o)


def _build_brotherston(opts: dict, nbhd) -> TransitionRule:
    pool = tuple(parse_formula(t) for t in opts.get("pool", ()))
    return BrotherstonRules(
        opts.get("order"), opts.get("side_mode", "sequence"), opts.get("principal", "last"), pool
    )


RULESETS = {
    "mp": RulesetKind("mp", lambda s: _IMPLICATIONAL(parse_formula(s)), lambda o, n: ModusPonens()),
    "shoenfield": RulesetKind(
        "shoenfield", lambda s: _NEG_OR(parse_formula(s)), lambda o, n: Shoenfield(bool(o.get("expansion", False)))
    ),
    "sequent": RulesetKind("sequent", parse_sequent, _build_sequent),
    "brotherston": RulesetKind("brotherston", parse_sequent, _build_brotherston),
    "bz": RulesetKind("bz", parse_mixture, lambda o, n: BZRule(n, bool(o.get("idempotency", True)))),
}


# --------------------------------------------------------------------------
# Scenario


@dataclass
class Scenario:
    name: str
    dimension: int
    region: Region
    nbhd: Neighborhood
    ruleset: str
    rule_options: dict
    rule: TransitionRule
    equality: EqualityMode
    horizon: int
    initial: Configuration
    scripted: tuple[ScriptedCell, ...] = ()
    description: str = ""
    source: str = ""
    parse_state: Callable[[str], Any] = field(default=parse_formula, repr=False)


def parse_coord(text, dimension: int | None = None) -> Point:
    if isinstance(text, (list, tuple)):
        parts = list(text)
    elif isinstance(text, int):
        parts = [text]
    else:
        parts = [p for p in str(text).strip().strip("()").split(",")]
    try:
        p = tuple(int(str(c).strip()) for c in parts)
    except ValueError:
        raise ValueError(f"bad coordinate {text!r}") from None
    if dimension is not None and len(p) != dimension:
        raise ValueError(f"coordinate {text!r} has {len(p)} components, expected {dimension}")
    return p


def format_coord(p: Point) -> str:
    return ",".join(str(c) for c in p)


class _Lines:
    """Maps key paths of a YAML document to 1-based line numbers."""

    def __init__(self, text: str):
        try:
            self.root = yaml.compose(text)
        except yaml.YAMLError:
            self.root = None

    def __call__(self, *path) -> int | None:
        node = self.root
        line = None
        for key in path:
            if isinstance(node, yaml.MappingNode):
                for k, v in node.value:
                    if k.value == str(key):
                        line = k.start_mark.line + 1
                        node = v
                        break
                else:
                    return line
            elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
                node = node.value[key]
                line = node.start_mark.line + 1
            else:
                return line
        return line


def _require(d: dict, key: str, lines, kind=None):
    if key not in d:
        raise ScenarioError("missing required field", field=key)
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise ScenarioError(f"expected {getattr(kind, '__name__', kind)}, got {type(v).__name__}", field=key, line=lines(key))
    return v


def _neighborhood(spec, d: int, lines) -> Neighborhood:
    kind = spec.get("kind") if isinstance(spec, dict) else spec
    try:
        if isinstance(spec, dict) and "offsets" in spec:
            nb = Neighborhood(tuple(parse_coord(o, d) for o in spec["offsets"]))
        elif kind in ("moore", "m"):
            nb = moore(d)
        elif kind in ("vonneumann", "von_neumann", "von-neumann", "vn"):
            nb = von_neumann(d)
        else:
            raise ValueError(f"unknown neighborhood {kind!r}")
    except ValueError as exc:
        raise ScenarioError(str(exc), field="neighborhood", line=lines("neighborhood")) from None
    if nb.dimension != d:
        raise ScenarioError("neighborhood dimension does not match", field="neighborhood", line=lines("neighborhood"))
    return nb


def _state(kind: RulesetKind, text, fld: str, cell: str | None, line):
    if not isinstance(text, str):
        text = str(text)
    try:
        return kind.parse_state(text)
    except (ParseError, MixtureError, ValueError) as exc:
        raise ScenarioError(
            f"state {text!r} is not a valid {kind.name} state: {exc}", field=fld, cell=cell, line=line
        ) from None


def scenario_from_dict(data: dict, source: str = "<dict>", text: str | None = None) -> Scenario:
    lines = _Lines(text) if text is not None else (lambda *p: None)
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a mapping")
    schema = data.get("schema")
    if schema != SCHEMA:
        raise ScenarioError(f"expected schema {SCHEMA!r}, got {schema!r}", field="schema", line=lines("schema"))
    name = str(data.get("name", Path(source).stem))
    d = _require(data, "dimension", lines, int)
    if d < 1:
        raise ScenarioError("dimension must be positive", field="dimension", line=lines("dimension"))
    reg = _require(data, "region", lines, dict)
    try:
        region = Region(parse_coord(reg["lower"], d), parse_coord(reg["upper"], d))
    except (KeyError, ValueError) as exc:
        raise ScenarioError(f"bad region: {exc}", field="region", line=lines("region")) from None
    nbhd = _neighborhood(data.get("neighborhood", "moore"), d, lines)

    rule_spec = _require(data, "rule", lines)
    if isinstance(rule_spec, str):
        rule_spec = {"name": rule_spec}
    rname = rule_spec.get("name")
    if rname not in RULESETS:
        raise ScenarioError(f"unknown ruleset {rname!r}; expected one of {sorted(RULESETS)}", field="rule.name", line=lines("rule"))
    kind = RULESETS[rname]
    options = dict(rule_spec.get("options") or {})
    try:
        rule = kind.build(options, nbhd)
    except (ValueError, ParseError) as exc:
        raise ScenarioError(str(exc), field="rule.options", line=lines("rule", "options")) from None

    try:
        equality = EqualityMode.parse(str(data.get("equality", "syntactic")))
    except ValueError:
        raise ScenarioError(f"unknown equality mode {data.get('equality')!r}", field="equality", line=lines("equality")) from None
    horizon = data.get("horizon", 0)
    if not isinstance(horizon, int) or horizon < 0:
        raise ScenarioError("horizon must be a non-negative integer", field="horizon", line=lines("horizon"))

    cells: dict[Point, Any] = {}
    init = data.get("initial") or {}
    if not isinstance(init, dict):
        raise ScenarioError("expected a mapping from coordinates to states", field="initial", line=lines("initial"))
    for key, text_state in init.items():
        line = lines("initial", key)
        try:
            p = parse_coord(key, d)
        except ValueError as exc:
            raise ScenarioError(str(exc), field="initial", cell=str(key), line=line) from None
        if p not in region:
            raise ScenarioError("coordinate outside the region", field="initial", cell=str(key), line=line)
        cells[p] = _state(kind, text_state, "initial", str(key), line)

    scripted = []
    for i, entry in enumerate(data.get("scripted") or ()):
        fld = f"scripted[{i}]"
        line = lines("scripted", i)
        try:
            p = parse_coord(entry["cell"], d)
        except (KeyError, ValueError, TypeError) as exc:
            raise ScenarioError(f"bad scripted cell: {exc}", field=fld, line=line) from None
        if p not in region:
            raise ScenarioError("coordinate outside the region", field=fld, cell=format_coord(p), line=line)
        if "default" not in entry:
            raise ScenarioError("scripted cell needs a default state", field=fld, cell=format_coord(p), line=line)
        default = _state(kind, entry["default"], fld, format_coord(p), line)
        entries = []
        for e in entry.get("entries") or ():
            st = _state(kind, e.get("state", ""), fld, format_coord(p), line)
            try:
                entries.append(ScheduleEntry(st, at=e.get("at"), every=e.get("every"), offset=e.get("offset", 0)))
            except ValueError as exc:
                raise ScenarioError(str(exc), field=fld, cell=format_coord(p), line=line) from None
        sc = ScriptedCell(p, default, tuple(entries))
        scripted.append(sc)
        cells[p] = sc.state_at(0)

    missing = [q for q in region.points() if q not in cells]
    if missing:
        if "fill" not in data:
            raise ScenarioError(
                f"{len(missing)} cells have no initial state and no fill is given",
                field="initial", cell=format_coord(missing[0]), line=lines("initial"),
            )
        fill = _state(kind, data["fill"], "fill", None, lines("fill"))
        for q in missing:
            cells[q] = fill

    return Scenario(
        name=name, dimension=d, region=region, nbhd=nbhd, ruleset=rname, rule_options=options,
        rule=rule, equality=equality, horizon=horizon, initial=Configuration(0, region, cells),
        scripted=tuple(scripted), description=str(data.get("description", "")), source=source,
        parse_state=kind.parse_state,
    )


def _read_text(path_or_name: str | Path, folder: str, suffix: str = ".yaml") -> tuple[str, str]:
    p = Path(path_or_name)
    if p.exists():
        return p.read_text(encoding="utf-8"), str(p)
    name = str(path_or_name)
    if name.endswith("-golden"):
        name = name[: -len("-golden")]
    res = resources.files("ptca").joinpath("data", folder, name + suffix)
    if res.is_file():
        return res.read_text(encoding="utf-8"), f"builtin:{name}"
    raise ScenarioError(f"no such file or built-in: {path_or_name}")


def load_yaml(text: str, source: str):
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ScenarioError(f"malformed YAML in {source}: {getattr(exc, 'problem', exc)}",
                            line=None if mark is None else mark.line + 1) from None


def load_scenario(path_or_name: str | Path) -> Scenario:
    """Load a scenario file, or a built-in by name (see :data:`BUILTINS`)."""
    text, source = _read_text(path_or_name, "scenarios")
    return scenario_from_dict(load_yaml(text, source), source, text)


def builtin_descriptions() -> list[tuple[str, str]]:
    out = []
    for name in BUILTINS:
        s = load_scenario(name)
        out.append((name, s.description))
    return out
