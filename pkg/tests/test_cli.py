import subprocess
import sys
from pathlib import Path

import pytest
import yaml

from ptca.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main
from ptca.engine import Configuration, Region
from ptca.logic import parse_formula
from ptca.report import dump_snapshot, run_scenario
from ptca.scenario import BUILTINS, ScenarioError, load_scenario, scenario_from_dict

DATA = Path(__file__).resolve().parents[1] / "src" / "ptca" / "data"


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def fig1_dict():
    return yaml.safe_load((DATA / "scenarios" / "fig1.yaml").read_text())


# -- scenario loading -------------------------------------------------------


@pytest.mark.parametrize("name", BUILTINS)
def test_builtins_load(name):
    s = load_scenario(name)
    assert s.name == name
    assert all(p in s.region for p in s.initial.points())


def test_malformed_state_reports_cell_and_line(tmp_path):
    text = (DATA / "scenarios" / "fig1.yaml").read_text().replace('"2,3": p\n', '"2,3": p->\n')
    path = tmp_path / "bad.yaml"
    path.write_text(text)
    with pytest.raises(ScenarioError) as err:
        load_scenario(path)
    lineno = next(i for i, ln in enumerate(text.splitlines(), 1) if ln.strip().startswith('"2,3"'))
    assert err.value.cell == "2,3"
    assert err.value.line == lineno
    assert f"line {lineno}" in str(err.value)


def test_alphabet_mismatch_is_rejected():
    d = fig1_dict()
    d["initial"]["1,1"] = "p|q"
    with pytest.raises(ScenarioError) as err:
        scenario_from_dict(d)
    assert err.value.cell == "1,1"


def test_out_of_bounds_coordinate_is_rejected():
    d = fig1_dict()
    d["initial"]["6,1"] = "p"
    with pytest.raises(ScenarioError):
        scenario_from_dict(d)


@pytest.mark.parametrize("key, value", [("schema", "ptca-scenario/9"), ("horizon", -1), ("dimension", 0)])
def test_bad_header_fields(key, value):
    d = fig1_dict()
    d[key] = value
    with pytest.raises(ScenarioError):
        scenario_from_dict(d)


def test_missing_cell_is_an_error():
    d = fig1_dict()
    del d["initial"]["3,3"]
    with pytest.raises(ScenarioError):
        scenario_from_dict(d)


# -- snapshots --------------------------------------------------------------


def test_grid_row_three_at_the_fixpoint():
    rep = run_scenario(load_scenario("fig1"))
    rows = dump_snapshot(rep.evolution[3]).splitlines()
    assert len(rows) == 5
    assert [c.strip() for c in rows[2].split("|")] == ["r", "p", "q", "p", "r"]


def test_single_cell_grid():
    c = Configuration(0, Region((1, 1), (1, 1)), {(1, 1): parse_formula("p")})
    assert dump_snapshot(c) == "p\n"


def test_structured_snapshot_round_trips():
    s = load_scenario("bz-fig5")
    doc = yaml.safe_load(dump_snapshot(run_scenario(s, 0).evolution[0], "structured"))
    d = yaml.safe_load((DATA / "scenarios" / "bz-fig5.yaml").read_text())
    d["initial"] = doc["cells"]
    again = scenario_from_dict(d)
    assert again.initial == s.initial


def test_bz_panel_six_centre_renders_canonically():
    rep = run_scenario(load_scenario("bz-fig5"))
    assert str(rep.evolution[5][(2, 2)]) == (
        "Br- (+) Ce3+ (+) HCOOH (+) CO2 (+) H+, Br- (+) H+ (+) BrCH(COOH)2, Br2 (+) H2O,"
        " HOBr (+) BrO3- (+) H+, HOBr (+) HBrO2"
    )


# -- commands ---------------------------------------------------------------


def test_scenarios_lists_builtins(capsys):
    code, out, _ = run_cli(capsys, "scenarios")
    assert code == EXIT_OK
    assert [ln.split()[0] for ln in out.splitlines()] == list(BUILTINS)


def test_run_prints_every_snapshot(capsys):
    code, out, _ = run_cli(capsys, "run", "fig1")
    assert code == EXIT_OK
    assert out.count("t=") == 4
    code, out, _ = run_cli(capsys, "run", "fig1", "--snapshots", "last", "--steps", "1")
    assert out.splitlines()[0] == "t=1"


def test_run_explain(capsys):
    code, out, _ = run_cli(capsys, "run", "bz-fig5", "--steps", "1", "--explain")
    assert "2,2: BZ-1" in out and "1,1: BZ-3" in out


def test_run_is_byte_identical(capsys):
    outs = {run_cli(capsys, "run", "bz-fig5", "--format", "structured")[1] for _ in range(3)}
    assert len(outs) == 1


def test_trace(capsys):
    code, out, _ = run_cli(capsys, "trace", "fig1", "--cell", "1,1")
    assert code == EXIT_OK
    assert "states: (p->q)->r, r, r, r" in out
    assert "class: EventuallyConstant(settle=1)" in out
    assert "global: fixpoint from t=3" in out


def test_trace_cyclic_cell(capsys):
    code, out, _ = run_cli(capsys, "trace", "brotherston-example4", "--cell", "0")
    assert code == EXIT_OK and "class: Cyclic(10)" in out


@pytest.mark.parametrize("cell", ["9,9", "1", "a,b"])
def test_trace_bad_cell(capsys, cell):
    code, _, err = run_cli(capsys, "trace", "fig1", "--cell", cell)
    assert code == EXIT_USAGE and "error" in err


def test_classify(capsys):
    code, out, _ = run_cli(capsys, "classify", "fig1")
    assert code == EXIT_OK
    assert out.count("EventuallyConstant") == 25
    assert "verdict: NotReversible(witness=1,1)" in out


def test_diff_match(capsys):
    for name in ("fig1", "bz-fig5"):
        code, out, _ = run_cli(capsys, "diff", name, name)
        assert code == EXIT_OK and out.startswith("OK")


def test_diff_mismatch(tmp_path, capsys):
    g = yaml.safe_load((DATA / "goldens" / "fig1.yaml").read_text())
    g["snapshots"][1]["cells"]["1,1"] = "q"
    path = tmp_path / "g.yaml"
    path.write_text(yaml.safe_dump(g))
    code, out, _ = run_cli(capsys, "diff", "fig1", str(path))
    assert code == EXIT_MISMATCH
    assert "t=1 cell 1,1" in out


def test_diff_writes_report(tmp_path, capsys):
    path = tmp_path / "r.md"
    code, _, _ = run_cli(capsys, "diff", "bz-fig5", "bz-fig5", "--report", str(path))
    text = path.read_text()
    assert code == EXIT_OK and "54 of 54 cells match" in text
    assert text == (Path(__file__).resolve().parents[1] / "docs" / "bz-fig5-divergence.md").read_text()


def test_usage_errors(capsys, tmp_path):
    assert run_cli(capsys, "run", "no-such-scenario")[0] == EXIT_USAGE
    bad = tmp_path / "x.yaml"
    bad.write_text("schema: [unclosed\n")
    assert run_cli(capsys, "run", str(bad))[0] == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["run"])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["run", "fig1", "--steps", "-1"])
    assert exc.value.code == EXIT_USAGE


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ptca.cli", "scenarios"], capture_output=True, text=True)
    assert proc.returncode == 0 and "fig1" in proc.stdout
