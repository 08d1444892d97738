import json
import math
from pathlib import Path

import pytest

from spinstat import cli
from spinstat.errors import ScenarioParseError

GOLDEN = Path(__file__).parent / "golden"


def assert_close_tree(got, want, path="$"):
    if isinstance(want, dict):
        assert isinstance(got, dict) and set(got) == set(want), path
        for k in want:
            assert_close_tree(got[k], want[k], f"{path}.{k}")
    elif isinstance(want, list):
        assert isinstance(got, list) and len(got) == len(want), path
        for i, (g, w) in enumerate(zip(got, want)):
            assert_close_tree(g, w, f"{path}[{i}]")
    elif isinstance(want, float) and not isinstance(got, bool):
        assert math.isclose(got, want, rel_tol=1e-8, abs_tol=1e-9), f"{path}: {got} != {want}"
    else:
        assert got == want, f"{path}: {got!r} != {want!r}"


def run_file(path, *args):
    return cli.main(["verify", str(path), *args])


def test_golden_report(tmp_path):
    out = tmp_path / "r.json"
    assert run_file(GOLDEN / "small-suite.json", "--format", "json", "--out", str(out)) == 0
    got = json.loads(out.read_text())
    for rep in got["reports"]:
        rep.pop("wall_time")
    want = json.loads((GOLDEN / "small-suite.report.json").read_text())
    assert_close_tree(got, want)


def test_reports_are_byte_identical_across_runs():
    scen = cli.parse_scenarios((GOLDEN / "small-suite.json").read_text())
    a = cli.emit_report(cli.run_all(scen), "json", include_time=False)
    b = cli.emit_report(cli.run_all(scen, parallel=True), "json", include_time=False)
    assert a == b


def test_check_order_does_not_change_streams():
    base = {"name": "x", "bundle": {"kind": "Hopf", "n": 1}, "seed": 3}
    fwd = dict(base, checks=[{"check": "curvature", "points": 5}, "two-pi-rotation"])
    rev = dict(base, checks=["two-pi-rotation", {"check": "curvature", "points": 5}])
    r1 = cli.run_scenario(cli.parse_scenarios(json.dumps(fwd))[0])
    r2 = cli.run_scenario(cli.parse_scenarios(json.dumps(rev))[0])
    m1 = {c.name: c.measured for c in r1.checks}
    m2 = {c.name: c.measured for c in r2.checks}
    assert m1 == m2


def test_seed_changes_samples():
    doc = {"name": "x", "bundle": {"kind": "Hopf", "n": 1}, "checks": [{"check": "curvature",
                                                                        "points": 5}]}
    a = cli.run_scenario(cli.parse_scenarios(json.dumps(dict(doc, seed=1)))[0])
    b = cli.run_scenario(cli.parse_scenarios(json.dumps(dict(doc, seed=2)))[0])
    assert a.checks[0].measured != b.checks[0].measured


def test_text_format(capsys):
    assert run_file(GOLDEN / "small-suite.json") == 0
    out = capsys.readouterr().out
    assert "scenario hopf-3" in out and "PASS" in out
    assert "two-pi-rotation" in out


def test_list_checks(capsys):
    assert cli.main(["list-checks"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == len(cli.REGISTRY)
    assert any(line.startswith("holonomy-stokes") for line in out)


def test_failing_check_exits_one(tmp_path):
    doc = {"name": "tight", "space": {"kind": "SpinSphere", "s": 1.0},
           "checks": [{"check": "flux", "depth": 1, "rel_tol": 1e-12}]}
    f = tmp_path / "s.json"
    f.write_text(json.dumps(doc))
    assert run_file(f, "--format", "json") == 1


def test_erroring_check_is_reported(tmp_path, capsys):
    doc = {"name": "wrong-kind", "space": {"kind": "FreeRel", "m": 1.0}, "seed": 1,
           "checks": ["two-pi-rotation"]}
    f = tmp_path / "s.json"
    f.write_text(json.dumps(doc))
    assert run_file(f, "--format", "json") == 1
    rep = json.loads(capsys.readouterr().out)
    assert rep["reports"][0]["checks"][0]["status"] == "error"


def test_tolerance_override_is_scoped(tmp_path, capsys):
    doc = [{"name": "a", "space": {"kind": "SpinSphere", "s": 0.5}, "tolerances": {"eps_int": 0.5},
            "checks": [{"check": "integrality", "depth": 2}]},
           {"name": "b", "space": {"kind": "SpinSphere", "s": 0.5},
            "checks": [{"check": "integrality", "depth": 2}]}]
    f = tmp_path / "s.json"
    f.write_text(json.dumps(doc))
    assert run_file(f, "--format", "json") == 0
    reps = json.loads(capsys.readouterr().out)["reports"]
    assert reps[0]["tolerances"]["eps_int"] == 0.5
    assert reps[1]["tolerances"]["eps_int"] == 0.001


@pytest.mark.parametrize("text,field,line", [
    ('{"name": "x", "bundle": {"kind": "Hopf", "n": 1.5}, "seed": 1, "checks": []}',
     "scenarios[0].bundle.n", 1),
    ('{"name": "x",\n "space": {"kind": "Banana"},\n "checks": []}', "scenarios[0].space.kind", 2),
    ('[{"name": "x", "checks": ["curvature"]}]', "scenarios[0].seed", 1),
    ('{"name": "x",\n "checks": ["nope"]}', "scenarios[0].checks[0].check", 2),
    ('{"name": "x", "tolerances": {"eps_bogus": 1}, "checks": []}', "scenarios[0].tolerances", 1),
    ('{"name": "x", "bundel": {}}', "scenarios[0].bundel", 1),
])
def test_parse_errors_carry_location(text, field, line):
    with pytest.raises(ScenarioParseError) as exc:
        cli.parse_scenarios(text)
    assert exc.value.field == field
    assert exc.value.line == line


def test_invalid_json_exits_two(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"name": "x",\n  "checks": [}')
    assert run_file(f) == 2
    assert "line 2" in capsys.readouterr().err


def test_missing_file_exits_two(tmp_path):
    assert run_file(tmp_path / "absent.json") == 2


def test_scenario_document_shapes():
    one = '{"name": "a", "checks": []}'
    assert len(cli.parse_scenarios(one)) == 1
    assert len(cli.parse_scenarios(f"[{one}, {one}]")) == 2
    assert len(cli.parse_scenarios(f'{{"scenarios": [{one}]}}')) == 1


def test_bundled_suite_parses_and_covers_every_check():
    scen = cli.parse_scenarios(cli.bundled_suite_path().read_text())
    used = {c.name for s in scen for c in s.checks}
    assert used == set(cli.REGISTRY)


def test_seed_override(tmp_path, capsys):
    assert run_file(GOLDEN / "small-suite.json", "--format", "json", "--seed", "5") == 0
    reps = json.loads(capsys.readouterr().out)["reports"]
    assert all(r["seed"] == 5 for r in reps)


def test_float_rounding():
    assert cli._round(1 / 3) == 0.3333333333
    assert cli._round({"a": [1e-17, 2]}) == {"a": [1e-17, 2]}
    assert cli._round(float("nan")) == "nan"


def test_module_entry_point(tmp_path):
    import subprocess
    import sys
    f = tmp_path / "s.json"
    f.write_text('{"name": "c", "seed": 1, "checks": [{"check": "double-cover", "pairs": 5}]}')
    proc = subprocess.run([sys.executable, "-m", "spinstat", "verify", str(f), "--format", "json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["status"] == "pass"


def test_half_spin_integrality_passes_with_n_one():
    rep = cli.run_scenario(cli.parse_scenarios(
        '{"name": "h", "space": {"kind": "SpinSphere", "s": 0.5}, "checks": ["integrality"]}')[0])
    assert rep.status == "pass" and rep.checks[0].measured == 1


def test_non_quantisable_spin_fails(tmp_path):
    f = tmp_path / "s.json"
    f.write_text('{"name": "h", "space": {"kind": "SpinSphere", "s": 0.3}, "checks": ["integrality"]}')
    assert run_file(f) == 1


def test_empty_check_list_is_a_valid_report():
    rep = cli.run_scenario(cli.parse_scenarios('{"name": "e", "checks": []}')[0])
    assert rep.checks == [] and rep.status == "pass"
    doc = json.loads(cli.emit_report(rep, "json"))
    assert doc["checks"] == [] and doc["status"] == "pass"


def test_failed_entry_is_marked_in_json():
    rep = cli.run_scenario(cli.parse_scenarios(
        '{"name": "h", "space": {"kind": "SpinSphere", "s": 0.3}, "checks": ["integrality"]}')[0])
    doc = json.loads(cli.emit_report(rep, "json"))
    assert doc["checks"][0]["status"] == "fail"
