"""CLI: exit codes, schema rejection, artifacts, determinism."""

import json

from amenact.cli import BUILTINS, load_scenario, main, run_scenario


def test_every_builtin_parses_and_validates():
    from amenact.cli import validate_scenario

    assert len(BUILTINS) >= 10
    for name in BUILTINS:
        validate_scenario(load_scenario(name))


def test_run_builtin_exit_zero(tmp_path):
    code, message = run_scenario("example-doubling", out_dir=tmp_path)
    assert code == 0
    assert (tmp_path / "example-doubling.csv").exists()


def test_csv_output_is_deterministic(tmp_path):
    run_scenario("example-doubling", out_dir=tmp_path / "a")
    run_scenario("example-doubling", out_dir=tmp_path / "b")
    first = (tmp_path / "a" / "example-doubling.csv").read_bytes()
    second = (tmp_path / "b" / "example-doubling.csv").read_bytes()
    assert first == second


def test_malformed_file_is_schema_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, message = run_scenario(str(bad))
    assert code == 2 and "schema" in message


def test_unknown_keys_rejected(tmp_path):
    sc = dict(BUILTINS["example-doubling"])
    sc["surprise"] = 1
    f = tmp_path / "extra.json"
    f.write_text(json.dumps(sc))
    code, message = run_scenario(str(f))
    assert code == 2 and "surprise" in message


def test_unknown_kind_rejected(tmp_path):
    f = tmp_path / "weird.json"
    f.write_text(json.dumps({"kind": "frobnicate"}))
    assert run_scenario(str(f))[0] == 2


def test_failing_check_exits_one(tmp_path):
    sc = dict(BUILTINS["example-doubling"])
    sc["checks"] = [{"type": "every_ratio", "value": 0.5, "tol": 1e-9}]
    f = tmp_path / "fail.json"
    f.write_text(json.dumps(sc))
    code, message = run_scenario(str(f))
    assert code == 1 and "check failed" in message


def test_budget_exceeded_exits_three():
    code, message = run_scenario("example-doubling", budget=10)
    assert code == 3 and "budget" in message


def test_missing_file_is_schema_error():
    assert run_scenario("definitely-not-a-scenario")[0] == 2


def test_main_list_and_describe(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "example-doubling" in out and len(out.strip().splitlines()) >= 10

    assert main(["describe", "entropy"]) == 0
    out = capsys.readouterr().out
    assert "seed" in out

    assert main(["describe", "nonsense"]) == 2


def test_main_run_with_plot(tmp_path, capsys):
    code = main(["run", "example-doubling", "--out", str(tmp_path), "--plot"])
    assert code == 0
    svg = (tmp_path / "example-doubling.svg").read_text()
    assert svg.startswith("<svg") and "polyline" in svg


def test_log_base_appends_display_row(tmp_path):
    run_scenario("example-doubling", out_dir=tmp_path, log_base=2.0)
    text = (tmp_path / "example-doubling.csv").read_text()
    assert "# ratios in base 2.0" in text
    assert "1.0" in text.splitlines()[-1]


def test_prefix_override(tmp_path):
    code, _ = run_scenario("example-doubling", out_dir=tmp_path, prefix=5)
    assert code == 0
    rows = (tmp_path / "example-doubling.csv").read_text().strip().splitlines()
    assert len(rows) == 1 + 5


def test_scenario_file_roundtrip(tmp_path):
    # builtins serialize to JSON and run identically from a file
    f = tmp_path / "copy.json"
    f.write_text(json.dumps(BUILTINS["card-pi-half"]))
    code, _ = run_scenario(str(f), out_dir=tmp_path)
    assert code == 0
    assert (tmp_path / "copy.csv").exists()
