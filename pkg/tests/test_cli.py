import json

import pytest

from gridknot import cli
from gridknot.grid import from_json_obj, to_text, trivial_diagram


@pytest.fixture
def trivial_file(tmp_path):
    path = tmp_path / "trivial.grid"
    path.write_text(to_text(trivial_diagram()))
    return str(path)


@pytest.fixture
def stuck8_file(tmp_path, stuck8):
    path = tmp_path / "stuck8.grid"
    path.write_text(to_text(stuck8))
    return str(path)


def run(capsys, *argv) -> dict:
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    assert code == 0, out
    return json.loads(out)


def test_info_example(capsys, trivial_file):
    obj = run(capsys, "info", "--grid", trivial_file)
    assert obj == {"n": 2, "crossings": 0, "components": 1, "total_length": 4}


def test_bounds_formula(capsys):
    assert run(capsys, "bounds", "--formula", "8", "exterior_exchange") == 156
    assert run(capsys, "bounds", "--formula", "3", "rotation") == 5


def test_validate_and_render_round_trip(capsys, stuck8_file, stuck8):
    obj = run(capsys, "render", "--grid", stuck8_file, "--format", "svg")
    assert from_json_obj(obj["grid"]) == stuck8
    assert obj["text"].startswith("<svg")


def test_moves_listing(capsys, stuck8_file):
    obj = run(capsys, "moves", "--grid", stuck8_file)
    kinds = {m["kind"] for m in obj["moves"]}
    assert kinds == {"exterior_exchange", "rotation"}


def test_simplify_and_witness_replay(capsys, tmp_path, stuck8_file):
    wfile = str(tmp_path / "w.json")
    obj = run(capsys, "simplify", "--grid", stuck8_file, "--witness-out", wfile)
    assert obj["verdict"] == "trivial"
    verdict = run(capsys, "replay", "--witness", wfile)
    assert verdict["ok"] is True


def test_simplify_scramble_mode(capsys):
    obj = run(capsys, "simplify", "--seed", "5", "--steps", "6")
    assert obj["verdict"] == "trivial"


def test_census_summary_and_out(capsys, tmp_path):
    out = str(tmp_path / "reps.grids")
    obj = run(capsys, "census", "--n", "4", "--stuck", "--trivial", "--out", out)
    assert obj["n"] == 4
    assert obj["trivial_stuck_count"] == 0
    assert open(out).read() == ""


def test_census_jobs_agree(capsys, tmp_path):
    a = run(capsys, "census", "--n", "5", "--knots")
    b = run(capsys, "census", "--n", "5", "--knots", "--jobs", "2")
    assert {k: v for k, v in a.items() if k != "elapsed_s"} == {
        k: v for k, v in b.items() if k != "elapsed_s"
    }


def test_realize_and_trace_replay(capsys, tmp_path, stuck8_file):
    tfile = str(tmp_path / "trace.json")
    move = json.dumps({"kind": "exterior_exchange", "axis": "horizontal", "site": []})
    obj = run(capsys, "realize", "--grid", stuck8_file, "--move", move, "--out", tfile)
    assert obj["ok"] is True
    verdict = run(capsys, "replay", "--trace", tfile)
    assert verdict["ok"] is True and verdict["moves"] == obj["moves"]


def test_bounds_move_report(capsys, stuck8_file):
    move = json.dumps({"kind": "rotation", "axis": "horizontal", "site": ["high_to_low"]})
    obj = run(capsys, "bounds", "--grid", stuck8_file, "--move", move)
    assert obj["holds"] is True
    assert obj["bound"] == 79


def test_missing_file_is_domain_error(capsys):
    assert cli.main(["info", "--grid", "/nonexistent/x.grid"]) == 1
    err = capsys.readouterr().err
    assert err.startswith("error:")


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        cli.main(["census"])  # missing required --n
    assert exc.value.code == 2


def test_pretty_render(capsys, trivial_file):
    code = cli.main(["render", "--grid", trivial_file, "--pretty"])
    assert code == 0
    assert capsys.readouterr().out == "+--+\n|  |\n|  |\n+--+\n"
