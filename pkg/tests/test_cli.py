import json

import pytest

from hdcheckerboard import particles as pt
from hdcheckerboard.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_neighbors_4hd(capsys):
    code, data = run_json(capsys, "neighbors", "--lattice", "4hd")
    assert code == 0 and len(data) == 8
    assert ["0.5", "0.5", "0.5", "0.5"] in data


def test_roots_count_only(capsys):
    code, out, _ = run(capsys, "roots", "--count-only")
    assert code == 0
    assert json.loads(out) == {"total": 240, "strata": [16, 96, 128]}


def test_roots_full(capsys):
    code, data = run_json(capsys, "roots")
    assert code == 0 and len(json.dumps(data)) > 1000


def test_propagate_two_step(capsys):
    code, data = run_json(capsys, "propagate", "--dim", "4", "--start", "F1", "--steps", "2",
                          "--end", "F1+F2", "--convention", "signed")
    assert code == 0
    assert data == {"poly": [{"C": 1, "coeff": {"k": "1"}}, {"C": 2, "coeff": {"re": "1"}}]}


def test_propagate_brute_matches_dp(capsys):
    args = ("propagate", "--dim", "4", "--start", "F3", "--steps", "4", "--end", "2F1+F2+F4",
            "--convention", "axis")
    _, dp = run_json(capsys, *args)
    _, brute = run_json(capsys, *args, "--method", "brute")
    assert dp == brute and dp["poly"]


def test_propagate_all_endpoints(capsys):
    code, data = run_json(capsys, "propagate", "--dim", "2", "--start", "R", "--steps", "3")
    assert code == 0 and len(json.dumps(data)) > 0


def test_count_csv(capsys):
    code, out, _ = run(capsys, "count", "--dim", "2", "--start", "R", "--steps", "3",
                       "--end", "2R+L", "--format", "csv")
    assert code == 0 and out == "C,N\n1,1\n2,2\n"


def test_format_before_verb(capsys):
    _, a, _ = run(capsys, "--format", "csv", "links", "--dim", "2")
    _, b, _ = run(capsys, "links", "--dim", "2", "--format", "csv")
    assert a == b and a.startswith("name,")


def test_evaluate_and_phase(capsys):
    poly = json.dumps({"poly": [{"C": 1, "coeff": {"i": "-1"}}, {"C": 2, "coeff": {"re": "-2"}}]})
    code, data = run_json(capsys, "evaluate", "--mu", "0.1", "--poly", poly)
    assert code == 0
    assert abs(float(data["amplitude"]["re"]) + 0.02) < 1e-12
    assert abs(float(data["amplitude"]["i"]) + 0.1) < 1e-12
    code, data = run_json(capsys, "phase", "--amp=-0.02,-0.1,0,0")
    assert code == 0 and abs(float(data["phase"]) - 1.7681918866447774) < 1e-12


def test_phase_of_zero_exits_2(capsys):
    code, _, err = run(capsys, "phase", "--amp", "0,0,0,0")
    assert code == 2 and "undefined" in err


def test_steplen(capsys):
    assert run_json(capsys, "steplen", "--mass", "2") == (0, {"length": "0.5"})


def test_closure_and_nn24(capsys):
    assert run_json(capsys, "closure", "--lattice", "3hd")[1]["extension_closed"] is False
    assert run_json(capsys, "closure", "--lattice", "8hd")[1]["extension_closed"] is True
    code, data = run_json(capsys, "nn24")
    assert code == 0 and len(data) == 24


def test_decompose_radius_one(capsys):
    code, data = run_json(capsys, "decompose", "--box-radius", "1", "--witnesses", "2")
    assert code == 0
    assert data["d8_split"]["holds"] and not data["e8_split"]["holds"]
    assert len(data["e8_split"]["left_only"]) == 2


def test_particle_builtin_validate(capsys):
    code, data = run_json(capsys, "particle", "--kind", "proton", "--validate")
    assert code == 0
    assert [(a["constituent"], a["tick"]) for a in data["anomalies"]] == [("B-Quark", 3)]


def test_particle_render(capsys):
    code, out, _ = run(capsys, "particle", "--kind", "pion", "--render")
    assert code == 0 and out.startswith("Quark & AntiQuark\n0 & 0\n1+i+j+k & 1-i+j-k\n")


def test_particle_file_unexpected_anomaly(tmp_path, capsys):
    data = pt.builtin_table("graviton").to_dict()
    data["constituents"]["X"][3]["signature"] = "+i+j+k"
    f = tmp_path / "g.json"
    f.write_text(json.dumps(data))
    code, _, _ = run(capsys, "particle", "--file", str(f), "--validate")
    assert code == 2


def test_particle_file_round_trip(tmp_path, capsys):
    f = tmp_path / "p.json"
    f.write_text(pt.builtin_table("proton").to_json())
    code, data = run_json(capsys, "particle", "--file", str(f), "--validate")
    assert code == 0 and len(data["anomalies"]) == 1


def test_particle_file_corrected_proton(tmp_path, capsys):
    data = pt.builtin_table("proton").to_dict()
    data["constituents"]["B-Quark"][2]["tick"] = 3
    f = tmp_path / "p.json"
    f.write_text(json.dumps(data))
    code, report = run_json(capsys, "particle", "--file", str(f), "--validate")
    assert code == 0 and report["ok"]


@pytest.mark.parametrize("argv", [
    ["bogus"],
    [],
    ["propagate", "--dim", "4", "--start", "F9", "--steps", "2"],
    ["propagate", "--dim", "4", "--start", "F1"],
    ["propagate", "--dim", "3", "--start", "F1", "--steps", "2"],
    ["propagate", "--dim", "4", "--start", "F1", "--steps", "2", "--end", "F1++F2"],
    ["neighbors", "--lattice", "q7"],
    ["decompose", "--box-radius", "5"],
    ["evaluate", "--mu", "0.1"],
])
def test_usage_errors_exit_64(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 64
    assert err.strip() and len(err.strip().splitlines()) == 1


def test_budget_exceeded_exit_64(capsys, monkeypatch):
    monkeypatch.setenv("CHECKERBOARD_BUDGET", "10")
    code, _, err = run(capsys, "count", "--dim", "4", "--start", "F1", "--steps", "3",
                       "--end", "3F1", "--method", "brute")
    assert code == 64 and "budget" in err


def test_deterministic(capsys):
    argv = ("propagate", "--dim", "4", "--start", "F2", "--steps", "4")
    first = run(capsys, *argv)
    assert run(capsys, *argv) == first


@pytest.mark.slow
def test_selfcheck(capsys):
    code, data = run_json(capsys, "selfcheck")
    assert code == 0 and data["ok"]
    assert all(c["ok"] for c in data["checks"])
