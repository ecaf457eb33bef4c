"""End-to-end tests for the command-line interface."""

import contextlib
import io
import json
import shutil
import subprocess
import sys

import pytest

from latcolor import bounds, cli, verify


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli.main(list(argv))
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run_cli(*argv)
    return code, json.loads(out)


# --- colour ---


def test_colour_d10_window_uses_mod6():
    code, obj = run_json("colour", "--dim", "3", "--D", "10",
                         "--window", "-3..3")
    assert code == 0
    assert obj["scheme"]["name"] == "mod6_z3"
    assert obj["colour_bound"] == 3
    assert len(obj["table"]) == 7 ** 3
    assert all(row[-1] < 3 for row in obj["table"])


def test_colour_d1_picks_parity():
    code, obj = run_json("colour", "--dim", "3", "--D", "1")
    assert code == 0
    assert obj["scheme"]["name"] == "parity"
    assert obj["colour_bound"] == 2
    assert "table" not in obj


def test_colour_d30_resolves_universal():
    # D = 30 is 2 mod 4, so the universal scheme applies
    code, obj = run_json("colour", "--dim", "3", "--D", "30")
    assert code == 0
    assert obj["scheme"]["name"] == "universal_z3"
    assert obj["colour_bound"] == 4


def test_colour_without_scheme_exits_2():
    code, obj = run_json("colour", "--dim", "3", "--D", "14", "--alpha", "1")
    assert code == 2
    assert obj["error"] == "no scheme"


def test_colour_inadmissible_override_exits_2():
    code, obj = run_json("colour", "--dim", "3", "--D", "1",
                         "--scheme", "mod6_z3")
    assert code == 2
    assert obj["error"] == "scheme not admissible"


def test_colour_unknown_scheme_exits_2():
    code, _, err = run_cli("colour", "--dim", "3", "--D", "1",
                           "--scheme", "nope")
    assert code == 2
    assert "unknown scheme" in err


def test_colour_csv_output(tmp_path):
    target = tmp_path / "table.csv"
    code, out, _ = run_cli("colour", "--dim", "3", "--D", "1",
                           "--window", "0..1", "--format", "csv",
                           "--output", str(target))
    assert code == 0
    assert out == ""
    lines = target.read_text().splitlines()
    assert lines[0] == "x1,x2,x3,colour"
    assert len(lines) == 9


def test_colour_vertex_cap_exits_3():
    code, _, err = run_cli("colour", "--dim", "3", "--D", "1",
                           "--window", "-20..20", "--vertex-cap", "1000")
    assert code == 3
    assert "vertex cap" in err


def test_colour_modular_scheme_rejects_window():
    code, obj = run_json("colour", "--dim", "3", "--D", "1",
                         "--scheme", "z3n", "--window", "0..1")
    assert code == 2


def test_provenance_is_construction_metadata():
    _, obj = run_json("colour", "--dim", "3", "--D", "10")
    assert obj["scheme"]["provenance"]["construction"] == "mod6_z3"


# --- verify ---


def test_verify_universal_window():
    code, obj = run_json("verify", "--scheme", "universal_z3", "--D", "6",
                         "--window", "-6..6")
    assert code == 0
    assert obj["report"]["proper"] is True
    assert obj["report"]["vertices"] == 13 ** 3
    assert obj["report"]["colours_used"] == 4


def test_verify_improper_exits_2():
    code, obj = run_json("verify", "--scheme", "z3n", "--dim", "2",
                         "--D", "2")
    assert code == 2
    assert obj["report"]["proper"] is False
    assert obj["report"]["conflicts"]


def test_verify_scaled_scheme_name():
    code, obj = run_json("verify", "--scheme", "mod6_z3_scaled2",
                         "--D", "40", "--window", "-4..4")
    assert code == 0
    assert obj["scheme"]["name"] == "mod6_z3_scaled2"
    assert obj["report"]["proper"] is True


def test_verify_modular_scheme():
    code, obj = run_json("verify", "--scheme", "z5n", "--dim", "2",
                         "--D", "3")
    assert code == 0
    assert obj["report"]["proper"] is True


def test_verify_rational_scheme():
    code, obj = run_json("verify", "--scheme", "q_odd", "--dim", "4",
                         "--D", "1", "--trials", "50", "--seed", "1")
    assert code == 0
    assert obj["report"]["proper"] is True


def test_verify_integer_scheme_needs_window():
    code, obj = run_json("verify", "--scheme", "parity", "--dim", "3",
                         "--D", "1")
    assert code == 2


# --- verify-certificate ---


def write_cert(tmp_path, obj):
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(obj))
    return str(path)


def test_replay_odd_cycle_certificate(tmp_path):
    verdict = verify.two_colourability_verdict(10)
    path = write_cert(tmp_path, verdict.certificate.to_json_dict())
    code, obj = run_json("verify-certificate", path)
    assert code == 0
    assert obj["verified"] is True


def test_replay_spindle_certificate(tmp_path):
    cert = bounds.construct_spindle_z3(7)
    path = write_cert(tmp_path, cert.to_json_dict())
    code, obj = run_json("verify-certificate", path)
    assert code == 0
    assert obj["verified"] is True
    assert obj["kind"] == "spindle"


def test_replay_tampered_certificate_exits_2(tmp_path):
    verdict = verify.two_colourability_verdict(10)
    obj = verdict.certificate.to_json_dict()
    obj["points"][0] = [9, 9, 9]
    path = write_cert(tmp_path, obj)
    code, _ = run_json("verify-certificate", path)
    assert code == 2


def test_replay_malformed_file_exits_1(tmp_path):
    path = tmp_path / "cert.json"
    path.write_text("{nope")
    code, _, err = run_cli("verify-certificate", str(path))
    assert code == 1
    assert "cannot read" in err


def test_replay_unknown_kind_exits_1(tmp_path):
    path = write_cert(tmp_path, {"kind": "mystery"})
    code, _, err = run_cli("verify-certificate", str(path))
    assert code == 1
    assert "unknown certificate kind" in err


# --- bounds ---


@pytest.mark.parametrize("n,p,expected", [(7, 2, "5"), (13, 4, "6")])
def test_bounds_fw(n, p, expected):
    code, obj = run_json("bounds", "fw", "--n", str(n), "--p", str(p))
    assert code == 0
    assert obj["bound"] == expected


def test_bounds_triple():
    code, obj = run_json("bounds", "triple", "--n", "9")
    assert code == 0
    assert obj["bound"] == "28/3"
    assert obj["validated"] is True


def test_bounds_chromatic_cube():
    code, obj = run_json("bounds", "chromatic", "--dim", "3", "--D", "2",
                         "--window", "0..2")
    assert code == 0
    assert obj["chi"] == 4
    assert obj["vertices"] == 27


def test_bounds_chromatic_limit():
    code, obj = run_json("bounds", "chromatic", "--dim", "3", "--D", "2",
                         "--window", "0..2", "--limit", "3")
    assert code == 0
    assert obj["chi"] is None
    assert obj["exceeds_limit"] is True


def test_bounds_independence_cube():
    code, obj = run_json("bounds", "independence", "--dim", "3", "--D", "2",
                         "--window", "0..2")
    assert code == 0
    assert obj["independence"] == 12


def test_bounds_solver_cap_exits_3():
    code, _, err = run_cli("bounds", "chromatic", "--dim", "3", "--D", "2",
                           "--window", "-3..3")
    assert code == 3
    assert "solver cap" in err


def test_bounds_spindle_edge():
    code, obj = run_json("bounds", "spindle", "--m", "1")
    assert code == 0
    assert obj["certificate"]["bridge_kind"] == "edge"
    assert obj["verified"] is True


def test_bounds_spindle_conditional_exits_2():
    code, obj = run_json("bounds", "spindle", "--m", "3")
    assert code == 2
    assert obj["certificate"]["conditional"] is True


def test_bounds_spindle_no_witness_exits_2():
    code, obj = run_json("bounds", "spindle", "--m", "2")
    assert code == 2
    assert obj["error"] == "no witness"


def test_bounds_spindle_search():
    code, obj = run_json("bounds", "spindle", "--search", "--dim", "3",
                         "--D", "2", "--radius", "2")
    assert code == 0
    assert obj["certificate"]["bridge_kind"] == "edge"


# --- scan and table ---


def test_scan_conjecture_statuses():
    code, obj = run_json("scan", "conjecture", "--max", "50")
    assert code == 0
    by_status = {}
    for row in obj["rows"]:
        by_status.setdefault(row["status"], []).append(row["D"])
    assert by_status["=3"] == [10, 22, 34, 40, 46]
    assert by_status["open"] == [30]
    assert [r["D"] for r in obj["rows"] if r["conditional"]] == [6, 24, 42]


def test_table_spec_rows():
    code, obj = run_json("table", "--max", "50")
    assert code == 0
    rows = {row["D"]: row for row in obj["rows"]}
    assert len(rows) == 50
    assert rows[1]["certified"] == "=2"
    assert "parity scheme" in rows[1]["certificates"]
    assert rows[14]["certified"] == "=4"
    assert "spindle(chain)" in rows[14]["certificates"]
    assert rows[40]["reduced"] == 10
    assert rows[40]["certified"] == "=3"
    assert rows[30]["certified"] == "in {3,4}"


def test_table_flags_unrepresentable_values():
    # 7 mod 8 has no three-square representation, so the window graphs
    # are empty and the mechanical two-colour claim overshoots
    _, obj = run_json("table", "--max", "50")
    mismatched = [r["D"] for r in obj["rows"] if not r["match"]
                  and not r["conditional"]]
    assert mismatched == [7, 15, 23, 28, 31, 39, 47]


# --- graph export ---


def test_graph_window_dimacs():
    code, out, _ = run_cli("graph", "window", "--dim", "3", "--D", "2",
                           "--window", "0..2", "--format", "dimacs")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "p edge 27 72"
    assert len(lines) == 73
    assert all(line.startswith("e ") for line in lines[1:])


def test_graph_window_json():
    code, obj = run_json("graph", "window", "--dim", "3", "--D", "2",
                         "--window", "0..2")
    assert code == 0
    assert obj["graph"]["kind"] == "window"
    assert len(obj["graph"]["vertices"]) == 27
    assert len(obj["graph"]["edges"]) == 72


def test_graph_hamming_dimacs():
    code, out, _ = run_cli("graph", "hamming", "--n", "5", "--weight", "3",
                           "--intersection", "1", "--format", "dimacs")
    assert code == 0
    assert out.splitlines()[0] == "p edge 10 15"


# --- output discipline ---


@pytest.mark.parametrize("argv", [
    ("scan", "conjecture", "--max", "30"),
    ("colour", "--dim", "3", "--D", "10", "--window", "-2..2"),
    ("table", "--max", "20"),
])
def test_repeat_runs_are_byte_identical(argv):
    _, first, _ = run_cli(*argv)
    _, second, _ = run_cli(*argv)
    assert first == second


def test_every_payload_carries_schema_version():
    for argv in (("colour", "--dim", "3", "--D", "1"),
                 ("bounds", "fw", "--n", "7", "--p", "2"),
                 ("scan", "conjecture", "--max", "10")):
        _, obj = run_json(*argv)
        assert obj["schema_version"] == 1


def test_bad_window_string_is_rejected():
    with pytest.raises(SystemExit):
        run_cli("colour", "--dim", "3", "--D", "1", "--window", "1..")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "latcolor.cli", "bounds", "fw",
         "--n", "7", "--p", "2"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["bound"] == "5"


def test_console_script_if_installed():
    exe = shutil.which("latcolor")
    if exe is None:
        pytest.skip("console script not on PATH")
    proc = subprocess.run([exe, "colour", "--dim", "3", "--D", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["scheme"]["name"] == "parity"
