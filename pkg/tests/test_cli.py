import io
import json
import math
import subprocess
import sys

import pytest

from smoothcircle.cli import main


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def parse_csv(text):
    lines = [ln for ln in text.strip().split("\n") if not ln.startswith("#")]
    cols = lines[0].split(",")
    return [dict(zip(cols, ln.split(","))) for ln in lines[1:]]


def test_exact_subcommand():
    code, out, err = run_cli("exact", "--x", "10", "--y", "2")
    assert code == 0
    row = parse_csv(out)[0]
    assert row["value"] == "16"
    assert row["terms"] == "4"


def test_exact_rejects_y1():
    code, out, err = run_cli("exact", "--x", "10", "--y", "1")
    assert code == 1
    assert "y >= 2" in err


def test_unknown_flag_usage_exit1():
    code, out, err = run_cli("exact", "--x", "10", "--y", "2", "--frobnicate")
    assert code == 1
    assert "usage:" in err


def test_unknown_command_exit1():
    code, out, err = run_cli("frobnicate")
    assert code == 1


def test_alpha_subcommand():
    code, out, _ = run_cli("alpha", "--x", "4", "--y", "2")
    assert code == 0
    row = parse_csv(out)[0]
    assert float(row["alpha"]) == pytest.approx(0.5849625007211562, abs=1e-12)
    assert float(row["bracket_lo"]) < float(row["alpha"]) < float(row["bracket_hi"])


def test_alpha_via_u():
    code, out, _ = run_cli("alpha", "--u", "2", "--y", "2")
    assert code == 0
    assert float(parse_csv(out)[0]["alpha"]) == pytest.approx(math.log2(1.5), abs=1e-12)


def test_hval_subcommand():
    code, out, _ = run_cli("hval", "--sigma", "1", "--y", "3")
    assert code == 0
    row = parse_csv(out)[0]
    assert float(row["re"]) == pytest.approx(2.25, rel=1e-14)
    assert float(row["im"]) == 0.0
    assert float(row["phi1"]) < 0 and float(row["phi2"]) > 0


def test_hval_complex_leaves_phi_empty():
    code, out, _ = run_cli("hval", "--sigma", "1", "--t", "2.5", "--y", "100")
    row = parse_csv(out)[0]
    assert row["phi"] == "" and row["phi4"] == ""
    assert math.hypot(float(row["re"]), float(row["im"])) <= 2.25 * 100  # finite


def test_estimate_and_compare():
    code, out, _ = run_cli("estimate", "--x", "100", "--y", "100", "--with-exact")
    assert code == 0
    row = parse_csv(out)[0]
    assert row["exact"] == "316"
    assert float(row["rankin"]) >= 316.0

    code, out, _ = run_cli("compare", "--grid-x", "100,1000", "--grid-y", "10,30")
    rows = parse_csv(out)
    assert [(r["x"], r["y"]) for r in rows] == [
        ("100", "10"), ("100", "30"), ("1000", "10"), ("1000", "30")
    ]
    assert all(r["exact"] == "" for r in rows)


def test_xi_rho_subcommands():
    code, out, _ = run_cli("xi", "--u", "1,10")
    rows = parse_csv(out)
    assert float(rows[0]["value"]) == 0.0
    assert float(rows[1]["value"]) == pytest.approx(3.6149504270875306, rel=1e-12)

    code, out, _ = run_cli("rho", "--u", "0.5,2")
    rows = parse_csv(out)
    assert float(rows[0]["value"]) == 1.0
    assert float(rows[1]["value"]) == pytest.approx(1 - math.log(2), rel=1e-12)


def test_primesums_subcommand():
    code, out, _ = run_cli("primesums", "--x", "10", "--sigma", "1")
    row = parse_csv(out)[0]
    want = math.log(2) / 2 + math.log(3) / 3 + math.log(5) / 5 + math.log(7) / 7
    assert float(row["value"]) == pytest.approx(want, rel=1e-13)
    assert row["twist"] == "false"

    code, out, _ = run_cli("primesums", "--grid-x", "10,100", "--sigma", "1", "--twist")
    rows = parse_csv(out)
    assert len(rows) == 2
    assert all(r["main_term"] == "0" for r in rows)


def test_perron_subcommand():
    code, out, _ = run_cli("perron", "--x", "20.5", "--y", "10", "--T", "25")
    assert code == 0
    row = parse_csv(out)[0]
    assert row["exact"] != ""
    assert abs(float(row["error"])) < 0.3 * float(row["exact"])


def test_diffcheck_subcommand():
    code, out, _ = run_cli("diffcheck", "--x", "1000", "--y", "50", "--z", "5")
    assert code == 0
    row = parse_csv(out)[0]
    assert int(row["lhs"]) >= 0
    assert float(row["ratio"]) > 0


def test_json_format():
    code, out, _ = run_cli("xi", "--u", "2", "--format", "json")
    doc = json.loads(out)
    assert doc["tool"] == "smoothcircle"
    assert doc["rows"][0]["u"] == 2.0


def test_header_and_determinism():
    runs = [run_cli("compare", "--grid-x", "50,500", "--grid-y", "5,7", "--with-exact")
            for _ in range(2)]
    assert runs[0] == runs[1]
    assert runs[0][1].startswith("# smoothcircle ")


def test_config_file_and_env(tmp_path, monkeypatch):
    cfgfile = tmp_path / "sweep.cfg"
    cfgfile.write_text("node_budget=10\n# comment line\noutput_format=csv\n")
    code, out, err = run_cli("--config", str(cfgfile), "exact", "--x", "100000", "--y", "30")
    assert code == 2  # budget exhausted -> resource error
    assert "budget" in err

    monkeypatch.setenv("SMOOTHCIRCLE_CONFIG", str(cfgfile))
    code, out, err = run_cli("exact", "--x", "100000", "--y", "30")
    assert code == 2
    monkeypatch.delenv("SMOOTHCIRCLE_CONFIG")
    code, out, err = run_cli("exact", "--x", "100000", "--y", "30")
    assert code == 0


def test_config_hash_in_header(tmp_path):
    cfgfile = tmp_path / "a.cfg"
    cfgfile.write_text("epsilon0=0.2\n")
    _, out1, _ = run_cli("xi", "--u", "2")
    _, out2, _ = run_cli("--config", str(cfgfile), "xi", "--u", "2")
    h1 = out1.split("\n")[0].split("config=")[1]
    h2 = out2.split("\n")[0].split("config=")[1]
    assert h1 != h2  # different config, different hash
    assert out1.split("\n")[1:] == out2.split("\n")[1:]  # same numbers


def test_bad_config_key(tmp_path):
    cfgfile = tmp_path / "bad.cfg"
    cfgfile.write_text("frobnicate=1\n")
    code, _, err = run_cli("--config", str(cfgfile), "xi", "--u", "2")
    assert code == 1
    assert "unknown config key" in err


def test_module_entrypoint_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "smoothcircle", "exact", "--x", "10", "--y", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip().split("\n")[-1] == "10,2,16,4,recursive"
