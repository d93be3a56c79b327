from __future__ import annotations

import csv
import io
import json

import pytest

from freeplate import rod_spectrum as rod
from freeplate.cli import run
from freeplate.emit import emit, format_value, to_csv, write_atomic


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_ball_tone_json_schema():
    code, out, _ = call("ball", "tone", "--dim", "2", "--tau", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert list(data) == ["tau", "a", "b", "omega", "gamma"]
    assert data["omega"] == pytest.approx(3.9530150557256, rel=1e-12)


def test_ball_tone_higher_order():
    code, out, _ = call("ball", "tone", "--dim", "2", "--tau", "1", "--l", "0")
    assert code == 0 and json.loads(out)["a"] == pytest.approx(2.9751431374547788, rel=1e-12)


def test_ball_curve_csv(tmp_path):
    path = tmp_path / "curve.csv"
    code, out, _ = call("ball", "curve", "--dim", "3", "--tau-min", "1", "--tau-max", "3", "--steps", "2", "-o", str(path))
    assert code == 0 and out == ""
    raw = path.read_bytes()
    assert b"\r" not in raw
    rows = list(csv.reader(io.StringIO(raw.decode())))
    assert rows[0] == ["tau", "a", "b", "omega", "gamma"] and len(rows) == 4
    assert len(rows[1][3].replace("-", "").replace(".", "").lstrip("0")) >= 15


def test_rod_curve_csv(tmp_path):
    path = tmp_path / "rod.csv"
    code, _, _ = call("rod", "curve", "--tau-min", "-30", "--tau-max", "10", "--steps", "400", "--modes", "6", "-o", str(path))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(path.read_text())))
    assert tuple(rows[0]) == rod.CSV_HEADER
    assert {r["regime"] for r in rows} == {"positive", "zero", "trig", "degenerate", "hyperbolic_candidate"}
    assert len({r["tau"] for r in rows}) >= 401


def test_rod_modes_and_bessel():
    code, out, _ = call("rod", "modes", "--tau", "2", "--modes", "4", "--format", "json")
    assert code == 0 and [r["parity"] for r in json.loads(out)] == ["odd", "even", "odd", "even"]
    code, out, _ = call("bessel", "eval", "--dim", "2", "--l", "1", "--z", "1")
    assert code == 0 and json.loads(out)["value"] == pytest.approx(0.4400505857449335, rel=1e-14)
    code, out, _ = call("bessel", "eval", "--dim", "3", "--l", "1", "--z", "0.5", "--kind", "i", "--deriv", "2")
    assert code == 0


def test_iso_commands():
    code, out, _ = call("iso", "quotient", "--domain", "ellipse", "--aspect", "2", "--tau", "1")
    q = json.loads(out)
    assert code == 0 and q["qhat"] < q["tone_ball"] and q["gap"] > 0
    code, out, _ = call("iso", "monotonicity", "--dim", "3", "--tau", "0.5", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "check,status,value,tolerance"


def test_iso_domain_file(tmp_path):
    f = tmp_path / "tri.txt"
    f.write_text("kind=polygon2d\nd=2\nvertices=0,0;3,0;0,2\n")
    code, out, _ = call("iso", "quotient", "--domain", str(f), "--tau", "1")
    assert code == 0 and json.loads(out)["gap"] > 0


def test_verify_suite_selection():
    code, out, _ = call("verify", "--suite", "rod_spectrum")
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    deg = [e for e in rep["entries"] if e["check_id"] == "negclass-degenerate"]
    assert deg and abs(deg[0]["value"] - 1.13943) <= 1e-4
    assert all("runtime_ms" not in e for e in rep["entries"])
    code, out, _ = call("verify", "--suite", "special_functions", "--timings")
    assert all("runtime_ms" in e for e in json.loads(out)["entries"])


def test_config_file_overridden_by_flags(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("dim = 3\ntau = 5\nformat = csv\n")
    code, out, _ = call("ball", "tone", "--config", str(cfg))
    assert code == 0 and out.startswith("tau,a,b,omega,gamma\n5,")
    code, out, _ = call("ball", "tone", "--config", str(cfg), "--tau", "1", "--format", "json")
    assert json.loads(out)["omega"] == pytest.approx(4.957547006831613, rel=1e-12)
    cfg.write_text("colour = red\n")
    assert call("ball", "tone", "--config", str(cfg))[0] == 2


@pytest.mark.parametrize("argv", [
    ("ball", "tone", "--bogus"),
    ("ball", "tone", "--ta", "1"),
    ("ball", "tone", "--tau", "-1"),
    ("frobnicate",),
    ("ball", "curve", "--tau-min", "3", "--tau-max", "1"),
    ("iso", "quotient", "--domain", "hexagon"),
    ("bessel", "eval", "--z", "-1"),
])
def test_usage_errors_exit_2(argv):
    code, _, err = call(*argv)
    assert code == 2 and "usage" in err


def test_failed_report_exits_1(monkeypatch):
    from freeplate import cli
    from freeplate.verify import ReportEntry, VerificationReport

    def fake(selection, seed):
        return VerificationReport(selection, seed, [ReportEntry("poly1", "poly1: x", "fail", 1.0, 0.0)])

    monkeypatch.setattr(cli, "verify_suite", fake)
    code, out, _ = call("verify", "--all")
    assert code == 1 and json.loads(out)["passed"] is False


def test_emit_formats(tmp_path):
    assert to_csv([], ("tau", "a")) == "tau,a\n"
    assert format_value(0.1) == "0.10000000000000001"
    assert format_value(True) == "true" and format_value(None) == ""
    from freeplate.ball_spectrum import fundamental_tone

    text = emit([fundamental_tone(2, 1.0).as_row()], "csv", None, ("tau", "a", "b", "omega", "gamma"))
    assert len(text.splitlines()) == 2
    p = tmp_path / "x.json"
    emit({"b": 1, "a": [1.5, 2]}, "json", p)
    assert list(json.loads(p.read_text())) == ["b", "a"]
    with pytest.raises(OSError, match="missing"):
        write_atomic(tmp_path / "missing" / "x.csv", "x")
    with pytest.raises(ValueError):
        emit([], "xml")
