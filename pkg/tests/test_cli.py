import json
import subprocess
import sys

import pytest

from cohen_moments.cli import fmt, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


@pytest.mark.parametrize(
    "argv, expected",
    [
        (("csum", "--q", "3", "--beta", "1", "--n", "3"), "2"),
        (("csum", "--q", "2", "--beta", "2", "--n", "4", "--method", "both"), "3"),
        (("sigma", "--n", "6", "--z", "0", "--beta", "1"), "4"),
        (("sigma", "--n", "4", "--z", "-1", "--beta", "1"), "1.75"),
        (("moment", "--k", "2", "--beta", "1", "--x", "2", "--y", "5"), "8"),
        (("moment", "--k", "2", "--beta", "1", "--x", "2", "--y", "5", "--brute"), "8"),
        (("row", "--beta", "1", "--n", "6", "--x", "3"), "4"),
        (("partial-sum", "--x", "4", "--z", "0", "--beta", "2", "--integer"), "4"),
        (("partial-sum", "--x", "4.5", "--z", "0", "--beta", "2"), "5"),
        (("pair-sum", "--x", "4", "--z1", "0", "--z2", "0", "--beta", "1"), "13.5"),
        (("zeta", "--s", "0.5"), "-1.46035450881"),
    ],
)
def test_single_values(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == expected


def test_row_table_output(capsys):
    code, out, _ = run(capsys, "row", "--beta", "1", "--x", "2", "--y", "5")
    assert code == 0 and out.split() == ["0", "2", "0", "2", "0"]
    code, out, _ = run(capsys, "row", "--beta", "1", "--x", "2", "--y", "5", "--format", "json")
    assert json.loads(out) == [0, 2, 0, 2, 0]


def test_complex_formatting(capsys):
    code, out, _ = run(capsys, "sigma", "--n", "12", "--z=-0.5+1i", "--beta", "1")
    assert code == 0
    assert out.endswith("i") and ("+" in out[1:] or "-" in out[1:])
    assert fmt(1.5 - 0.25j) == "1.5-0.25i"
    assert fmt(complex(1 / 3, 2)) == "0.333333333333+2i"
    assert fmt(10**30) == str(10**30)


def test_report_json(capsys):
    code, out, _ = run(capsys, "moment", "--k", "1", "--x", "50", "--y", "300000", "--target", "thm2", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert set(doc) == {"exact", "main", "error", "bound", "normalized"}
    assert isinstance(doc["exact"], int)


def test_pair_report(capsys):
    code, out, _ = run(capsys, "pair-sum", "--x", "10000", "--z1=-0.1", "--z2=-0.2", "--report")
    assert code == 0 and "normalized=" in out


def test_verify_series(capsys):
    code, out, _ = run(capsys, "verify-series", "--identity", "crum", "--s", "3", "--N", "10,100,1000")
    rows = out.splitlines()
    assert code == 0 and rows[0] == "truncation,residual,partial,reference"
    res = [float(r.split(",")[1]) for r in rows[1:]]
    assert res[0] > res[1] > res[2]
    code, out, _ = run(capsys, "verify-series", "--identity", "phi", "--s", "1", "--Q", "100,1000", "--format", "json")
    assert code == 0 and len(json.loads(out)) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ("csum", "--q", "0", "--n", "1"),
        ("csum", "--q", "2", "--n", "0"),
        ("partial-sum", "--x", "100", "--z", "0", "--beta", "1", "--report"),
        ("sigma", "--n", "4", "--z", "oops"),
        ("zeta", "--s", "1"),
        ("moment", "--k", "1", "--x", "3", "--y", "abc"),
    ],
)
def test_domain_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["csum", "--q"])
    assert exc.value.code == 2


def test_resource_error_exit_1(capsys, monkeypatch):
    monkeypatch.setenv("COHEN_MOMENTS_MEM_CAP", "1000")
    code, _, err = run(capsys, "moment", "--k", "1", "--x", "3", "--y", "5000")
    assert code == 1 and "memory cap" in err


def test_numeric_integrity_exit_3(capsys, monkeypatch):
    import cohen_moments.cli as cli

    monkeypatch.setattr(cli, "cohen_sum_direct", lambda q: 999)
    code, _, _ = run(capsys, "csum", "--q", "2", "--n", "3", "--method", "both")
    assert code == 3


def write_config(tmp_path, **kw):
    doc = {"target": "thm4", "beta": "1", "z": "-0.25", "x_grid": ["1024", "2048", "4096"]}
    doc.update(kw)
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(doc))
    return str(path)


def test_scan_command(capsys, tmp_path):
    out = tmp_path / "scan.csv"
    code, stdout, err = run(capsys, "scan", "--config", write_config(tmp_path), "--out", str(out))
    assert code == 0 and stdout == ""
    assert out.read_text().startswith("x,y,exact,main,error,bound,normalized,in_range,status,wall_time_ms\n")
    assert json.loads(err)["regression"]["points_used"] == 3


def test_scan_stdout_and_failed_points(capsys, tmp_path):
    cfg = write_config(tmp_path, target="thm2", z=None, x_grid=["1", "2", "30"], y_rule="x")
    code, stdout, _ = run(capsys, "scan", "--config", cfg)
    assert code == 1
    assert stdout.count("error:DomainError") == 2


def test_scan_bad_config_exit_2(capsys, tmp_path):
    code, _, _ = run(capsys, "scan", "--config", write_config(tmp_path, x_grid=["5", "4", "3"]))
    assert code == 2
    code, _, _ = run(capsys, "scan", "--config", str(tmp_path / "missing.json"))
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cohen_moments", "csum", "--q", "5", "--n", "1"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "-1"
