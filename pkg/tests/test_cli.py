import hashlib
import json
import subprocess
import sys

import pytest

from edgecascade import cli
from edgecascade import opcatalog as oc
from edgecascade.numerics import PrecisionShortfall


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "all")
    assert code == 0
    assert "FAIL" not in out
    assert out.strip().endswith("checks passed")


def test_verify_catalog_detects_corruption(capsys, tmp_path):
    data = oc.dump_catalog()
    good = tmp_path / "good.json"
    good.write_text(json.dumps(data))
    assert run(capsys, "verify", "catalog", "--catalog-file", str(good))[0] == 0
    data[oc.GUE_SOFT.key]["cascade"][1][0][1][0][2] = "-7/1"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "catalog", "--catalog-file", str(bad))
    assert code == 1
    assert "FAIL  [catalog] catalog file" in out


def test_solve(capsys):
    code, out, _ = run(capsys, "solve", "gue-soft", "3")
    assert code == 0
    assert out.startswith("NULLSPACE DIMENSION: 1")
    code, out, _ = run(capsys, "solve", "lue-hard", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["nullspace_dim"] == 0 and data["matches_stored"] is True


def test_laplace_and_saddle(capsys):
    code, out, _ = run(capsys, "laplace", "gue-soft", "4", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["b"] == "-35/16384" and data["u3_free_parameters"] == 1
    code, out, _ = run(capsys, "saddle", "6")
    assert code == 0 and out.strip().endswith("b = -35/16384")
    code, out, _ = run(capsys, "laplace", "gse-soft", "2")
    assert code == 0 and out.startswith("u0 = ")


def test_hyper(capsys):
    code, out, _ = run(capsys, "hyper", "0", "2")
    assert code == 0
    assert out.splitlines()[2] == "N^-2: (1/8)·D^4 + (1/3)·D^3"


def test_converge_negative_grid_and_outputs(capsys, tmp_path):
    code, out, _ = run(capsys, "converge", "gue-soft", "1", "50,100,200", "-2:2:1", "--out", str(tmp_path))
    assert code == 0 and "predicted order 4/3" in out
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    for name, digest in manifest["output_hashes"].items():
        assert hashlib.sha256((tmp_path / name).read_bytes()).hexdigest() == digest
    assert set(manifest["output_hashes"]) == {"converge.json", "converge.txt", "converge.csv", "converge.plot.dat"}
    assert manifest["parameters"]["N"] == "50,100,200"


def test_json_output_is_deterministic(capsys):
    first = run(capsys, "laplace", "gue-soft", "3", "--format", "json")[1]
    second = run(capsys, "laplace", "gue-soft", "3", "--format", "json")[1]
    assert first == second


@pytest.mark.parametrize("argv", [
    ["solve", "xue-soft", "1"],
    ["solve", "gue-soft", "0"],
    ["saddle", "20"],
    ["hyper", "3", "1"],
    ["converge", "gue-soft", "1", "50", "0"],
    ["converge", "gue-soft", "1", "50,100", ""],
    ["nonsense"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        sys.exit(cli.main(argv))
    assert exc.value.code == cli.EXIT_USAGE


def test_precision_failure_exit_code(capsys, monkeypatch):
    def boom(*args, **kwargs):
        raise PrecisionShortfall("forced")
    monkeypatch.setattr(cli, "cmd_converge", boom)
    code, _, err = run(capsys, "converge", "gue-soft", "0", "50,100", "0")
    assert code == cli.EXIT_PRECISION == 2
    assert "precision failure" in err


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "edgecascade.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "0.1.0"
