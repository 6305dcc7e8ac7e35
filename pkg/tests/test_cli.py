import json
import subprocess
import sys

import pytest

from fmcurve.cli import main
from fmcurve.fm import catalog_kernel
from fmcurve.kernelfile import emit_kernel, parse_kernel_file


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def kernels(fixtures_dir):
    return fixtures_dir / "kernels"


def test_analyze_diagonal(capsys, kernels):
    code, out, _ = run(capsys, "analyze", "--json", str(kernels / "diagonal_g2.json"))
    assert code == 0
    report = json.loads(out)
    assert report["pic"] == {"slope_degree": 1, "translation_degree": 0}
    assert report["jac"] == [[int(i == j) for j in range(4)] for i in range(4)]
    assert all(report["flags"].values())


def test_analyze_point_sheaf(capsys, kernels):
    code, out, _ = run(capsys, "analyze", "--json", str(kernels / "point_sheaf_g2.json"))
    flags = json.loads(out)["flags"]
    assert code == 0
    assert flags["numerical_equivalence"] is False and flags["consistent"] is True


def test_analyze_malformed(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"genus_source": 1,\n "genus_target": 1,\n "rank": 0.5}')
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 1
    assert "line 3" in err and "rank" in err


def test_analyze_json_is_deterministic(capsys, kernels):
    _, first, _ = run(capsys, "analyze", "--json", str(kernels / "poincare.json"))
    _, second, _ = run(capsys, "analyze", "--json", str(kernels / "poincare.json"))
    assert first == second


def test_convolve_poincare_square(capsys, kernels, tmp_path):
    out = tmp_path / "sq.json"
    p = str(kernels / "poincare.json")
    assert run(capsys, "convolve", p, p, "-o", str(out))[0] == 0
    code, text, _ = run(capsys, "analyze", "--json", str(out))
    k_map = json.loads(text)["k_map"]
    assert k_map == {"rank": {"r_f": -1, "d_f": 0}, "degree": {"r_f": 0, "d_f": -1}}


def test_convolve_genus_mismatch(capsys, kernels):
    code, _, err = run(capsys, "convolve", str(kernels / "poincare.json"),
                       str(kernels / "diagonal_g2.json"))
    assert code == 1 and "genera" in err


def test_adjoint_left_poincare(capsys, kernels, tmp_path):
    out = tmp_path / "l.json"
    assert run(capsys, "adjoint", "left", str(kernels / "poincare.json"), "-o", str(out))[0] == 0
    assert parse_kernel_file(out).rank == -1
    code, text, _ = run(capsys, "adjoint", "right", str(kernels / "poincare.json"))
    assert code == 0 and json.loads(text)["rank"] == -1


def test_check_exit_codes(capsys, kernels, tmp_path):
    code, out, _ = run(capsys, "check", str(kernels / "diagonal_g2.json"))
    assert code == 0 and "consistent" in out
    code, out, _ = run(capsys, "check", str(kernels / "point_sheaf_g2.json"))
    assert code == 0 and "not an equivalence" in out
    g0 = tmp_path / "zero_g0.json"
    g0.write_text(emit_kernel(catalog_kernel("zero", genus=0)))
    code, out, _ = run(capsys, "check", str(g0))
    assert code == 2 and "INCONSISTENT" in out


def test_catalog_emit(capsys, tmp_path):
    code, out, _ = run(capsys, "catalog", "--emit", "diagonal", "--genus", "3")
    assert code == 0
    assert out == emit_kernel(catalog_kernel("diagonal", genus=3))
    code, out, _ = run(capsys, "catalog", "--emit", "poincare")
    assert code == 0 and json.loads(out)["ch2"] == -1
    code, out, _ = run(capsys, "catalog", "--emit", "diagonal_twist", "--genus", "1",
                       "--twist", "2", "3")
    assert code == 0 and json.loads(out)["ch2"] == 5
    code, out, _ = run(capsys, "catalog", "--list")
    assert "point_sheaf" in out.split()


@pytest.mark.parametrize("argv", [
    ["catalog", "--emit", "poincare", "--genus", "2"],
    ["catalog", "--emit", "diagonal"],
    ["catalog", "--emit", "unknown"],
    ["catalog"],
    ["frobnicate"],
    [],
    ["selftest", "--trials", "0"],
])
def test_input_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as info:
        code = main(argv)
        raise SystemExit(code)
    assert info.value.code == 1


def test_selftest_small(capsys):
    code, out, _ = run(capsys, "selftest", "--trials", "3", "--seed", "5")
    assert code == 0
    assert "failures=0" in out


def test_module_entry_point(kernels):
    proc = subprocess.run([sys.executable, "-m", "fmcurve", "check",
                           str(kernels / "poincare.json")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "verdict: equivalence" in proc.stdout
