import json
import math

import pytest

from cohres.cli import main


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_single_use_report(capsys):
    code, out, _ = run_cli(["single-use", "--L", "10"], capsys)
    assert code == 0
    assert "reservoir fidelity: 0.905" in out
    assert out.startswith("# cohres single-use")


def test_single_use_small_L(capsys):
    code, out, _ = run_cli(["single-use", "--L", "2,1"], capsys)
    assert code == 0
    assert "plus-state weight: 0.75" in out
    assert "trace distance to target: 0.5" in out  # L=1: fully dephased


def test_probs_csv(tmp_path, capsys):
    path = tmp_path / "probs.csv"
    code, _, _ = run_cli(["probs", "--L", "50", "--N", "2",
                          "--out", str(path)], capsys)
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# cohres probs")
    assert lines[1] == ("N,L,n,p_seq_exact,p_seq_approx,p_count_exact,"
                        "product_p_seq,product_p_count")
    rows = [ln.split(",") for ln in lines[2:]]
    byn = {int(r[2]): r for r in rows}
    assert float(byn[0][3]) == pytest.approx(0.005, abs=1e-12)
    total = sum(float(r[5]) for r in rows)
    assert total == pytest.approx(1.0, abs=1e-10)


def test_probs_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run_cli(["probs", "--L", "20,10", "--N", "2:4", "--out", str(a)], capsys)
    run_cli(["probs", "--L", "20,10", "--N", "2:4", "--out", str(b)], capsys)
    assert a.read_bytes() == b.read_bytes()


def test_fig1_csv(tmp_path, capsys):
    path = tmp_path / "fig1.csv"
    code, _, _ = run_cli(["fig1", "--L", "12", "--N", "1:8",
                          "--out", str(path)], capsys)
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[1] == "L,N,A_exact,A_approx,A_bound"
    rows = [ln.split(",") for ln in lines[2:]]
    assert len(rows) == 8
    for r in rows:
        assert float(r[4]) == pytest.approx(math.log(12), rel=1e-10)
    byn = {int(r[1]): r for r in rows}
    assert float(byn[1][2]) == pytest.approx(0.5199419738, abs=1e-9)
    assert float(byn[2][3]) == pytest.approx(1.07236494292, abs=1e-9)


def test_fig1_convention_flag(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run_cli(["fig1", "--L", "12", "--N", "2:2", "--out", str(a)], capsys)
    run_cli(["fig1", "--L", "12", "--N", "2:2", "--eig-convention",
             "appendixA", "--out", str(b)], capsys)
    va = float(a.read_text().splitlines()[2].split(",")[2])
    vb = float(b.read_text().splitlines()[2].split(",")[2])
    assert va != vb and vb < va  # more mixing, less asymmetry


def test_fig2_csv(tmp_path, capsys):
    path = tmp_path / "fig2.csv"
    code, _, _ = run_cli(["fig2", "--L", "100,20", "--N", "1:4",
                          "--out", str(path)], capsys)
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[1] == "L,N,xi_exact,xi_approx"
    rows = [ln.split(",") for ln in lines[2:]]
    assert [r[0] for r in rows] == ["20"] * 4 + ["100"] * 4  # sorted by L
    for r in rows:
        L, N = int(r[0]), int(r[1])
        assert float(r[3]) == pytest.approx((N - 1) / L, abs=1e-12)
        if N == 1:
            assert float(r[2]) == 0.0
        if N == 2:
            assert float(r[2]) == pytest.approx(1 / L, abs=1e-12)


def test_discriminate_json(capsys):
    code, out, _ = run_cli(["discriminate", "--L", "8", "--N", "1:2",
                            "--theta1", "0", "--theta2",
                            str(math.pi / 2)], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["schema_version"] == 1
    reports = payload["reports"]
    assert len(reports) == 2
    first = reports[0]
    assert first["naive"]["fidelity_per_copy"] > 0
    assert first["exact"]["helstrom_error"] >= first["reservoir"]["error_floor"]


def test_discriminate_capacity_field(capsys):
    code, out, err = run_cli(["discriminate", "--L", "4", "--N", "14:14"],
                             capsys)
    assert code == 3
    payload = json.loads(out)
    assert "error" in payload["reports"][0]["exact"]
    assert "capacity" in err.lower()


def test_bad_flags_exit_codes(capsys):
    assert run_cli(["probs", "--L", "abc", "--N", "2"], capsys)[0] == 2
    assert run_cli(["probs", "--L", "10", "--N", "4:2"], capsys)[0] == 2
    assert run_cli(["fig2", "--L", "50", "--N", "1:13"], capsys)[0] == 3
    assert run_cli(["single-use", "--L", "10", "--gate", "1,1"], capsys)[0] == 2
    code, _, err = run_cli(["probs", "--L", "0", "--N", "2"], capsys)
    assert code == 2 and "error" in err


def test_stride(tmp_path, capsys):
    path = tmp_path / "s.csv"
    run_cli(["fig1", "--L", "12", "--N", "1:9", "--stride", "3",
             "--out", str(path)], capsys)
    rows = [ln.split(",") for ln in path.read_text().splitlines()[2:]]
    assert [int(r[1]) for r in rows] == [1, 4, 7]


def test_twelve_significant_digits(tmp_path, capsys):
    path = tmp_path / "p.csv"
    run_cli(["probs", "--L", "7", "--N", "3", "--out", str(path)], capsys)
    row = path.read_text().splitlines()[2].split(",")
    # 12 significant digits: 1/(4*7)*? p_seq(0,3,7) = 3/(16*7)
    assert row[3] == f"{3 / (16 * 7):.12g}"
