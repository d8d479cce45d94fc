import pytest

from qlk import cli, css, gf2


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_qlk4(tmp_path, capsys):
    out_base = str(tmp_path / "qlk4")
    code, out, _ = run(capsys, "build", "--family", "qlk", "--k", "4", "--out", out_base)
    assert code == 0
    assert "[[96,16,?]]" in out
    assert (tmp_path / "qlk4.hx.txt").exists()
    assert (tmp_path / "qlk4.hz.txt").exists()
    assert (tmp_path / "qlk4.json").exists()


def test_build_qlk3(capsys):
    code, out, _ = run(capsys, "build", "--family", "qlk", "--k", "3")
    assert code == 0
    assert "[[54,9,?]]" in out


def test_build_hgp_lk4_pair(capsys):
    code, out, _ = run(capsys, "build", "--family", "hgp", "--c1", "lk:4", "--c2", "lk:4")
    assert code == 0
    assert out.startswith("[[80,")


def test_build_k5_erratum_note(capsys):
    code, out, _ = run(capsys, "build", "--family", "qlk", "--k", "5")
    assert code == 0
    assert "[[150,25,?]]" in out
    assert "120" in out


def test_build_usage_error_without_k(capsys):
    code, _, err = run(capsys, "build", "--family", "qlk")
    assert code == 1
    assert "usage error" in err


def test_build_bad_code_spec(capsys):
    code, _, err = run(capsys, "build", "--family", "shor", "--c1", "golay:23", "--c2", "lk:4")
    assert code == 1


def test_check_passes_on_qlk5(capsys):
    code, out, _ = run(capsys, "check", "--family", "qlk", "--k", "5")
    assert code == 0
    assert "check: pass" in out


def test_check_flags_flipped_bit(tmp_path, capsys):
    from qlk.css import build_qlk, save_css_code

    base = str(tmp_path / "broken")
    save_css_code(build_qlk(3), base)
    hx_path = tmp_path / "broken.hx.txt"
    lines = hx_path.read_text().splitlines()
    row = list(lines[1])
    row[0] = "1" if row[0] == "0" else "0"
    lines[1] = "".join(row)
    hx_path.write_text("\n".join(lines) + "\n")

    code, out, _ = run(capsys, "check", "--code", base)
    assert code == 1
    assert "commutation: FAIL" in out
    assert "X row 1 anticommutes with Z row" in out


def test_check_vacuous_on_empty_matrices(tmp_path, capsys):
    base = str(tmp_path / "empty")
    css.save_css_code(css.CssCode(gf2.zeros(0, 5), gf2.zeros(0, 5)), base)
    code, out, _ = run(capsys, "check", "--code", base)
    assert code == 0
    assert "check: pass" in out


def test_distance_k3(capsys):
    code, out, _ = run(capsys, "distance", "--k", "3", "--w-max", "3")
    assert code == 0
    assert "d = 3" in out
    assert "predicted d = 3" in out


def test_distance_low_cap_reports_open_bound(capsys):
    code, out, _ = run(capsys, "distance", "--k", "4", "--w-max", "2")
    assert code == 0
    assert "d > 2" in out


def test_circuit_k3_passes(tmp_path, capsys):
    out_path = str(tmp_path / "enc.txt")
    code, out, _ = run(capsys, "circuit", "--k", "3", "--out", out_path)
    assert code == 0
    assert "verification: pass" in out


def test_circuit_prescribed_verdict_zero_exit(capsys):
    code, out, _ = run(capsys, "circuit", "--k", "4", "--prescribed")
    assert code == 0
    assert "verification: fail" in out
    assert "H 13\nCX 13 25\nCX 13 37\nCX 13 49" in out


def test_circuit_qasm_round_trips(tmp_path, capsys):
    from qlk.encoder import parse_circuit, standard_form_encoder
    from qlk.css import build_qlk

    out_path = tmp_path / "enc.qasm"
    code, _, _ = run(capsys, "circuit", "--k", "3", "--format", "qasm-like",
                     "--out", str(out_path))
    assert code == 0
    parsed = parse_circuit(out_path.read_text())
    assert parsed == standard_form_encoder(build_qlk(3))


def test_simulate_p_zero(capsys):
    code, out, _ = run(
        capsys, "simulate", "--k", "4", "--p", "0", "--shots", "1000", "--seed", "7"
    )
    assert code == 0
    last = out.strip().splitlines()[-1]
    assert last.startswith("16,96,0,1000,7,1000,")
    assert last.endswith("0.000000e+00")


def test_simulate_exhaustive_weight_one(capsys):
    code, out, _ = run(capsys, "simulate", "--k", "4", "--exhaustive-weight", "1",
                       "--assume-d", "4")
    assert code == 0
    assert "288/288 corrected" in out


def test_simulate_identical_flags_identical_csv(tmp_path, capsys):
    args = ["simulate", "--k", "4", "--p", "0.01", "--shots", "2000", "--seed", "3",
            "--assume-d", "4"]
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second
    threaded = run(capsys, *args, "--threads", "2")
    assert threaded[1].strip().splitlines()[-1] == first[1].strip().splitlines()[-1]


def test_simulate_csv_append(tmp_path, capsys):
    out_csv = tmp_path / "rows.csv"
    args = ["simulate", "--k", "4", "--p", "0", "--shots", "100", "--seed", "1",
            "--assume-d", "4", "--out", str(out_csv)]
    assert run(capsys, *args)[0] == 0
    assert run(capsys, *args)[0] == 0
    lines = out_csv.read_text().strip().splitlines()
    assert lines[0] == "k,n,p,shots,seed,successes,fail_x,fail_z,fail_y,heralded,rate"
    assert len(lines) == 3
    assert lines[1] == lines[2]


def test_simulate_unresolvable_distance_is_usage_error(capsys):
    code, _, err = run(capsys, "simulate", "--k", "4", "--p", "0", "--shots", "10",
                       "--w-max", "1")
    assert code == 1
    assert "assume-d" in err


def test_simulate_capacity_exit(capsys):
    code, _, err = run(capsys, "simulate", "--k", "4", "--p", "0", "--shots", "10",
                       "--assume-d", "21")
    assert code == 2
    assert "capacity" in err.lower()


def test_export_alist_round_trip(tmp_path, capsys):
    out_path = tmp_path / "hx.alist"
    code, _, _ = run(capsys, "export-alist", "--family", "qlk", "--k", "3",
                     "--side", "x", "--out", str(out_path))
    assert code == 0
    from qlk.css import build_qlk

    m = gf2.from_alist(out_path.read_text())
    assert m == build_qlk(3).hx


def test_export_alist_from_matrix_file(tmp_path, capsys):
    m = gf2.BitMatrix.from_rows([[1, 0, 1], [0, 1, 1]])
    src = tmp_path / "m.txt"
    src.write_text(gf2.to_text(m))
    code, out, _ = run(capsys, "export-alist", "--matrix", str(src))
    assert code == 0
    assert gf2.from_alist(out) == m


def test_unknown_subcommand_is_usage_error(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 1
