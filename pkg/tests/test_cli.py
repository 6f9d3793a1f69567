import json
from pathlib import Path

from quarticvp.cli import main

FIXTURE = Path(__file__).resolve().parents[1] / "src" / "quarticvp" / "data"
A19 = str(FIXTURE / "a19_tangent_cone_form.txt")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify_fixture(capsys):
    code, out, _ = run(capsys, "classify", A19)
    assert code == 0
    assert "A>=8" in out


def test_classify_json_is_deterministic(capsys):
    code, out1, _ = run(capsys, "classify", A19, "--json")
    assert code == 0
    code, out2, _ = run(capsys, "classify", A19, "--json")
    assert out1 == out2
    data = json.loads(out1)
    assert data["family"] == "A" and data["index"] == 8 and data["exact"] is False


def test_vp_fixture(capsys):
    code, out, _ = run(capsys, "vp", A19, "--max-a", "4", "--json")
    assert code == 0
    data = json.loads(out)
    vp = [tuple(v["weights"]) for v in data["verdicts"] if v["vp"]]
    assert sorted(vp) == [(1, 1, 1), (1, 1, 2)]


def test_check_command(capsys):
    code, out, _ = run(capsys, "check", A19, "--weights", "1,1,2")
    assert code == 0
    assert "volume preserving" in out


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("x5 + 1")
    code, _, err = run(capsys, "classify", str(bad))
    assert code == 2
    assert "parse error" in err


def test_geometry_error_exit_code(capsys, tmp_path):
    off = tmp_path / "off.txt"
    off.write_text("x0^4 + x1^4")
    code, _, err = run(capsys, "classify", str(off))
    assert code == 3


def test_field_extension_exit_code(capsys, tmp_path):
    hard = tmp_path / "hard.txt"
    hard.write_text("x0^2*(x1^2 + 2*x2^2) + x0*x1^3 + x3^4")
    code, _, err = run(capsys, "classify", str(hard))
    assert code == 4


def test_point_flag(capsys, tmp_path):
    moved = tmp_path / "moved.txt"
    moved.write_text("x3^2*x1*x2 + x0^3*x1 + x0^4")
    code, out, _ = run(capsys, "classify", str(moved), "--point", "0:0:0:1")
    assert code == 0
    assert "A3" in out


def test_generate_command_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", "--type", "D5", "--seed", "3")
    assert code == 0
    quartic = tmp_path / "d5.txt"
    quartic.write_text(out)
    code, out, _ = run(capsys, "classify", str(quartic))
    assert code == 0
    assert "D5" in out


def test_generate_specialized(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", "--type", "A4", "--specialize", "1,2,3")
    assert code == 0
    quartic = tmp_path / "a4.txt"
    quartic.write_text(out)
    code, out, _ = run(capsys, "check", str(quartic), "--weights", "1,2,3")
    assert code == 0
    assert "volume preserving" in out and "not volume preserving" not in out
