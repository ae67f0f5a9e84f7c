import subprocess
import sys

import mpmath
import pytest

from zolotarev7 import known_values as K
from zolotarev7.cli import main, parse_structured
from zolotarev7.paper_data import default_data_path

from corrupt import corrupted_copies


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_structured(capsys):
    code, out, _ = run(capsys, "construct", "--t", "-21")
    assert code == 0
    doc = parse_structured(out)
    assert doc["t"].startswith("-21.000")
    assert doc["precision"] == "60"
    for k, v in enumerate(K.B_AT_MINUS_21):
        assert K.agrees(mpmath.mpf(doc[f"b{k}"]), v)
    assert {"omega", "L", "alpha", "beta", "gamma", "s", "z0", "z6", "a7"} <= set(doc)


def test_construct_s(capsys):
    code, out, _ = run(capsys, "construct", "--s", "2", "--precision", "40")
    doc = parse_structured(out)
    assert code == 0 and doc["s0"] == "2"
    assert K.agrees(mpmath.mpf(doc["t"]), K.T0_FOR_S0_2)
    assert K.agrees(mpmath.mpf(doc["L"]), K.L_FOR_S0_2)


@pytest.mark.parametrize("fmt", ["table", "csv"])
def test_other_formats(capsys, fmt):
    code, out, _ = run(capsys, "construct", "--t", "-21", "--format", fmt)
    assert code == 0
    if fmt == "csv":
        assert out.splitlines()[0] == "key,value"
    assert "alpha" in out


def test_verify_round_trip(capsys, tmp_path):
    f = tmp_path / "c.txt"
    assert run(capsys, "construct", "--t", "-19.5", "--out", str(f))[0] == 0
    code, a, _ = run(capsys, "verify", "--from-file", str(f))
    assert code == 0
    code, b, _ = run(capsys, "verify", "--t", "-19.5")
    assert code == 0 and a == b
    assert parse_structured(a)["passed"] == "true"


def test_sample(capsys, tmp_path):
    f = tmp_path / "s.csv"
    code, _, _ = run(capsys, "sample", "--t", "-21", "--points", "5", "--out", str(f))
    assert code == 0
    rows = [ln.split(",") for ln in f.read_text().splitlines()]
    assert rows[0] == ["x", "value"]
    xs = [mpmath.mpf(r[0]) for r in rows[1:]]
    assert xs == sorted(xs) and len(xs) == 9
    at_one = [mpmath.mpf(r[1]) for r in rows[1:] if mpmath.mpf(r[0]) == 1]
    assert at_one and abs(at_one[0] + 1) < 1e-40


@pytest.mark.parametrize("argv,code", [
    (["construct", "--t", "-12"], 3),
    (["construct", "--t", "-30"], 3),
    (["construct", "--s", "0.01"], 3),
    (["construct"], 2),
    (["construct", "--t", "-21", "--s", "2"], 2),
    (["construct", "--t", "-21", "--precision", "10"], 2),
    (["construct", "--t", "abc"], 2),
    (["sample", "--t", "-21", "--points", "1"], 2),
    (["verify"], 2),
    (["bogus"], 2),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err


def test_domain_message(capsys):
    _, _, err = run(capsys, "construct", "--t", "-12")
    assert "t must lie strictly inside (theta, -13)" in err


def test_verification_failure_exit(capsys, tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("t = -21\nprecision = 60\n")
    assert run(capsys, "verify", "--from-file", str(f))[0] == 0
    f.write_text("precision = 60\n")
    assert run(capsys, "verify", "--from-file", str(f))[0] == 2


def test_selfcheck_passes(capsys):
    code, out, _ = run(capsys, "selfcheck")
    assert code == 0
    assert "FAIL" not in out


def test_selfcheck_detects_corruption(capsys, tmp_path, monkeypatch):
    for _, path in corrupted_copies(tmp_path, 5, seed=1):
        code, out, _ = run(capsys, "selfcheck", "--data", str(path))
        assert code == 5, path
        assert "FAIL  data integrity" in out
    monkeypatch.setenv("ZOLOTAREV7_DATA", str(path))
    assert run(capsys, "selfcheck")[0] == 5
    assert run(capsys, "construct", "--t", "-21")[0] == 5


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "zolotarev7", "construct", "--t", "-21", "--precision", "30"],
                       capture_output=True, text=True, check=False)
    assert p.returncode == 0
    assert "b7 = 33.3953976" in p.stdout


def test_bundled_data_exists():
    assert default_data_path().is_file()


def test_sample_monic_value_at_one(capsys):
    code, out, _ = run(capsys, "sample", "--t", "-21", "--range", "monic", "--points", "11")
    assert code == 0
    at_one = [r.split(",")[1] for r in out.splitlines()[1:] if mpmath.mpf(r.split(",")[0]) == 1]
    assert K.agrees(-mpmath.mpf(at_one[0]), K.L_AT_MINUS_21)


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "--t", "-21")[0] == 0
    assert run(capsys, "verify", "--s", "2")[0] == 0
    assert run(capsys, "verify", "--t", "0")[0] == 3


def test_selfcheck_low_precision(capsys):
    code, out, _ = run(capsys, "selfcheck", "--precision", "30")
    assert code == 0, out


def test_corruption_message_names_symbol(capsys, tmp_path):
    text = default_data_path().read_text().splitlines()
    start = text.index("symbol q5")
    i = next(j for j in range(start, len(text)) if text[j].lstrip("-").isdigit())
    text[i] = str(int(text[i]) + 1)
    path = tmp_path / "bad.txt"
    path.write_text("\n".join(text) + "\n")
    code, out, _ = run(capsys, "selfcheck", "--data", str(path))
    assert code == 5
    assert "q5" in out
