import json
import shutil
import subprocess
from importlib import resources

import jsonschema
import pytest

from jordanfib.cli import clip_digits, main, run
from jordanfib.suites import suite_text

SCHEMA = json.loads((resources.files("jordanfib") / "schemas" / "report.schema.json").read_text(encoding="utf-8"))
VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def classic_file(tmp_path):
    f = tmp_path / "classic.idn"
    f.write_text(suite_text("classic"), encoding="utf-8")
    return f


@pytest.fixture
def jacobsthal_bfile(tmp_path):
    f = tmp_path / "b001045.txt"
    a, b, rows = 0, 1, []
    for i in range(40):
        rows.append(f"{i} {a}")
        a, b = b, b + 2 * a
    f.write_text("# A001045\n" + "\n".join(rows) + "\n", encoding="utf-8")
    return f


def test_power_examples(capsys):
    code, out, _ = cli(capsys, "power", "--family", "F1", "--n", "10")
    assert code == 0 and "[[89, 55], [55, 34]]" in out and out.rstrip().endswith("MATCH")
    code, out, _ = cli(capsys, "power", "--family", "M1", "--n", "4")
    assert code == 0 and "[[5, 4], [-4, -3]]" in out
    code, out, _ = cli(capsys, "power", "--family", "F1", "--n", "0")
    assert code == 0 and "[[1, 0], [0, 1]]" in out and "MATCH" in out


def test_power_printed_mismatch_exits_1(capsys):
    code, out, _ = cli(capsys, "power", "--family", "G(b=3)", "--n", "5", "--form", "printed")
    assert code == 1 and "MISMATCH" in out


def test_verify_classic(capsys, classic_file):
    code, out, _ = cli(capsys, "verify", "--file", str(classic_file), "--grid", "n=1..30,m=1..30")
    assert code == 0 and out.count("VERIFIED   [anchor]") == 10
    assert "10 VERIFIED, 0 FAILED" in out


def test_verify_failure_exits_1(capsys, tmp_path):
    f = tmp_path / "bad.idn"
    f.write_text("params n;\nF(n)^2+F(n+1)^2 == F(2*n)\n", encoding="utf-8")
    code, out, _ = cli(capsys, "verify", "--file", str(f))
    assert code == 1 and "counterexample n=1" in out


def test_derive_example(capsys):
    code, out, _ = cli(capsys, "derive", "--template", "J1", "--a", "F1", "--b", "I", "--grid", "n=1..20,m=1..20")
    assert code == 0
    assert "F(m)*F(n)+F(m+1)*F(n+1) == F(m+n+1)" in out
    assert out.count("VERIFIED ") == 4


def test_derive_with_substitution(capsys):
    code, out, _ = cli(capsys, "derive", "--template", "J1", "--a", "L", "--b", "X", "--subst", "m=n",
                       "--grid", "n=1..10")
    assert code == 0 and "substitution: m=n" in out and "x" in out


def test_suite_exit_codes(capsys):
    code, out, _ = cli(capsys, "suite", "classic")
    assert code == 0 and "discrepancy ledger: empty" in out
    code, out, _ = cli(capsys, "suite", "pell")
    assert code == 0 and "pell part 21 FAILED" in out and "[VERIFIED]" in out


def test_oeis(capsys, jacobsthal_bfile, tmp_path):
    code, out, _ = cli(capsys, "oeis", "--name", "jacobsthal", "--bfile", str(jacobsthal_bfile))
    assert code == 0 and "MATCH" in out
    bad = tmp_path / "bad.txt"
    bad.write_text("0 0\n1 1\n2 2\n", encoding="utf-8")
    code, out, _ = cli(capsys, "oeis", "--name", "fibonacci", "--bfile", str(bad))
    assert code == 1 and "index 2" in out


def test_seq(capsys):
    code, out, _ = cli(capsys, "seq", "--name", "F", "--from", "-2", "--to", "10")
    assert code == 0 and out.splitlines()[1:] == [f"{i} {v}" for i, v in zip(range(-2, 11),
                                                    [-1, 1, 0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55])]
    code, out, _ = cli(capsys, "seq", "--name", "H", "--param", "k=1", "--j", "1", "--to", "3")
    assert code == 0 and out.splitlines()[-1] == "3 13"


@pytest.mark.parametrize("argv", [
    ["power", "--family", "Nope", "--n", "2"],
    ["power", "--family", "F1", "--n", "-1"],
    ["power", "--family", "I", "--n", "2"],
    ["power", "--family", "F1"],
    ["verify", "--file", "/does/not/exist.idn"],
    ["derive", "--template", "J9", "--a", "F1", "--b", "I"],
    ["derive", "--template", "Z1", "--a", "F1"],
    ["suite", "classic", "--grid", "n=5..1"],
    ["suite", "unknown"],
    ["seq", "--name", "H", "--param", "k=1"],
    ["seq", "--name", "G", "--param", "b=x"],
    ["power", "--family", "F1", "--n", "3", "--digits", "0"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = cli(capsys, *argv)
    assert code == 2 and err


def test_syntax_error_in_file_exits_2(capsys, tmp_path):
    f = tmp_path / "broken.idn"
    f.write_text("params n;\nF(n == 1\n", encoding="utf-8")
    code, _, err = cli(capsys, "verify", "--file", str(f))
    assert code == 2 and "2:5" in err


def test_json_outputs_validate(jacobsthal_bfile, classic_file):
    cases = [
        ["power", "--family", "T(k=3)", "--n", "7"],
        ["power", "--family", "S(k=2)", "--n", "3", "--form", "printed"],
        ["seq", "--name", "Fx", "--to", "6"],
        ["verify", "--file", str(classic_file)],
        ["derive", "--template", "K1", "--a", "F1", "--b", "T2", "--c", "L", "--grid", "n=1..6"],
        ["suite", "examples"],
        ["oeis", "--name", "J", "--bfile", str(jacobsthal_bfile)],
    ]
    for argv in cases:
        code, text, _ = run(argv + ["--format", "json"])
        doc = json.loads(text)
        VALIDATOR.validate(doc)
        assert doc["exit_code"] == code


def test_json_is_byte_identical():
    a = run(["suite", "all", "--format", "json"])[1]
    b = run(["suite", "all", "--format", "json", "--jobs", "3"])[1]
    assert a == b
    VALIDATOR.validate(json.loads(a))


def test_digits_truncation(capsys):
    code, out, _ = cli(capsys, "power", "--family", "F1", "--n", "200", "--digits", "5")
    assert code == 0 and "...[42 digits]" in out and "MATCH" in out
    assert clip_digits("F(12) = 123456789", 4) == "F(12) = 1234...[9 digits]"
    full = run(["seq", "--name", "F", "--from", "300", "--to", "300", "--format", "json"])[1]
    assert json.loads(full)["result"]["values"][0]["value"].isdigit()


def test_output_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, text, _ = cli(capsys, "suite", "tribonacci", "--format", "json", "-o", str(out))
    assert code == 0 and text == ""
    VALIDATOR.validate(json.loads(out.read_text(encoding="utf-8")))


@pytest.mark.skipif(shutil.which("jordanfib") is None, reason="console script not installed")
def test_console_script():
    p = subprocess.run(["jordanfib", "power", "--family", "F1", "--n", "10"], capture_output=True, text=True)
    assert p.returncode == 0 and "[[89, 55], [55, 34]]" in p.stdout
