import io
import subprocess
import sys

import pytest

from symshift.cli import run

SHIFTS = """
shift golden { alphabet = 0 1; forbid = "11"; }
shift even { alphabet = 0 1; regex = "(1(00)*)*"; }
shift full3 { alphabet = 0 1 2; forbid = ; }
code flip3 { domain = full3; memory = 0; anticipation = 1;
  rule "00" -> 0; rule "01" -> 0; rule "02" -> 0;
  rule "10" -> 2; rule "11" -> 1; rule "12" -> 1;
  rule "20" -> 1; rule "21" -> 2; rule "22" -> 2; }
code ident { domain = golden; memory = 0; anticipation = 0; rule "0" -> 0; rule "1" -> 1; }
"""


@pytest.fixture
def defs(tmp_path):
    path = tmp_path / "defs.shift"
    path.write_text(SHIFTS)
    return str(path)


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def records(text):
    return text.split("---\n", 1)[1].splitlines()


def test_entropy(defs):
    code, out, _ = call("entropy", defs, "--shift", "golden")
    assert code == 0
    assert records(out) == ["entropy=0.694242 bracket=1e-09"]


def test_check_fails_on_even_shift(defs):
    code, out, _ = call("check", defs, "--shift", "even", "--scope", "two")
    assert code == 1
    assert records(out)[0] == "hypotheses=fail witness=0 reason=not_synchronizing"


def test_check_passes_on_golden_mean(defs):
    for scope in ("two", "one"):
        code, out, _ = call("check", defs, "--shift", "golden", "--scope", scope)
        assert code == 0
        assert records(out)[0] == "hypotheses=pass"


def test_orbits(defs):
    code, out, _ = call("orbits", defs, "--shift", "golden", "--max", "3")
    assert code == 0
    assert records(out) == ["orbits=3 max=3", "orbit=0 period=1", "orbit=01 period=2", "orbit=001 period=3"]


def test_apply(defs):
    code, out, _ = call("apply", defs, "--code", "flip3", "--point", "[0]^-inf 1 [0]^inf @0")
    assert code == 0
    assert records(out) == ["image=[0]^-inf 2 [0]^inf @0"]


def test_apply_outside_domain(defs):
    code, out, _ = call("apply", defs, "--code", "ident", "--point", "[1]^-inf [1]^inf")
    assert code == 1
    assert records(out) == ["in_domain=false"]


def test_example_verb_reports_phase_obstruction():
    code, out, _ = call("example", "5.2")
    assert code == 0
    assert "verdict=obstruction period_in=1 period_out=2 windows=2" in records(out)[0]


@pytest.mark.parametrize("name", ["5.1", "5.3", "5.4", "5.5"])
def test_example_verb_finds_every_obstruction(name):
    code, out, _ = call("example", name, "--scale-max", "4")
    assert code == 0
    assert records(out)[0].startswith("verdict=obstruction")


def test_extend_code_oracle(defs):
    code, out, _ = call("extend", defs, "--oracle", "code:flip3", "--period-max", "3", "--scale-max", "4")
    assert code == 0
    assert records(out)[0].startswith("verdict=extended orbits=")


def test_extend_builtin(defs):
    code, out, _ = call("extend", "--oracle", "example:5.2", "--scale-max", "2")
    assert code == 1
    assert records(out)[0].startswith("verdict=obstruction")


def test_roundtrip(defs):
    code, out, _ = call("roundtrip", defs, "--code", "flip3", "--inverse", "flip3", "--period-max", "3")
    assert code == 0
    assert records(out) == ["roundtrip=true"]


def test_output_is_byte_stable(defs):
    first = call("example", "5.1", "--scale-max", "4")
    second = call("example", "5.1", "--scale-max", "4")
    assert first == second


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.shift"
    bad.write_text('\nshift x { alphabet = 0 1; forbid = "12"; }\n')
    code, out, err = call("entropy", str(bad))
    assert code == 2
    assert "line 2" in err and out == ""


def test_missing_file_and_unknown_names(defs, tmp_path):
    assert call("entropy", str(tmp_path / "none.shift"))[0] == 2
    assert call("entropy", defs, "--shift", "nothing")[0] == 2
    assert call("example", "6.1")[0] == 2
    assert call("apply", defs, "--code", "ident", "--point", "garbage")[0] == 2


def test_bad_arguments():
    assert call("frobnicate")[0] == 2
    assert call()[0] == 2


def test_environment_budget(defs, monkeypatch):
    monkeypatch.setenv("SYMSHIFT_PERIOD_MAX", "2")
    code, out, _ = call("extend", defs, "--oracle", "code:flip3", "--scale-max", "4")
    assert code == 0
    assert "period_max=2" in records(out)[0]


def test_module_entry_point(defs):
    proc = subprocess.run(
        [sys.executable, "-m", "symshift", "entropy", defs, "--shift", "golden"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.rstrip().endswith("entropy=0.694242 bracket=1e-09")
