"""Ideal-expression parser, report emitters, and CLI dispatch."""

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from hilbloc import cli
from hilbloc.cusp import cusp_ring
from hilbloc.parse import ParseError, parse_ideal_expr
from hilbloc.reports import Report, jsonable


# -- parser ------------------------------------------------------------------


def test_parse_round_trip_preserves_written_form():
    for text in ("x*y, y^2", "x^2 + 3*y", "y^3 - 1/2*x*y", "a*x + y^2",
                 "x", "2*x^10"):
        expr = parse_ideal_expr(text)
        assert expr.format() == text
        # reparsing the formatted text is stable
        assert parse_ideal_expr(expr.format()).format() == text


def test_parse_builds_ring_elements():
    R = cusp_ring(20)
    expr = parse_ideal_expr("x*y + 2*y^3, y^4")
    gens = expr.elements(R)
    assert len(gens) == 2
    assert gens[0].coefficient(1, 1) == R.coeff.from_rational(Fraction(1))
    assert gens[0].coefficient(0, 3) == R.coeff.from_rational(Fraction(2))


def test_parse_parameter_flag():
    assert parse_ideal_expr("a*x + y").has_parameter
    assert not parse_ideal_expr("x + y").has_parameter


def test_parse_errors_carry_offset():
    with pytest.raises(ParseError) as e:
        parse_ideal_expr("x^")
    assert e.value.offset == 2
    with pytest.raises(ParseError):
        parse_ideal_expr("x + + y")
    with pytest.raises(ParseError):
        parse_ideal_expr("")
    with pytest.raises(ParseError):
        parse_ideal_expr("z + y")


def test_exponent_cap():
    with pytest.raises(ParseError):
        parse_ideal_expr("x^999999")


# -- report emitters ---------------------------------------------------------


def test_jsonable_fractions():
    assert jsonable(Fraction(3, 2)) == "3/2"
    assert jsonable(Fraction(4, 2)) == 2
    assert jsonable({"a": [Fraction(1, 3)]}) == {"a": ["1/3"]}


def test_report_json_sorted_and_lf():
    r = Report(command=["colength"], config={"trunc": 16},
               payload={"b": 1, "a": 2})
    out = r.to_json()
    assert out.endswith("\n")
    assert "\r" not in out
    parsed = json.loads(out)
    assert parsed["results"] == {"a": 2, "b": 1}
    keys = list(parsed)
    assert keys == sorted(keys)


def test_report_tsv_two_lines():
    r = Report(command=["x"], config={"seed": 0},
               payload={"dims": [2, 3], "flag": True})
    lines = r.to_tsv().rstrip("\n").split("\n")
    assert len(lines) == 2
    header = lines[0].split("\t")
    values = lines[1].split("\t")
    assert len(header) == len(values)
    assert "true" in values


# -- CLI dispatch ------------------------------------------------------------


def run_cli(argv):
    report, code = cli.dispatch(argv)
    return report, code


def test_colength_command():
    report, code = run_cli(["colength", "x*y, y^2"])
    assert code == 0
    assert report.payload["colength"] == 3


def test_member_command():
    report, code = run_cli(["member", "x^2", "y^3"])
    assert code == 0
    assert report.payload["member"] is True


def test_classify_node():
    report, code = run_cli(["--ring", "node", "classify", "y^2 + 3*x^2"])
    assert code == 0
    assert report.payload["class"]["kind"] == "type-c"
    assert report.payload["class"]["m"] == 4


def test_global_flags_both_positions():
    a, ca = run_cli(["--trunc", "20", "colength", "y^2"])
    b, cb = run_cli(["colength", "--trunc", "20", "y^2"])
    assert ca == cb == 0
    assert a.payload == b.payload


def test_usage_error_exit_code():
    with pytest.raises(cli.UsageError):
        cli.dispatch(["colength"])  # missing ideal argument


def test_parse_error_becomes_exit_1():
    assert cli.main(["colength", "x^"]) == 1


def test_theorem_violation_exit_code(monkeypatch):
    # a certified violation inside a command maps to exit code 2
    from hilbloc import cusp

    def boom(*a, **k):
        raise cusp.TheoremViolationError("forced")

    monkeypatch.setattr(cli.cusp, "flat_limit_certify", boom)
    code = cli.main(["limit", "--m", "1", "--k", "1", "--direction", "0"])
    assert code == 2


def test_resource_cap_exit_code():
    # this chain's model has an equation but the cap forbids the check
    code = cli.main(["--max-vars", "3", "lci-check", "--m", "5",
                     "--chain", "3,3,2"])
    assert code == 3


def test_determinism_byte_identical(capsys):
    argv = ["--seed", "5", "flag-validate", "--m", "4",
            "--chain", "2,2", "--trials", "3"]
    cli.main(argv)
    first = capsys.readouterr().out
    cli.main(argv)
    second = capsys.readouterr().out
    assert first == second
    assert first  # non-empty


def test_seed_env_override(monkeypatch):
    monkeypatch.setenv("HILBLOC_SEED", "9")
    report, _ = run_cli(["strata", "--m", "3", "--depth", "2"])
    assert report.config["seed"] == 9
    monkeypatch.delenv("HILBLOC_SEED")
    report2, _ = run_cli(["strata", "--m", "3", "--depth", "2"])
    assert report2.config["seed"] == 0


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "hilbloc.cli",
                          "colength", "y^2"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["results"]["colength"] == 4
