import io
import json
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import H, d, derivations, endo, polynomials, tame_maps, x
from derauto.cli import main
from derauto.parsing import ParseError, format_derivation, parse, parse_deriv, parse_endo, parse_poly

x1, x2 = x(2, 1), x(2, 2)


def test_parse_examples():
    assert parse("poly", "x1^2*x2 - 1/2", 2) == x1 ** 2 * x2 - Fraction(1, 2)
    assert parse("deriv", "d1 + x1*d2", 2) == d(2, 1) + x1 * d(2, 2)
    assert parse("endo", "x1 -> x1 + x2^2", 2) == endo(x1 + x2 ** 2, x2)


def test_parse_variants():
    assert parse_poly("-(x1 + 2)^2", 2) == -(x1 + 2) ** 2
    assert parse_poly(" 3 / 6 * x2 ", 2) == x2 / 2
    assert parse_deriv("x1*d1", 2) == H(2, 1)
    assert parse_deriv("(x1 + x2)*d1 - 2*d2", 2) == (x1 + x2) * d(2, 1) - d(2, 2) * 2
    assert parse_deriv("0", 2).is_zero()
    assert parse_endo("x2 -> x1; x1 -> x2;", 2) == endo(x2, x1)


@pytest.mark.parametrize("kind,text", [
    ("poly", "x3"),
    ("poly", "x1 +"),
    ("poly", "1/0"),
    ("poly", "1/"),
    ("poly", "x1 $ x2"),
    ("poly", "(x1"),
    ("deriv", "x1"),
    ("deriv", "d1 + x1"),
    ("deriv", "d1*d2"),
    ("deriv", "d1^2"),
    ("endo", "x1 -> x2; x1 -> x1"),
    ("endo", "x1 -> d1"),
])
def test_parse_errors(kind, text):
    with pytest.raises(ParseError):
        parse(kind, text, 2)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_poly("x1 + x5", 2)
    assert info.value.position == 5


def test_derivation_printing():
    assert format_derivation(d(2, 2)) == "d2"
    assert format_derivation(-2 * x2 * d(2, 1) + d(2, 2)) == "-2*x2*d1 + d2"
    assert format_derivation((x1 + x2) * d(2, 1)) == "(x1 + x2)*d1"
    assert format_derivation(d(2, 1) * Fraction(-1, 3)) == "-1/3*d1"


@given(polynomials(n=3))
def test_poly_roundtrip(p):
    assert parse_poly(str(p), 3) == p


@given(derivations(n=3))
def test_deriv_roundtrip(e):
    assert parse_deriv(str(e), 3) == e


@given(tame_maps(n=3))
def test_endo_roundtrip(s):
    assert parse_endo(str(s), 3) == s


def run(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_cli_bracket():
    assert run("bracket", "d1", "x1*d2", "-n", "2") == (0, "d2\n", "")


def test_cli_recover_json():
    code, out, _ = run("recover", "d1", "-2*x2*d1 + d2", "-n", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"ok", "result", "degree_bound_used", "trace"}
    assert data["ok"] and data["degree_bound_used"] == 8
    assert data["result"]["sigma"] == {"x1": "x1 + x2^2", "x2": "x2"}
    assert [t["branch"] for t in data["trace"]] == ["maximal", "base"]


def test_cli_output_is_deterministic():
    args = ("roundtrip", "x1 -> x1 + x2^2 + x3; x3 -> x3 + x1", "-n", "3", "--format", "json")
    assert run(*args) == run(*args)


def test_cli_lnd_check():
    code, _, err = run("lnd-check", "x1*d1", "-n", "1")
    assert code == 1 and "not locally nilpotent within cap 32" in err
    code, out, _ = run("lnd-check", "d1 + x1*d2", "-n", "2")
    assert code == 0 and "x1: 2, x2: 3" in out


def test_cli_hypothesis_failures_exit_1():
    code, _, err = run("recover", "d1", "d1", "-n", "2")
    assert code == 1 and "common kernel too large" in err
    code, _, err = run("recover", "d1", "x1*d2", "-n", "2")
    assert code == 1 and "not commuting" in err
    code, _, err = run("recover", "x1*d1", "d2", "-n", "2")
    assert code == 1 and "not LND" in err
    code, _, err = run("invert", "x1 -> x1^2", "-n", "1")
    assert code == 1 and "not invertible" in err


def test_cli_usage_errors_exit_2():
    assert run("bracket", "d1 +", "d2", "-n", "2")[0] == 2
    assert run("bracket", "d3", "d2", "-n", "2")[0] == 2
    assert run("bracket", "d1", "-n", "2")[0] == 2
    assert run("frobnicate", "-n", "2")[0] == 2
    assert run("bracket", "d1", "d2")[0] == 2


def test_cli_bound_exceeded_exit_3_and_retry():
    code, _, err = run("invert", "x1 -> x1 + x2^5", "-n", "2", "--max-deg", "2")
    assert code == 3 and "degree bound exceeded" in err
    code, out, _ = run("invert", "x1 -> x1 + x2^5", "-n", "2", "--max-deg", "2",
                       "--retry-doubling", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["degree_bound_used"] == 8
    assert data["result"]["inverse"] == {"x1": "x1 - x2^5", "x2": "x2"}
    code, out, _ = run("invert", "x1 -> x1 + x2^9", "-n", "2", "--max-deg", "1",
                       "--retry-doubling", "--format", "json")
    assert code == 3 and json.loads(out)["ok"] is False


def test_cli_stdin_placeholder():
    code, out, _ = run("conjugate", "-", "d2", "-n", "2", stdin="x1 -> x1 + x2^2\n")
    assert (code, out) == (0, "-2*x2*d1 + d2\n")
    code, out, _ = run("bracket", "-", "-", "-n", "2", stdin="d1\nx1*d2\n")
    assert (code, out) == (0, "d2\n")


def test_cli_other_commands():
    assert run("apply", "x1*d1", "x1^3*x2", "-n", "2")[1] == "3*x1^3*x2\n"
    assert run("grade", "x1*d1 + x1^2*d1", "-n", "2")[1] == "(0, 0): x1*d1\n(1, 0): x1^2*d1\n"
    assert run("jacobian", "x1 -> x1 + x2^2", "-n", "2")[1] == "[1, 0]\n[2*x2, 1]\n"
    assert run("det", "x1 -> x1^2", "-n", "1")[1] == "2*x1\n"
    assert run("kernel", "d1", "-n", "2", "--max-deg", "2")[1] == "1\nx2\nx2^2\n"
    assert run("common-kernel", "d1", "d2", "-n", "2")[1] == "1\n"
    assert run("slice", "d1 + x1*d2", "-n", "2", "--seed", "x2")[1] == "x1\n"
    code, out, _ = run("verify-lemmas", "-n", "2", "--max-deg", "3", "--samples", "2")
    assert code == 0 and out.count("PASS") == 7


def test_cli_leading_minus_expressions():
    assert run("apply", "-d1", "x1", "-n", "1")[1] == "-1\n"
    assert run("apply", "-2*d1", "x1^2", "-n", "1")[1] == "-4*x1\n"
    assert run("apply", "-n", "1", "--", "-d1", "x1")[1] == "-1\n"
