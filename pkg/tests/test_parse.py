"""Polynomial and system-file text format."""

import cmath
import random

import pytest
from hypothesis import given, settings, strategies as st

from helios.parse import (
    ParseError,
    format_polynomial,
    format_system,
    parse_polynomial,
    parse_system,
    read_system_file,
    write_system_file,
)
from helios.poly import Polynomial, Term, degree


def test_parse_bilinear():
    p = parse_polynomial("x*y + x + y + 1;")
    assert len(p.terms) == 4
    assert degree(p) == 2
    assert p.variables == ("x", "y")


def test_parse_quartic():
    p = parse_polynomial("x**2*y**2 + x + y;")
    assert len(p.terms) == 3
    assert degree(p) == 4


def test_parse_imaginary_coefficient():
    p = parse_polynomial("3*i*x - 1;")
    by_exps = {t.exponents: t.coefficient for t in p.terms}
    assert by_exps[(1,)] == 3j
    assert by_exps[(0,)] == -1


def test_parse_caret_power_and_given_variables():
    p = parse_polynomial("x^3 + y;", variables=("x", "y", "z"))
    assert p.variables == ("x", "y", "z")
    assert degree(p) == 3


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_polynomial("x + y")  # missing terminator
    with pytest.raises(ParseError):
        parse_polynomial("x @ y;")  # unknown character
    with pytest.raises(ParseError):
        parse_polynomial("x**0 + 1;")  # exponent must be >= 1
    with pytest.raises(ParseError):
        parse_polynomial("x**2.5;")
    with pytest.raises(ParseError):
        parse_polynomial("x + w;", variables=("x", "y"))


def test_format_canonical_order():
    assert format_polynomial(parse_polynomial("y + x;")) == "x + y;"
    text = "x**2*y**2 + x + y;"
    assert format_polynomial(parse_polynomial(text)) == text
    assert format_polynomial(parse_polynomial("x*y + x + y + 1;")) == "x*y + x + y + 1;"


def test_format_signs_and_units():
    assert format_polynomial(parse_polynomial("-x + 1;")) == "-x + 1;"
    assert format_polynomial(parse_polynomial("3*i*x - 1;")) == "3*i*x - 1;"
    assert format_polynomial(parse_polynomial("0;")) == "0;"


def _random_canonical(rng: random.Random) -> Polynomial:
    n = rng.randint(1, 4)
    variables = tuple(f"v{i}" for i in range(n))
    exponents = set()
    while len(exponents) < rng.randint(1, 6):
        exponents.add(tuple(rng.randint(0, 5) for _ in range(n)))
    terms = []
    for exps in exponents:
        angle = rng.uniform(0, 2 * cmath.pi)
        terms.append(Term(cmath.exp(1j * angle), exps))
    return Polynomial(variables, tuple(terms))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_round_trip_random_polynomials(seed):
    p = _random_canonical(random.Random(seed))
    assert parse_polynomial(format_polynomial(p), p.variables) == p


def test_whitespace_insensitive():
    base = parse_polynomial("x**2*y**2 + x + y;")
    spaced = parse_polynomial("x \n ** 2 * y**2\n\t + x + y ;")
    assert spaced == base


def test_parse_system_two_equations():
    s = parse_system("2\n x**2*y**2 + x + y;\n x*y + x + y + 1;")
    assert s.n_equations == 2
    assert s.variables == ("x", "y")


def test_parse_system_underdetermined():
    s = parse_system("1 2\n x + y;")
    assert s.n_equations == 1
    assert s.n_variables == 2


def test_parse_system_count_mismatch():
    with pytest.raises(ParseError):
        parse_system("2\n x;")


def test_parse_system_variable_count_mismatch():
    with pytest.raises(ParseError):
        parse_system("2 3\n x + y;\n x - y;")


def test_parse_error_carries_position():
    try:
        parse_system("2\n x + y;\n x + @;")
    except ParseError as exc:
        assert exc.line == 3
        assert exc.column >= 5
    else:
        pytest.fail("expected a parse error")


def test_system_file_round_trip(tmp_path):
    s = parse_system("2\n x**2*y**2 + x + y;\n x*y + x + y + 1;")
    path = tmp_path / "sys.txt"
    write_system_file(s, path)
    assert read_system_file(path) == s
    text = path.read_text()
    assert text.startswith("2\n")
    assert text.endswith("\n")


def test_format_system_rectangular_header():
    s = parse_system("1 2\n x + y;")
    assert format_system(s).splitlines()[0] == "1 2"
