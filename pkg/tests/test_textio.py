import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixprop.exceptions import (AtomOutsideDomainError, ParseError, TupleArityError,
                                UnknownVariableError, VariableOrderError)
from fixprop.oracle import random_csp
from fixprop.textio import format_csp, parse_csp


def test_example1_c1():
    p = parse_csp("var x in {a,b}\nvar y in {c,d}\ncon on (x,y) {(a,c),(b,d)}\n")
    (c,) = p.constraints
    assert c.vars == ("x", "y") and c.tuples == {("a", "c"), ("b", "d")}


def test_empty_file():
    p = parse_csp("")
    assert p.variables == () and format_csp(p) == ""
    assert parse_csp("# nothing\n\n").n == 0


def test_crossword_file(crossword):
    assert crossword.n == 8 and len(crossword.constraints) == 12
    c12 = crossword.constraints[0]
    assert c12.name == "C1_2"
    assert c12.tuples == {("HOSES", "SAILS"), ("HOSES", "SHEET"), ("HOSES", "STEER"),
                          ("LASER", "SAILS"), ("LASER", "SHEET"), ("LASER", "STEER")}


def test_multiline_con_and_comments():
    p = parse_csp("var x in {a, b}  # first\nvar y in {c}\ncon K on (x, y) {\n  (a, c),\n"
                  "  (b, c)  # last\n}\n")
    assert p.constraints[0].name == "K" and len(p.constraints[0].tuples) == 2


@pytest.mark.parametrize("text, kind, line", [
    ("var x in {a}\ncon on (x, q) {}\n", UnknownVariableError, 2),
    ("var x in {a}\nvar y in {b}\ncon on (y, x) {(b, a)}\n", VariableOrderError, 3),
    ("var x in {a}\nvar y in {b}\ncon on (x, y) {\n(a, b),\n(a)}\n", TupleArityError, 5),
    ("var x in {a}\nvar y in {b}\n\ncon on (x, y) {(a, z)}\n", AtomOutsideDomainError, 4),
    ("var x in {a}\nvar x in {b}\n", ParseError, 2),
    ("var x in {a\n", ParseError, 1),
    ("variable x\n", ParseError, 1),
])
def test_parse_errors(text, kind, line):
    with pytest.raises(kind) as err:
        parse_csp(text)
    assert err.value.line == line and str(err.value).startswith(f"line {line}: ")


def test_error_kinds_are_distinct():
    kinds = {UnknownVariableError, VariableOrderError, TupleArityError, AtomOutsideDomainError}
    assert all(issubclass(k, ParseError) for k in kinds)
    assert len({k for k in kinds for j in kinds if k is not j and issubclass(k, j)}) == 0


def test_canonical_printing(example1):
    assert format_csp(example1) == ("var x in {a, b}\nvar y in {c, d}\n"
                                    "con C1 on (x, y) {(a, c), (b, d)}\n"
                                    "con C2 on (x, y) {(a, d)}\n")


@settings(max_examples=200)
@given(st.integers(0, 2**32 - 1))
def test_print_parse_roundtrip(seed):
    p = random_csp(random.Random(seed), ternary=0.3, duplicates=0.3)
    text = format_csp(p)
    assert parse_csp(text) == p
    assert format_csp(parse_csp(text)) == text
