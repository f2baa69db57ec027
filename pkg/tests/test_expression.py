import pytest
from hypothesis import given, settings
from strategies import ratfuncs

from pigalois.algebra.funcfield import FunctionField
from pigalois.errors import ParseError, SpecError, UnknownVariable, ZeroDenominator
from pigalois.io.expression import format_expression, parse_expression, parse_many, tokenize

F2 = FunctionField(2, ("x", "y", "z"))
F3 = FunctionField(3, ("x", "y"))


def test_parse_sweedler_generators():
    x, y, z = (F2.var(i) for i in range(3))
    assert parse_many(["x*z+y", "z", "x^2"], F2) == [x * z + y, z, x**2]


def test_integers_reduce_mod_p():
    x = F2.var(0)
    assert parse_expression("3*x + 2", F2) == x
    assert parse_expression("x^0", F2) == F2.one


def test_unary_minus_binds_looser_than_power():
    x = F3.var(0)
    assert parse_expression("-x^2", F3) == -(x**2)
    assert parse_expression("-x^2", F3) == F3.const(2) * x**2


def test_parentheses_and_division():
    x, y = F3.var(0), F3.var(1)
    assert parse_expression("(x + y)/(x*y)", F3) == (x + y) / (x * y)
    assert parse_expression("x/y/x", F3) == y.inverse()


@pytest.mark.parametrize(
    "text, position",
    [
        ("x + * y", 4),
        ("(x", 2),
        ("x^", 2),
        ("x y", 2),
        ("x $", 2),
        ("x^y", 2),
    ],
)
def test_syntax_errors_carry_position(text, position):
    with pytest.raises(ParseError) as info:
        parse_expression(text, F3)
    assert info.value.position == position


def test_parse_errors_are_spec_errors():
    with pytest.raises(SpecError):
        parse_expression("x +", F3)


def test_unknown_variable():
    with pytest.raises(UnknownVariable) as info:
        parse_expression("x + w", F3)
    assert info.value.name == "w"
    assert info.value.position == 4


def test_zero_denominator():
    with pytest.raises(ZeroDenominator) as info:
        parse_expression("x/(2)", F2)
    assert info.value.exit_code == 2
    with pytest.raises(ZeroDenominator):
        parse_expression("1/(x - x)", F3)


def test_tokenize_positions():
    tokens = tokenize("  x^2")
    assert [(t.kind, t.text, t.position) for t in tokens] == [
        ("name", "x", 2),
        ("op", "^", 3),
        ("int", "2", 4),
        ("end", "", 5),
    ]


@settings(max_examples=40, deadline=None)
@given(ratfuncs(F3))
def test_format_then_parse_is_identity(f):
    assert parse_expression(format_expression(f), F3) == f


@settings(max_examples=40, deadline=None)
@given(ratfuncs(F2))
def test_format_then_parse_is_identity_char_2(f):
    assert parse_expression(format_expression(f), F2) == f
