import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import ratfuncs

from pigalois.algebra.cache import MemoCache
from pigalois.algebra.funcfield import (
    FunctionField,
    format_ratfunc,
    frobenius_assemble,
    frobenius_descent,
    is_pe_power,
    partial_derivative,
    ratfunc_normalize,
)
from pigalois.errors import ConfigError, DivisionByZero

F2 = FunctionField(2, ("x", "y"))
F3 = FunctionField(3, ("x", "y"))
F2_XYZ = FunctionField(2, ("x", "y", "z"))


def _vars(field):
    return [field.var(i) for i in range(field.nvars)]


# ---------------------------------------------------------------------------
# 规范形
# ---------------------------------------------------------------------------


def test_zero_numerator_normalizes_to_zero():
    x = F2.ring.gens[0]
    f = ratfunc_normalize(x**2 - x**2, F2.ring.one)
    assert f.is_zero()
    assert f.den == F2.ring.one


def test_denominator_reducing_to_zero_mod_p():
    x = F2.ring.gens[0]
    with pytest.raises(DivisionByZero):
        ratfunc_normalize(x * 2, F2.ring.one * 2)


def test_common_factor_cancels():
    x, y = F2.ring.gens
    f = ratfunc_normalize((x**2 + x) * y, x + 1)
    fx, fy = _vars(F2)
    assert f == fx * fy
    assert f.is_polynomial()


def test_denominator_is_monic():
    x, y = F3.ring.gens
    f = ratfunc_normalize(x, 2 * y + 1)
    assert f.den.LC == F3.domain.one


def test_non_prime_characteristic_rejected():
    with pytest.raises(ConfigError):
        FunctionField(4, ("x",))
    with pytest.raises(ConfigError):
        FunctionField(2, ("x", "x"))


def test_division_by_zero_element():
    x, _ = _vars(F2)
    with pytest.raises(DivisionByZero):
        x / F2.zero


# ---------------------------------------------------------------------------
# 偏导
# ---------------------------------------------------------------------------


def test_derivative_of_square_vanishes_in_char_2():
    x, _ = _vars(F2)
    assert partial_derivative(x**2, 0).is_zero()


def test_derivative_of_product():
    x, y = _vars(F2)
    assert partial_derivative(x * y, 0) == y


def test_derivative_of_inverse_in_char_2():
    x, _ = _vars(F2)
    assert partial_derivative(x.inverse(), 0) == (x**2).inverse()


def test_derivative_index_out_of_range():
    x, _ = _vars(F2)
    with pytest.raises(IndexError):
        partial_derivative(x, 5)


# ---------------------------------------------------------------------------
# Frobenius 下降
# ---------------------------------------------------------------------------


def test_descent_of_fourth_powers():
    x, y = _vars(F2)
    assert frobenius_descent(x**4 + y**4, 2) == {(0, 0): x + y}


def test_descent_of_cube():
    field = FunctionField(2, ("x",))
    x = field.var(0)
    assert frobenius_descent(x**3, 1) == {(1,): x}


def test_descent_of_fraction():
    field = FunctionField(2, ("x",))
    x = field.var(0)
    c = (x + 1).inverse()
    assert frobenius_descent(c, 1) == {(0,): c, (1,): c}


def test_descent_of_zero_is_empty():
    assert frobenius_descent(F2.zero, 1) == {}


def test_pe_power_detection():
    field = FunctionField(2, ("x",))
    x = field.var(0)
    assert is_pe_power(x**4, 2) == x
    assert is_pe_power(x**3, 1) is None
    x, y, z = _vars(F2_XYZ)
    assert is_pe_power((x**2 + y**2) / z**2, 1) == (x + y) / z


def test_derivative_drops_terms_killed_by_p():
    x, y = _vars(F2)
    d = partial_derivative(x**2 + x * y, 0)
    assert d == y
    assert len(d.num) == 1
    square = partial_derivative(x**2, 0)
    assert square.is_zero()
    assert square == F2.zero


def test_same_parameters_share_ring():
    again = FunctionField(2, ("x", "y"))
    assert again.ring is F2.ring
    assert again == F2
    assert again.var(0) * F2.var(1) == F2.var(0) * F2.var(1)


def test_format_is_canonical():
    x, y = _vars(F2)
    assert format_ratfunc(x**2 / (x + 1)) == "x^2/(x + 1)"
    assert format_ratfunc((x + y) / y**2) == "(x + y)/y^2"
    assert format_ratfunc(F2.zero) == "0"


# ---------------------------------------------------------------------------
# 性质
# ---------------------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(ratfuncs(F2))
def test_normalize_is_idempotent(f):
    assert ratfunc_normalize(f.num, f.den) == f


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([F2, F3]).flatmap(lambda field: st.tuples(ratfuncs(field), st.integers(0, 1))))
def test_derivative_kills_pth_powers(args):
    f, var = args
    assert partial_derivative(f.frobenius(1), var).is_zero()


@settings(max_examples=30, deadline=None)
@given(ratfuncs(F2), st.integers(1, 2))
def test_descent_reassembles(f, e):
    parts = frobenius_descent(f, e)
    assert len(parts) <= (2**e) ** 2
    assert frobenius_assemble(parts, e, F2) == f


@settings(max_examples=30, deadline=None)
@given(ratfuncs(F3), ratfuncs(F3))
def test_leibniz_rule(f, g):
    for var in (0, 1):
        lhs = partial_derivative(f * g, var)
        rhs = f * partial_derivative(g, var) + g * partial_derivative(f, var)
        assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(ratfuncs(F3), ratfuncs(F3, nonzero=True))
def test_field_operations_invert(f, g):
    assert (f * g) / g == f
    assert (f + g) - g == f


# ---------------------------------------------------------------------------
# 缓存
# ---------------------------------------------------------------------------


def test_memo_cache_evicts_oldest():
    cache = MemoCache("test", max_size=2)
    assert cache.get_or_compute("a", lambda: 1) == 1
    assert cache.get_or_compute("b", lambda: 2) == 2
    assert cache.get_or_compute("a", lambda: 99) == 1
    cache.get_or_compute("c", lambda: 3)
    # "b" 最久未用,已被淘汰
    assert cache.get_or_compute("b", lambda: 20) == 20
    stats = cache.get_cache_stats()
    assert stats["hits"] == 1
    assert stats["cache_size"] == 2
    cache.clear()
    assert cache.get_cache_stats()["cache_size"] == 0
