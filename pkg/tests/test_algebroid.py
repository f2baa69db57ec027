import pytest

from pigalois.errors import NotADerivation, NotInField
from pigalois.fields.tower import compositum, frobenius_image, triangular_presentation
from pigalois.lie.algebroid import (
    algebroid_from,
    derivations_vanishing_on,
    fixed_field,
    restricted_closure,
)
from pigalois.lie.derivations import Derivation, apply_derivation, bracket, derivation_module, p_power


@pytest.fixture
def module(exponent_one_pair):
    return derivation_module(exponent_one_pair.F, exponent_one_pair.K)


def _partials(module):
    dx, dy = module.basis
    return dx, dy


# ---------------------------------------------------------------------------
# 导子模
# ---------------------------------------------------------------------------


def test_module_of_exponent_one_pair(module, exponent_one_pair):
    field = exponent_one_pair.ambient.field
    assert module.dim == 2
    assert [D.values for D in module.basis] == [(field.one, field.zero), (field.zero, field.one)]


def test_module_with_nonzero_jacobian(jacobian_pair):
    x, y = jacobian_pair.var(0), jacobian_pair.var(1)
    pres = triangular_presentation(jacobian_pair.F, jacobian_pair.K, gens=[x, y])
    m = derivation_module(jacobian_pair.F, jacobian_pair.K, pres)
    field = jacobian_pair.ambient.field
    assert m.dim == 1
    assert m.basis[0].values == (field.zero, field.one)
    with pytest.raises(NotADerivation):
        m.derivation([field.one, field.zero])


def test_trivial_extension_has_no_derivations(exponent_one_pair):
    assert derivation_module(exponent_one_pair.K, exponent_one_pair.K).dim == 0


def test_derivation_values_must_lie_in_f(sweedler_pair):
    m = derivation_module(sweedler_pair.F, sweedler_pair.K)
    x = sweedler_pair.var(0)
    with pytest.raises(NotInField):
        m.derivation([x, x])


def test_apply_derivation(module, exponent_one_pair):
    _, dy = _partials(module)
    x, y = exponent_one_pair.var(0), exponent_one_pair.var(1)
    assert apply_derivation(dy, x * y**2).is_zero()
    assert dy(x / y) == x / y**2
    assert dy(x**2 + y**2).is_zero()


def test_bracket(module, exponent_one_pair):
    dx, dy = _partials(module)
    x = exponent_one_pair.var(0)
    assert bracket(dx, dy * x) == dy
    D = dx + dy * x
    assert bracket(D, D).is_zero()


def test_bracket_is_antisymmetric_in_char_3(exponent_one_pair_p3):
    m = derivation_module(exponent_one_pair_p3.F, exponent_one_pair_p3.K)
    dx, dy = m.basis
    x, y = exponent_one_pair_p3.var(0), exponent_one_pair_p3.var(1)
    D1, D2 = dx * y, dy * (x * x)
    assert bracket(D1, D2) == -bracket(D2, D1)
    assert p_power(dx * x) == dx * x


def test_p_power(module, exponent_one_pair):
    dx, dy = _partials(module)
    x = exponent_one_pair.var(0)
    assert p_power(dx).is_zero()
    assert p_power(dy * x).is_zero()
    assert p_power(dx * x) == dx * x


def test_derivation_is_value_equal(module, exponent_one_pair):
    dx, _ = _partials(module)
    field = exponent_one_pair.ambient.field
    assert Derivation(module.pres, [field.one, field.zero]) == dx
    assert dx.format() == ["1", "0"]


# ---------------------------------------------------------------------------
# 限制闭包与不动域
# ---------------------------------------------------------------------------


def test_restricted_closure_dims(module, exponent_one_pair):
    dx, dy = _partials(module)
    x = exponent_one_pair.var(0)
    assert restricted_closure([dx], module).dim == 1
    assert restricted_closure([dx, dy * x], module).dim == 2
    assert restricted_closure([], module).dim == 0


def test_span_reports_closure_flags(module, exponent_one_pair):
    dx, dy = _partials(module)
    x = exponent_one_pair.var(0)
    # (∂x + x∂y)^[2] = ∂y 不在 F·(∂x + x∂y) 中
    D = dx + dy * x
    g = algebroid_from(module, [D])
    assert g.dim == 1
    assert g.bracket_closed
    assert not g.p_closed
    assert restricted_closure([D], module).dim == 2
    assert algebroid_from(module, [dx, dy * x, dx]).closed


def test_fixed_fields(module, exponent_one_pair):
    F, K = exponent_one_pair.F, exponent_one_pair.K
    dx, dy = _partials(module)
    x = exponent_one_pair.var(0)
    assert fixed_field(restricted_closure([], module)) == F
    assert fixed_field(restricted_closure([dy], module)) == K.adjoin([x])
    assert fixed_field(restricted_closure(list(module.basis), module)) == K


def test_derivations_vanishing_on(module, exponent_one_pair):
    F, K = exponent_one_pair.F, exponent_one_pair.K
    _, dy = _partials(module)
    x = exponent_one_pair.var(0)
    assert derivations_vanishing_on(K, F, K, module).dim == 2
    assert derivations_vanishing_on(F, F, K, module).dim == 0
    g = derivations_vanishing_on(K.adjoin([x]), F, K, module)
    assert g == restricted_closure([dy], module)


def test_galois_round_trip_on_sweedler(sweedler_pair):
    F, K = sweedler_pair.F, sweedler_pair.K
    m = derivation_module(F, K)
    g = restricted_closure(list(m.basis), m)
    assert g.dim == m.dim == 2
    # 指数 2 时 Der_K(F) 的不动域严格大于 K
    fixed = fixed_field(g)
    assert fixed.contains_field(K)
    assert fixed != K


@pytest.mark.parametrize(
    "extra",
    [lambda x, y, z: [], lambda x, y, z: [z], lambda x, y, z: [x * z + y]],
    ids=["K", "K(z)", "K(xz+y)"],
)
def test_fixed_field_of_der_e_is_compositum_with_frobenius(sweedler_pair, extra):
    F, K = sweedler_pair.F, sweedler_pair.K
    E = K.adjoin(extra(*(sweedler_pair.var(i) for i in range(3))))
    m = derivation_module(F, K)
    fixed = fixed_field(derivations_vanishing_on(E, F, K, m))
    assert fixed == compositum(E, frobenius_image(F, 1))
    assert fixed.contains_field(E)
