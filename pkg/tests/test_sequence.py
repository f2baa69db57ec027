import pytest

from pigalois.errors import NotATower
from pigalois.fields.tower import AmbientField
from pigalois.galois.sampling import random_tower
from pigalois.homology.sequence import direct_sum_compare, euler_check, six_term, tower_maps
from pigalois.lie.axioms import trial_rng


def test_frobenius_tower_is_exact(frobenius_pair):
    seq = six_term(frobenius_pair.F, frobenius_pair.E, frobenius_pair.K)
    assert seq.dims == (1, 1, 1, 1, 1, 1)
    assert seq.exact
    assert euler_check(seq)
    # π₁(L_{F/K}) → π₁(L_{F/E}) 为零,连接映射非零
    assert seq.is_zero(1)
    assert not seq.is_zero(2)


def test_compatible_presentation_extends_lower_one(frobenius_pair):
    maps = tower_maps(frobenius_pair.F, frobenius_pair.E, frobenius_pair.K)
    assert maps.m == 1
    assert maps.pres_F.gens[:1] == maps.pres_E.gens
    assert maps.pres_FE.n == maps.pres_F.n - maps.m


def test_degenerate_towers(exponent_one_pair):
    F, K = exponent_one_pair.F, exponent_one_pair.K
    low = six_term(F, K, K)
    assert low.dims == (0, 2, 2, 0, 2, 2)
    assert low.exact
    high = six_term(F, F, K)
    assert high.dims == (2, 2, 0, 2, 2, 0)
    assert high.exact


def test_euler_check_on_raw_dims():
    assert euler_check((1, 1, 1, 1, 1, 1))
    assert not euler_check((1, 1, 1, 1, 1, 2))


def test_not_a_tower(exponent_one_pair):
    ambient = exponent_one_pair.ambient
    Ex = ambient.base().adjoin([ambient.var(0)])
    Ey = ambient.base().adjoin([ambient.var(1)])
    with pytest.raises(NotATower):
        six_term(Ex, Ey, ambient.base())


@pytest.mark.parametrize("index", range(6))
def test_random_towers_are_exact(index):
    ambient = AmbientField(2, ("x", "y"), 2)
    F, E, K = random_tower(ambient, trial_rng(7, index, "six_term"))
    seq = six_term(F, E, K)
    assert seq.exact, seq.dims
    assert euler_check(seq)


def test_direct_sum_of_modular_parts(modular_pair):
    x, y = modular_pair.var(0), modular_pair.var(1)
    K = modular_pair.K
    report = direct_sum_compare(modular_pair.F, K, [K.adjoin([x]), K.adjoin([y])])
    assert report.pi0.source_dims == (1, 1)
    assert report.pi0.target_dim == 2
    assert report.isomorphic


def test_direct_sum_fails_for_sweedler(sweedler_pair):
    x, y, z = (sweedler_pair.var(i) for i in range(3))
    K = sweedler_pair.K
    report = direct_sum_compare(sweedler_pair.F, K, [K.adjoin([x * z + y]), K.adjoin([z])])
    assert not report.isomorphic
