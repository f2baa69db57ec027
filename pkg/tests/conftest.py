import pytest
from helpers import Pair, sweedler

from pigalois.fields.tower import AmbientField


@pytest.fixture
def frobenius_pair() -> Pair:
    """F2(x) / F2(x^4),中间域 F2(x^2)"""
    ambient = AmbientField(2, ("x",), 2)
    x = ambient.var(0)
    return Pair(ambient, ambient.full(), ambient.base(), ambient.base().adjoin([x.frobenius(1)]))


@pytest.fixture
def exponent_one_pair() -> Pair:
    """F2(x,y) / F2(x^2,y^2)"""
    ambient = AmbientField(2, ("x", "y"), 1)
    return Pair(ambient, ambient.full(), ambient.base())


@pytest.fixture
def exponent_one_pair_p3() -> Pair:
    ambient = AmbientField(3, ("x", "y"), 1)
    return Pair(ambient, ambient.full(), ambient.base())


@pytest.fixture
def jacobian_pair() -> Pair:
    """F3(x,y) / F3(x^3, y^3+x),e=2;Jacobian 非零"""
    ambient = AmbientField(3, ("x", "y"), 2)
    x, y = ambient.var(0), ambient.var(1)
    K = ambient.base().adjoin([x.frobenius(1), y.frobenius(1) + x])
    return Pair(ambient, ambient.full(), K)


@pytest.fixture
def modular_pair() -> Pair:
    """F2(x,y) / F2(x^2, y^4),e=2"""
    ambient = AmbientField(2, ("x", "y"), 2)
    x, y = ambient.var(0), ambient.var(1)
    return Pair(ambient, ambient.full(), ambient.base().adjoin([x.frobenius(1), y.frobenius(2)]))


@pytest.fixture
def sweedler_pair() -> Pair:
    return sweedler(2)
