"""测试共用的域实例"""

from dataclasses import dataclass
from typing import Optional

from pigalois.fields.tower import AmbientField, IntermediateField


@dataclass
class Pair:
    """一个 K ⊆ F 实例,附带环境域"""

    ambient: AmbientField
    F: IntermediateField
    K: IntermediateField
    E: Optional[IntermediateField] = None

    def var(self, i: int):
        return self.ambient.var(i)


def sweedler(p: int) -> Pair:
    """K = F_p(x^p, y^p, z^{p^2}), F = K(xz+y, z)"""
    ambient = AmbientField(p, ("x", "y", "z"), 2)
    x, y, z = (ambient.var(i) for i in range(3))
    K = ambient.base().adjoin([x.frobenius(1), y.frobenius(1)])
    F = K.adjoin([x * z + y, z])
    return Pair(ambient, F, K)


SWEEDLER_SPEC = {
    "p": 2,
    "variables": ["x", "y", "z"],
    "exponent_bound": 2,
    "F": {"generators": ["x*z+y", "z"]},
    "K": {"generators": ["x^2", "y^2"]},
}

FROBENIUS_SPEC = {
    "p": 2,
    "variables": ["x"],
    "exponent_bound": 2,
    "F": {"generators": ["x"]},
    "K": {"generators": []},
}

EXPONENT_ONE_SPEC = {
    "p": 2,
    "variables": ["x", "y"],
    "exponent_bound": 1,
    "F": {"generators": ["x", "y"]},
    "K": {"generators": []},
}

MODULAR_SPEC = {
    "p": 2,
    "variables": ["x", "y"],
    "exponent_bound": 2,
    "F": {"generators": ["x", "y"]},
    "K": {"generators": ["x^2"]},
}
