"""中间域 E 对应的 Galois 李代数胚在同伦群层面的数据。

对两项复形 L,取 π₁(L^∨[1]) = (π₀ L)^∨、π₀(L^∨[1]) = (π₁ L)^∨,
有限维情形下只记维数与锚映射矩阵即可,不丢信息。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import List, Optional

from ..algebra.funcfield import RatFunc
from ..fields.tower import IntermediateField, check_tower
from ..homology.cotangent import cotangent_complex, homology
from .algebroid import derivations_vanishing_on
from .derivations import DerivationModule, derivation_module

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlgebroidHomotopyData:
    pi1_dim: int
    pi0_dim: int
    anchor_pi1: List[List[RatFunc]]
    der_dim: int
    fib_pi0_dim: int
    fib_pi1_dim: int
    vanishing_outside_01: bool = True

    def perturbed(self, **changes) -> "AlgebroidHomotopyData":
        """构造违例数据用"""
        return replace(self, **changes)


def galois_homotopy_data(
    E: IntermediateField,
    F: IntermediateField,
    K: IntermediateField,
    module: Optional[DerivationModule] = None,
) -> AlgebroidHomotopyData:
    """gal_{F/K}(E) 的同伦数据

    Raises:
        NotATower: K ⊆ E ⊆ F 不成立
    """
    check_tower(F, E, K)
    if module is None:
        module = derivation_module(F, K)
    h_FE = homology(cotangent_complex(F, E))
    h_EK = homology(cotangent_complex(E, K))
    g = derivations_vanishing_on(E, F, K, module)
    anchor = [module.coordinates(D) for D in g.basis]
    data = AlgebroidHomotopyData(
        pi1_dim=h_FE.pi0_dim,
        pi0_dim=h_FE.pi1_dim,
        anchor_pi1=anchor,
        der_dim=module.dim,
        fib_pi0_dim=h_EK.pi0_dim,
        fib_pi1_dim=h_EK.pi1_dim,
    )
    logger.info(
        "同伦数据: pi1=%d, pi0=%d, fib=(%d, %d)",
        data.pi1_dim,
        data.pi0_dim,
        data.fib_pi0_dim,
        data.fib_pi1_dim,
    )
    return data
