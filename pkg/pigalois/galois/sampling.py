"""随机试验用的中间域抽样。所有函数只从传入的 rng 取随机数。"""

from __future__ import annotations

import random
from typing import Tuple

from ..fields.tower import AmbientField, IntermediateField, random_element


def random_intermediate(F: IntermediateField, K: IntermediateField, rng: random.Random, max_gens: int = 2) -> IntermediateField:
    """K 上添加 1..max_gens 个 F 的随机元素"""
    return K.adjoin([random_element(F, rng) for _ in range(rng.randint(1, max_gens))])


def random_pair(ambient: AmbientField, rng: random.Random) -> Tuple[IntermediateField, IntermediateField]:
    """随机的 K ⊆ F ⊆ A,两者都含 A^{p^e}"""
    full = ambient.full()
    K = random_intermediate(full, ambient.base(), rng, max_gens=2)
    F = random_intermediate(full, K, rng, max_gens=2)
    return F, K


def random_tower(
    ambient: AmbientField, rng: random.Random
) -> Tuple[IntermediateField, IntermediateField, IntermediateField]:
    """随机的 K ⊆ E ⊆ F"""
    F, K = random_pair(ambient, rng)
    E = random_intermediate(F, K, rng, max_gens=1)
    return F, E, K
