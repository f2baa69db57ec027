"""F/K-限制李代数胚:Der_K(F) 中对括号与 p 次幂封闭的 F-子空间。

锚映射就是到 Der_K(F) 的包含,所以只需记录子空间本身(值向量的行最简形)。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..algebra.linalg import EchelonSpace, Vector, left_kernel, left_nullspace
from ..errors import PresentationMismatch
from ..fields.tower import IntermediateField, check_tower
from .derivations import Derivation, DerivationModule, bracket, derivation_module, p_power

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RestrictedLieAlgebroid:
    module: DerivationModule
    space: EchelonSpace
    bracket_closed: bool
    p_closed: bool

    @property
    def pres(self):
        return self.module.pres

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> Tuple[Derivation, ...]:
        f = self.pres.field
        n = self.pres.n
        return tuple(Derivation(self.pres, [row.get(j, f.zero) for j in range(n)]) for row in self.space.rows())

    @property
    def closed(self) -> bool:
        return self.bracket_closed and self.p_closed

    def contains(self, D: Derivation) -> bool:
        if D.pres is not self.pres:
            raise PresentationMismatch("导子不属于该李代数胚的表现")
        return self.space.contains(D.vector())

    def contains_algebroid(self, other: "RestrictedLieAlgebroid") -> bool:
        _same_pres(self, other)
        return self.space.contains_space(other.space)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RestrictedLieAlgebroid):
            return NotImplemented
        return equal_algebroids(self, other)

    def __hash__(self) -> int:
        return hash((id(self.pres), self.space.key()))


def _same_pres(g1: RestrictedLieAlgebroid, g2: RestrictedLieAlgebroid) -> None:
    if g1.pres is not g2.pres and g1.pres.gens != g2.pres.gens:
        raise PresentationMismatch("两个李代数胚的表现不同")


def equal_algebroids(g1: RestrictedLieAlgebroid, g2: RestrictedLieAlgebroid) -> bool:
    """行最简基逐项相等"""
    _same_pres(g1, g2)
    return g1.space.same_space(g2.space)


def _span(module: DerivationModule, derivations: Sequence[Derivation]) -> EchelonSpace:
    space = EchelonSpace(module.pres.field, module.pres.n)
    for D in derivations:
        if D.pres is not module.pres:
            raise PresentationMismatch("种子导子的表现与导子模不同")
        space.add(D.vector())
    return space


def _closure_flags(module: DerivationModule, space: EchelonSpace) -> Tuple[bool, bool]:
    pres = module.pres
    f = pres.field
    basis = [Derivation(pres, [row.get(j, f.zero) for j in range(pres.n)]) for row in space.rows()]
    bracket_closed = all(
        space.contains(bracket(basis[i], basis[j]).vector())
        for i in range(len(basis))
        for j in range(i + 1, len(basis))
    )
    p_closed = all(space.contains(p_power(D).vector()) for D in basis)
    return bracket_closed, p_closed


def algebroid_from(module: DerivationModule, derivations: Sequence[Derivation]) -> RestrictedLieAlgebroid:
    """张成的子空间,只检查封闭性不补元素"""
    space = _span(module, derivations)
    flags = _closure_flags(module, space)
    return RestrictedLieAlgebroid(module, space, *flags)


def restricted_closure(
    seed: Sequence[Derivation],
    module: Optional[DerivationModule] = None,
) -> RestrictedLieAlgebroid:
    """包含 seed、对括号与 p 次幂封闭的最小 F-子空间。

    对基元素检查两两括号与各自 p 次幂即可:F-组合的括号由 Leibniz 展开,
    p 次幂由 Hochschild 公式与 Jacobson 公式展开,多出的项都在括号生成的子空间里。
    """
    if module is None:
        if not seed:
            raise ValueError("空种子必须显式给出导子模")
        module = derivation_module(seed[0].pres.F, seed[0].pres.K, seed[0].pres)
    space = _span(module, seed)
    pres = module.pres
    f = pres.field
    rounds = 0
    while True:
        rounds += 1
        basis = [Derivation(pres, [row.get(j, f.zero) for j in range(pres.n)]) for row in space.rows()]
        candidates = [bracket(basis[i], basis[j]) for i in range(len(basis)) for j in range(i + 1, len(basis))]
        candidates.extend(p_power(D) for D in basis)
        grown = space.extend(D.vector() for D in candidates)
        logger.debug("限制闭包第 %d 轮, 新增 %d 维", rounds, grown)
        if not grown:
            break
    logger.info("限制闭包维数 %d (%d 轮)", space.dim, rounds)
    return RestrictedLieAlgebroid(module, space, True, True)


def fixed_field(g: RestrictedLieAlgebroid) -> IntermediateField:
    """F^g = {x ∈ F : D(x) = 0, ∀D ∈ g}。

    每个 D 都是 B-线性的,所以在 F 的 B-基上写出 D 的矩阵,求左核即可。
    """
    F = g.pres.F
    ambient = F.ambient
    basis = g.basis
    if not basis:
        return F
    width = ambient.dimension * len(basis)
    rows: List[Vector] = []
    for b in F.basis_elements:
        row: Vector = {}
        for k, D in enumerate(basis):
            for j, v in ambient.coord(D(b)).items():
                row[k * ambient.dimension + j] = v
        rows.append(row)
    F_rows = F.space.rows()
    space = EchelonSpace(ambient.field, ambient.dimension)
    for relation in left_kernel(ambient.field, rows, width):
        vec: Vector = {}
        for i, c in relation.items():
            for j, v in F_rows[i].items():
                s = vec.get(j)
                vec[j] = c * v if s is None else s + c * v
        space.add({j: v for j, v in vec.items() if not v.is_zero()})
    result = IntermediateField.from_space(ambient, space)
    logger.info("不动域维数 %d", result.dim)
    return result


def derivations_vanishing_on(
    E: IntermediateField,
    F: IntermediateField,
    K: IntermediateField,
    module: Optional[DerivationModule] = None,
) -> RestrictedLieAlgebroid:
    """Der_E(F) ⊆ Der_K(F)

    Raises:
        NotATower: K ⊆ E ⊆ F 不成立
    """
    check_tower(F, E, K)
    if module is None:
        module = derivation_module(F, K)
    f = module.pres.field
    gens = list(E.multipliers)
    rows: List[Vector] = []
    for D in module.basis:
        row = {i: D(gen) for i, gen in enumerate(gens)}
        rows.append({i: v for i, v in row.items() if not v.is_zero()})
    if gens:
        kernel = left_nullspace(f, rows, len(gens))
        derivations = [module.combine([c.get(k, f.zero) for k in range(module.dim)]) for c in kernel]
    else:
        derivations = list(module.basis)
    g = algebroid_from(module, derivations)
    if not g.closed:
        logger.warning("Der_E(F) 的封闭性检查未通过: bracket=%s, p=%s", g.bracket_closed, g.p_closed)
    return g
