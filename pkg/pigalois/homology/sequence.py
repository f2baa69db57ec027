"""塔 K ⊆ E ⊆ F 的余纤维序列与六项正合列,以及直和比较。

相容表现:先取 E/K 的贪心表现 u_1..u_m,再用 F/E 的贪心极小生成元补齐
u_{m+1}..u_n,于是 F/K 的 Jacobian 是分块下三角 [[J_E, 0], [B, J_{F/E}]]。
连接映射按蛇引理:π₁(L_{F/E}) 中的 b 映到 b·B 在 F^m / rowspace(J_E) 中的类。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

from ..algebra.funcfield import FunctionField, RatFunc
from ..algebra.linalg import Vector, matmul, rank, sparse
from ..errors import InternalInconsistency
from ..fields.tower import (
    IntermediateField,
    TriangularPresentation,
    check_tower,
    minimal_generator_count,
    triangular_presentation,
)
from .cotangent import (
    ComplexMap,
    HomologyData,
    TwoTermComplex,
    cotangent_complex,
    homology,
    homology_map,
    identity_rows,
    presentation_map,
)

logger = logging.getLogger(__name__)

Matrix = List[List[RatFunc]]


@dataclass(frozen=True, eq=False)
class TowerMaps:
    pres_E: TriangularPresentation
    pres_F: TriangularPresentation
    pres_FE: TriangularPresentation
    complex_E: TwoTermComplex
    complex_F: TwoTermComplex
    complex_FE: TwoTermComplex
    inclusion: ComplexMap
    projection: ComplexMap

    @property
    def m(self) -> int:
        return self.pres_E.n


def tower_maps(F: IntermediateField, E: IntermediateField, K: IntermediateField) -> TowerMaps:
    """F⊗_E L_{E/K} → L_{F/K} → L_{F/E},两个映射都在链层面验证交换

    Raises:
        NotATower: K ⊆ E ⊆ F 不成立
    """
    check_tower(F, E, K)
    pres_E = triangular_presentation(E, K)
    extra = minimal_generator_count(F, E).generators
    pres_F = triangular_presentation(F, K, gens=list(pres_E.gens) + list(extra))
    m, n = pres_E.n, pres_F.n
    if pres_F.gens[:m] != pres_E.gens or pres_F.exps[:m] != pres_E.exps:
        raise InternalInconsistency("F/K 表现没有延伸 E/K 表现")
    pres_FE = pres_F.restrict(m, E)
    c_E = cotangent_complex(E, K, pres_E)
    c_F = cotangent_complex(F, K, pres_F)
    c_FE = cotangent_complex(F, E, pres_FE)
    f = pres_F.field
    embed = identity_rows(f, m)
    inclusion = ComplexMap(c_E, c_F, embed, embed)
    project = tuple({} for _ in range(m)) + identity_rows(f, n - m)
    projection = ComplexMap(c_F, c_FE, project, project)
    logger.info("塔映射: m=%d, n=%d", m, n)
    return TowerMaps(pres_E, pres_F, pres_FE, c_E, c_F, c_FE, inclusion, projection)


@dataclass(frozen=True)
class SixTermSequence:
    """π₁(F⊗L_{E/K}) → π₁(L_{F/K}) → π₁(L_{F/E}) → π₀(F⊗L_{E/K}) → π₀(L_{F/K}) → π₀(L_{F/E}) → 0"""

    dims: Tuple[int, ...]
    matrices: Tuple[Matrix, ...]
    exact_at: Tuple[bool, ...]

    NODES = (
        "pi1(F(x)L_E/K)",
        "pi1(L_F/K)",
        "pi1(L_F/E)",
        "pi0(F(x)L_E/K)",
        "pi0(L_F/K)",
        "pi0(L_F/E)",
    )

    @property
    def exact(self) -> bool:
        return all(self.exact_at)

    @property
    def connecting(self) -> Matrix:
        return self.matrices[2]

    def is_zero(self, index: int) -> bool:
        return all(v.is_zero() for row in self.matrices[index] for v in row)


def six_term(F: IntermediateField, E: IntermediateField, K: IntermediateField) -> SixTermSequence:
    """Raises: NotATower"""
    maps = tower_maps(F, E, K)
    field = maps.pres_F.field
    m = maps.m
    h_E = homology(maps.complex_E)
    h_F = homology(maps.complex_F)
    h_FE = homology(maps.complex_FE)
    inc1, inc0 = homology_map(maps.inclusion, h_E, h_F)
    proj1, proj0 = homology_map(maps.projection, h_F, h_FE)
    # 蛇引理:b ∈ π₁(L_{F/E}) 提升为 (0, b),边缘 (0,b)·J_F 的前 m 个分量落在 F⊗L_{E/K} 的 0 次项
    block = [{j: v for j, v in row.items() if j < m} for row in maps.complex_F.J[m:]]
    delta = []
    for b in h_FE.pi1_basis:
        image = matmul([b], block)[0] if block else {}
        delta.append(h_E.pi0_coordinates(image))
    dims = (h_E.pi1_dim, h_F.pi1_dim, h_FE.pi1_dim, h_E.pi0_dim, h_F.pi0_dim, h_FE.pi0_dim)
    matrices = (inc1, proj1, delta, inc0, proj0)
    exact_at = tuple(_exact_at(field, dims, matrices, k) for k in range(6))
    seq = SixTermSequence(dims, matrices, exact_at)
    logger.info("六项序列维数 %s, 正合: %s", dims, seq.exact)
    return seq


def _exact_at(field: FunctionField, dims: Sequence[int], matrices: Sequence[Matrix], k: int) -> bool:
    incoming = matrices[k - 1] if k > 0 else None
    outgoing = matrices[k] if k < 5 else None
    r_in = rank(field, [sparse(r) for r in incoming], dims[k]) if incoming is not None else 0
    r_out = rank(field, [sparse(r) for r in outgoing], dims[k + 1]) if outgoing is not None else 0
    if incoming is not None and outgoing is not None and incoming and outgoing:
        composite = matmul([sparse(r) for r in incoming], [sparse(r) for r in outgoing])
        if any(composite):
            return False
    return r_in + r_out == dims[k]


def euler_check(s: Union[SixTermSequence, Sequence[int]]) -> bool:
    """六个维数的交错和为零"""
    dims = s.dims if isinstance(s, SixTermSequence) else tuple(s)
    return sum((-1) ** k * d for k, d in enumerate(dims)) == 0


# ---------------------------------------------------------------------------
# 直和比较
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DegreeComparison:
    source_dims: Tuple[int, ...]
    target_dim: int
    rank: int

    @property
    def isomorphic(self) -> bool:
        return sum(self.source_dims) == self.target_dim == self.rank


@dataclass(frozen=True)
class DirectSumReport:
    pi0: DegreeComparison
    pi1: DegreeComparison

    @property
    def isomorphic(self) -> bool:
        return self.pi0.isomorphic and self.pi1.isomorphic


def direct_sum_compare(
    F: IntermediateField,
    K: IntermediateField,
    parts: Sequence[IntermediateField],
) -> DirectSumReport:
    """⊕_i F⊗_{E_i} L_{E_i/K} → L_{F/K} 是否在 π₀、π₁ 上都是同构

    Raises:
        NotATower: 某个 E_i 不夹在 K 与 F 之间
    """
    for E in parts:
        check_tower(F, E, K)
    pres_F = triangular_presentation(F, K)
    h_F = homology(cotangent_complex(F, K, pres_F))
    rows1: List[Vector] = []
    rows0: List[Vector] = []
    dims1: List[int] = []
    dims0: List[int] = []
    for E in parts:
        pres_E = triangular_presentation(E, K)
        h_E = homology(cotangent_complex(E, K, pres_E))
        pi1, pi0 = homology_map(presentation_map(pres_E, pres_F), h_E, h_F)
        rows1.extend(sparse(r) for r in pi1)
        rows0.extend(sparse(r) for r in pi0)
        dims1.append(h_E.pi1_dim)
        dims0.append(h_E.pi0_dim)
    field = pres_F.field
    report = DirectSumReport(
        pi0=DegreeComparison(tuple(dims0), h_F.pi0_dim, rank(field, rows0, h_F.pi0_dim)),
        pi1=DegreeComparison(tuple(dims1), h_F.pi1_dim, rank(field, rows1, h_F.pi1_dim)),
    )
    logger.info("直和比较: π₀ %s, π₁ %s", report.pi0, report.pi1)
    return report
