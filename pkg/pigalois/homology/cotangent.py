"""两项余切复形 L_{F/K} ≃ (I/I² → Ω¹_{K[X]/K} ⊗ F) 及其同调。

给定三角表现 P_i = X_i^{p^{e_i}} − c_i,边缘映射 [P_i] ↦ Σ_j J_ij dX_j,
J_ij = ∂P_i/∂X_j(u) = −∂c_i/∂X_j(u)(j < i),对角线因特征 p 恒为零。

矩阵一律用行向量约定:第 i 行是第 i 个基向量的像,映射的复合是矩阵右乘。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..algebra.cache import MemoCache
from ..algebra.funcfield import FunctionField, Monomial, RatFunc
from ..algebra.linalg import EchelonSpace, Vector, left_nullspace, matmul, rref, transpose
from ..algebra.xpoly import XPoly
from ..errors import InternalInconsistency
from ..fields.tower import (
    IntermediateField,
    TriangularPresentation,
    check_subfield,
    express_in_basis,
    triangular_presentation,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TwoTermComplex:
    """L_{F/K} 的矩阵模型"""

    pres: TriangularPresentation
    J: Tuple[Vector, ...]

    @property
    def n(self) -> int:
        return self.pres.n

    @property
    def field(self) -> FunctionField:
        return self.pres.field

    @property
    def deg1_labels(self) -> List[str]:
        return [f"[P{i + 1}]" for i in range(self.n)]

    @property
    def deg0_labels(self) -> List[str]:
        return [f"dX{i + 1}" for i in range(self.n)]

    def dense(self) -> List[List[RatFunc]]:
        zero = self.field.zero
        return [[row.get(j, zero) for j in range(self.n)] for row in self.J]


def jacobian(pres: TriangularPresentation) -> Tuple[Vector, ...]:
    rows = []
    for i in range(pres.n):
        row: Vector = {}
        tail = pres.tails[i]
        for j in range(i):
            value = -pres.evaluate(tail.diff(j))
            if not value.is_zero():
                row[j] = value
        rows.append(row)
    return tuple(rows)


def cotangent_complex(
    F: IntermediateField,
    K: IntermediateField,
    pres: Optional[TriangularPresentation] = None,
) -> TwoTermComplex:
    """Raises: NotASubfield"""
    if pres is None:
        pres = triangular_presentation(F, K)
    else:
        check_subfield(F, K)
    return TwoTermComplex(pres, jacobian(pres))


@dataclass(frozen=True, eq=False)
class HomologyData:
    """π₀ = Ω¹_{F/K}(J 行空间的余核),π₁ = Υ_{F/K}(J 的左零空间)"""

    complex: TwoTermComplex
    rank: int
    pi0_columns: Tuple[int, ...]
    pi1_basis: Tuple[Vector, ...]
    pi1_columns: Tuple[int, ...]
    rowspace: EchelonSpace = field(repr=False)

    @property
    def n(self) -> int:
        return self.complex.n

    @property
    def pi0_dim(self) -> int:
        return len(self.pi0_columns)

    @property
    def pi1_dim(self) -> int:
        return len(self.pi1_basis)

    @property
    def pi0_basis(self) -> Tuple[Vector, ...]:
        """陪集代表元:非主元列上的单位向量"""
        one = self.complex.field.one
        return tuple({j: one} for j in self.pi0_columns)

    def pi0_coordinates(self, vec: Vector) -> List[RatFunc]:
        residual = self.rowspace.reduce(vec)
        zero = self.complex.field.zero
        return [residual.get(j, zero) for j in self.pi0_columns]

    def pi1_coordinates(self, vec: Vector) -> List[RatFunc]:
        """vec 必须在左零空间中;坐标即自由列上的分量"""
        zero = self.complex.field.zero
        coords = [vec.get(j, zero) for j in self.pi1_columns]
        rebuilt: Vector = {}
        for c, b in zip(coords, self.pi1_basis):
            for k, v in b.items():
                s = rebuilt.get(k)
                rebuilt[k] = c * v if s is None else s + c * v
        rebuilt = {k: v for k, v in rebuilt.items() if not v.is_zero()}
        if rebuilt != {k: v for k, v in vec.items() if not v.is_zero()}:
            raise InternalInconsistency("向量不在 π₁ 中")
        return coords


def homology(c: TwoTermComplex) -> HomologyData:
    f = c.field
    n = c.n
    rows = list(c.J)
    space = rref(f, rows, n)
    pivots = set(space.pivots)
    pi0_columns = tuple(j for j in range(n) if j not in pivots)
    pi1_basis = tuple(left_nullspace(f, rows, n))
    pi1_columns = tuple(rref(f, transpose(rows, n), n).free_columns())
    data = HomologyData(c, space.dim, pi0_columns, pi1_basis, pi1_columns, space)
    if data.pi0_dim != data.pi1_dim:
        raise InternalInconsistency(f"方阵的 π₀ 与 π₁ 维数不同: {data.pi0_dim} vs {data.pi1_dim}")
    logger.debug("同调: n=%d, rank=%d", n, space.dim)
    return data


@dataclass(frozen=True)
class CartierReport:
    pi0_dim: int
    pi1_dim: int
    equal: bool


def cartier_check(F: IntermediateField, K: IntermediateField) -> CartierReport:
    """dim Ω¹_{F/K} − dim Υ_{F/K} = trdeg_K F = 0"""
    h = homology(cotangent_complex(F, K))
    return CartierReport(h.pi0_dim, h.pi1_dim, h.pi0_dim == h.pi1_dim)


# ---------------------------------------------------------------------------
# 复形之间的映射
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ComplexMap:
    """source → target;deg1[i] 是 [P_i] 的像,deg0[j] 是 dY_j 的像"""

    source: TwoTermComplex
    target: TwoTermComplex
    deg1: Tuple[Vector, ...]
    deg0: Tuple[Vector, ...]

    def __post_init__(self) -> None:
        left = matmul(self.deg1, self.target.J)
        right = matmul(self.source.J, self.deg0)
        if left != right:
            raise InternalInconsistency("复形映射的方块不交换")


def homology_map(
    m: ComplexMap,
    source: HomologyData,
    target: HomologyData,
) -> Tuple[List[List[RatFunc]], List[List[RatFunc]]]:
    """诱导的 (π₁ 矩阵, π₀ 矩阵),行对应源的同调基"""
    pi1 = [target.pi1_coordinates(matmul([a], m.deg1)[0]) for a in source.pi1_basis]
    pi0 = [target.pi0_coordinates(m.deg0[j]) for j in source.pi0_columns]
    return pi1, pi0


def identity_rows(field: FunctionField, size: int, offset: int = 0) -> Tuple[Vector, ...]:
    return tuple({i + offset: field.one} for i in range(size))


# ---------------------------------------------------------------------------
# 微分与一般表现之间的比较映射
# ---------------------------------------------------------------------------

_DIFFERENTIALS: MemoCache[Tuple[RatFunc, ...]] = MemoCache("differential", max_size=16384)


def differential(f: RatFunc, pres: TriangularPresentation) -> Tuple[RatFunc, ...]:
    """df = Σ_j (∂f/∂u_j) du_j,系数按表现生成元排列

    Raises:
        NotInField: f ∉ F
    """

    def compute() -> Tuple[RatFunc, ...]:
        lam = express_in_basis(f, pres)
        poly = XPoly(pres.field, pres.n, lam)
        return tuple(pres.evaluate(poly.diff(j)) for j in range(pres.n))

    return _DIFFERENTIALS.get_or_compute((pres, f), compute)


def reduce_by_presentation(poly: XPoly, pres: TriangularPresentation) -> Tuple[XPoly, List[XPoly]]:
    """poly = rem + Σ_l h_l·P_l,rem 对每个 X_l 的次数 < p^{e_l}"""
    n = pres.n
    quotients = [XPoly(pres.field, n) for _ in range(n)]
    rem = poly
    for l in reversed(range(n)):
        bound = pres.degrees[l]
        tail = pres.tails[l]
        while True:
            high, low = rem.split_by_degree(l, bound)
            if not high:
                break
            quotients[l] = quotients[l] + high
            rem = low + high * tail
    return rem, quotients


class _Jet:
    """K[X]/I² 中的元素:正规形 rem 加上 I/I² 中的分量 Σ η_l [P_l]"""

    __slots__ = ("rem", "eta")

    def __init__(self, rem: XPoly, eta: List[RatFunc]):
        self.rem = rem
        self.eta = eta


class _JetArithmetic:
    def __init__(self, pres: TriangularPresentation):
        self.pres = pres
        self.zero = pres.field.zero

    def lift(self, poly: XPoly) -> _Jet:
        rem, quotients = reduce_by_presentation(poly, self.pres)
        return _Jet(rem, [self.pres.evaluate(h) for h in quotients])

    def value(self, jet: _Jet) -> RatFunc:
        return self.pres.evaluate(jet.rem)

    def mul(self, a: _Jet, b: _Jet) -> _Jet:
        prod = self.lift(a.rem * b.rem)
        va, vb = self.value(a), self.value(b)
        eta = [h + va * eb + vb * ea for h, ea, eb in zip(prod.eta, a.eta, b.eta)]
        return _Jet(prod.rem, eta)

    def frobenius(self, a: _Jet, e: int) -> _Jet:
        # (r + i)^{p^e} ≡ r^{p^e} mod I²
        return self.lift(a.rem.frobenius(e))

    def scale(self, a: _Jet, c: RatFunc) -> _Jet:
        return _Jet(a.rem * c, [c * x for x in a.eta])

    def sub(self, a: _Jet, b: _Jet) -> _Jet:
        return _Jet(a.rem - b.rem, [x - y for x, y in zip(a.eta, b.eta)])


def presentation_map(pres_E: TriangularPresentation, pres_F: TriangularPresentation) -> ComplexMap:
    """K[Y] → K[X], Y_j ↦ φ_j(X) 诱导的 F⊗_E L_{E/K} → L_{F/K}。

    φ_j 是 E 的第 j 个生成元在 F 单项式基下的展开;一阶部分通过
    K[X]/I² 中的运算读出 P_i^E(φ(X)) 在 I/I² 中的类。
    """
    if pres_E.K != pres_F.K:
        raise InternalInconsistency("两个表现的底域不同")
    n, m = pres_F.n, pres_E.n
    f = pres_F.field
    phis = [XPoly(f, n, express_in_basis(v, pres_F)) for v in pres_E.gens]
    deg0 = []
    for phi in phis:
        row = {k: pres_F.evaluate(phi.diff(k)) for k in range(n)}
        deg0.append({k: v for k, v in row.items() if not v.is_zero()})
    arith = _JetArithmetic(pres_F)
    jets = [_Jet(phi, [f.zero] * n) for phi in phis]
    one = arith.lift(XPoly.constant(f, n, f.one))
    powers: Dict[Monomial, _Jet] = {}

    def power(a: Monomial) -> _Jet:
        hit = powers.get(a)
        if hit is not None:
            return hit
        if not any(a):
            result = one
        else:
            j = max(i for i, x in enumerate(a) if x)
            prev = list(a)
            prev[j] -= 1
            result = arith.mul(power(tuple(prev)), jets[j])
        powers[a] = result
        return result

    deg1 = []
    for i in range(m):
        total = arith.frobenius(jets[i], pres_E.exps[i])
        for a, lam in pres_E.tails[i].terms.items():
            total = arith.sub(total, arith.scale(power(a), lam))
        if total.rem:
            raise InternalInconsistency(f"P_{i + 1}(φ) 不在理想中")
        deg1.append({l: v for l, v in enumerate(total.eta) if not v.is_zero()})
    source = TwoTermComplex(pres_E, jacobian(pres_E))
    target = TwoTermComplex(pres_F, jacobian(pres_F))
    return ComplexMap(source, target, tuple(deg1), tuple(deg0))
