"""K-导子:用在表现生成元上的取值 (D(u_1), ..., D(u_n)) 表示。

值向量 d 延拓成 F 上的 K-导子当且仅当 J·d = 0;对任意 f ∈ F,
D(f) = Σ_j (∂f/∂u_j)·d_j,其中偏导来自 f 在单项式基 u^a 下的展开。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from ..algebra.funcfield import RatFunc, format_ratfunc
from ..algebra.linalg import nullspace, rref
from ..errors import NotADerivation, NotInField, PresentationMismatch
from ..fields.tower import IntermediateField, TriangularPresentation, triangular_presentation
from ..homology.cotangent import differential, jacobian

logger = logging.getLogger(__name__)


class Derivation:
    """F/K 上的导子,值语义"""

    __slots__ = ("pres", "values")

    def __init__(self, pres: TriangularPresentation, values: Sequence[RatFunc]):
        if len(values) != pres.n:
            raise PresentationMismatch(f"值向量长度 {len(values)} 与生成元个数 {pres.n} 不符")
        self.pres = pres
        self.values: Tuple[RatFunc, ...] = tuple(values)

    @classmethod
    def zero(cls, pres: TriangularPresentation) -> "Derivation":
        return cls(pres, [pres.field.zero] * pres.n)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def _check(self, other: "Derivation") -> None:
        if other.pres is not self.pres:
            raise PresentationMismatch("两个导子属于不同的表现")

    def __call__(self, f: RatFunc) -> RatFunc:
        return apply_derivation(self, f)

    def __add__(self, other: "Derivation") -> "Derivation":
        self._check(other)
        return Derivation(self.pres, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "Derivation") -> "Derivation":
        self._check(other)
        return Derivation(self.pres, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self) -> "Derivation":
        return Derivation(self.pres, [-a for a in self.values])

    def __mul__(self, scalar: Union[RatFunc, int]) -> "Derivation":
        return Derivation(self.pres, [a * scalar for a in self.values])

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.pres is other.pres and self.values == other.values

    def __hash__(self) -> int:
        return hash((id(self.pres), self.values))

    def vector(self) -> dict:
        return {j: v for j, v in enumerate(self.values) if not v.is_zero()}

    def format(self) -> List[str]:
        return [format_ratfunc(v) for v in self.values]

    def __repr__(self) -> str:
        return f"Derivation({self.format()})"


def apply_derivation(D: Derivation, f: RatFunc) -> RatFunc:
    """D(f)

    Raises:
        NotInField: f ∉ F
    """
    grad = differential(f, D.pres)
    total = D.pres.field.zero
    for g, d in zip(grad, D.values):
        if not g.is_zero() and not d.is_zero():
            total = total + g * d
    return total


def bracket(D1: Derivation, D2: Derivation) -> Derivation:
    """[D1, D2] = D1∘D2 − D2∘D1"""
    D1._check(D2)
    values = [D1(b) - D2(a) for a, b in zip(D1.values, D2.values)]
    return Derivation(D1.pres, values)


def p_power(D: Derivation) -> Derivation:
    """D^{[p]} = D∘...∘D(p 次),在生成元上迭代求值"""
    p = D.pres.field.p
    values = []
    for w in D.values:
        for _ in range(p - 1):
            if w.is_zero():
                break
            w = D(w)
        values.append(w)
    return Derivation(D.pres, values)


def compose_power(D: Derivation, f: RatFunc, times: int) -> RatFunc:
    """D^times(f)"""
    for _ in range(times):
        if f.is_zero():
            break
        f = D(f)
    return f


@dataclass(frozen=True, eq=False)
class DerivationModule:
    """Der_K(F):J 的右零空间,基在自由列处取单位向量"""

    pres: TriangularPresentation
    basis: Tuple[Derivation, ...]
    free_columns: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def F(self) -> IntermediateField:
        return self.pres.F

    @property
    def K(self) -> IntermediateField:
        return self.pres.K

    def contains(self, D: Derivation) -> bool:
        J = jacobian(self.pres)
        for row in J:
            total = self.pres.field.zero
            for j, v in row.items():
                total = total + v * D.values[j]
            if not total.is_zero():
                return False
        return True

    def coordinates(self, D: Derivation) -> List[RatFunc]:
        """D 在模基下的坐标(自由列上的分量)"""
        if D.pres is not self.pres:
            raise PresentationMismatch("导子不属于该导子模的表现")
        return [D.values[j] for j in self.free_columns]

    def combine(self, coefficients: Sequence[RatFunc]) -> Derivation:
        total = Derivation.zero(self.pres)
        for c, D in zip(coefficients, self.basis):
            if not c.is_zero():
                total = total + D * c
        return total

    def derivation(self, values: Sequence[RatFunc]) -> Derivation:
        """由值向量构造导子,并检查 J·d = 0 与取值落在 F 中

        Raises:
            NotInField: 某个取值不在 F 中
            NotADerivation: J·d ≠ 0
        """
        for v in values:
            if not self.pres.F.contains(v):
                raise NotInField(f"取值 {format_ratfunc(v)} 不在 F 中")
        D = Derivation(self.pres, values)
        if not self.contains(D):
            raise NotADerivation(f"值向量 {D.format()} 不满足 J·d = 0")
        return D


def derivation_module(
    F: IntermediateField,
    K: IntermediateField,
    pres: Optional[TriangularPresentation] = None,
) -> DerivationModule:
    """Raises: NotASubfield"""
    if pres is None:
        pres = triangular_presentation(F, K)
    f = pres.field
    J = list(jacobian(pres))
    vectors = nullspace(f, J, pres.n)
    free = tuple(rref(f, J, pres.n).free_columns())
    basis = tuple(Derivation(pres, [vec.get(j, f.zero) for j in range(pres.n)]) for vec in vectors)
    logger.info("Der_K(F) 维数 %d", len(basis))
    return DerivationModule(pres, basis, free)
