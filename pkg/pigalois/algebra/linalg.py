"""有理函数域上的精确稀疏线性代数。

向量用 ``{列下标: 非零 RatFunc}`` 的字典表示。核心是 :class:`EchelonSpace`:
增量维护的行最简形(每个主元列在其余行中全为零),可以选择记录每一行是
由哪些原始输入线性组合而来,从而同时支持成员判定、解线性方程、求左核。

主元总是取剩余向量中下标最小的非零列,所以结果只依赖输入顺序。
"""

from __future__ import annotations

import logging
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .funcfield import FunctionField, RatFunc

logger = logging.getLogger(__name__)

Vector = Dict[int, RatFunc]
Combo = Dict[Hashable, RatFunc]


def axpy(y: Dict, a: RatFunc, x: Dict) -> Dict:
    """返回 y + a·x(不修改参数),自动丢弃零项"""
    out = dict(y)
    for k, v in x.items():
        s = out.get(k)
        s = a * v if s is None else s + a * v
        if s.is_zero():
            out.pop(k, None)
        else:
            out[k] = s
    return out


def scale(a: RatFunc, x: Dict) -> Dict:
    if a.is_zero():
        return {}
    return {k: a * v for k, v in x.items()}


def dense(vec: Vector, width: int, field: FunctionField) -> List[RatFunc]:
    return [vec.get(j, field.zero) for j in range(width)]


def sparse(values: Sequence[RatFunc]) -> Vector:
    return {j: v for j, v in enumerate(values) if not v.is_zero()}


def transpose(rows: Sequence[Vector], width: int) -> List[Vector]:
    cols: List[Vector] = [{} for _ in range(width)]
    for i, row in enumerate(rows):
        for j, v in row.items():
            cols[j][i] = v
    return cols


def matmul(left: Sequence[Vector], right: Sequence[Vector]) -> List[Vector]:
    """稀疏行矩阵乘法:结果第 i 行 = Σ_k left[i][k]·right[k]"""
    out: List[Vector] = []
    for row in left:
        acc: Vector = {}
        for k, a in row.items():
            acc = axpy(acc, a, right[k])
        out.append(acc)
    return out


class EchelonSpace:
    """增量行最简形。

    Args:
        field: 系数所在的有理函数域
        width: 向量长度
        track: 是否记录行与原始输入之间的组合关系
    """

    def __init__(self, field: FunctionField, width: int, track: bool = False):
        self.field = field
        self.width = width
        self.track = track
        self._rows: Dict[int, Vector] = {}
        self._combos: Dict[int, Combo] = {}
        # 记录模式下,相关的输入给出的线性关系 Σ coef·input_label = 0
        self.relations: List[Combo] = []

    # -- 查询 -------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self._rows)

    def rows(self) -> List[Vector]:
        return [self._rows[c] for c in self.pivots]

    def free_columns(self) -> List[int]:
        return [j for j in range(self.width) if j not in self._rows]

    def copy(self) -> "EchelonSpace":
        other = EchelonSpace(self.field, self.width, self.track)
        other._rows = dict(self._rows)
        other._combos = dict(self._combos)
        other.relations = list(self.relations)
        return other

    def reduce(self, vec: Vector) -> Vector:
        """vec 模去行空间后的剩余向量(主元列处为零)"""
        residual, _ = self._reduce(vec)
        return residual

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)

    def coordinates(self, vec: Vector) -> Optional[Dict[int, RatFunc]]:
        """vec 在行最简基下的坐标(按主元列索引);不在行空间中时返回 None"""
        residual, coefs = self._reduce(vec)
        if residual:
            return None
        return coefs

    def express(self, vec: Vector) -> Optional[Combo]:
        """把 vec 写成原始输入的线性组合;需要 track=True"""
        if not self.track:
            raise RuntimeError("未开启组合记录")
        residual, coefs = self._reduce(vec)
        if residual:
            return None
        combo: Combo = {}
        for piv, c in coefs.items():
            combo = axpy(combo, c, self._combos[piv])
        return combo

    def key(self) -> Tuple:
        """行空间的规范表示,用于判等与哈希"""
        return tuple((piv, tuple(sorted(row.items()))) for piv, row in sorted(self._rows.items()))

    def same_space(self, other: "EchelonSpace") -> bool:
        return self.width == other.width and self._rows == other._rows

    def contains_space(self, other: "EchelonSpace") -> bool:
        return all(self.contains(row) for row in other._rows.values())

    # -- 修改 -------------------------------------------------------------

    def add(self, vec: Vector, label: Optional[Hashable] = None) -> bool:
        """加入一个向量;线性无关时返回 True"""
        residual, coefs = self._reduce(vec)
        combo: Combo = {}
        if self.track:
            combo = {label: self.field.one}
            for piv, c in coefs.items():
                combo = axpy(combo, -c, self._combos[piv])
        if not residual:
            if self.track:
                self.relations.append(combo)
            return False
        piv = min(residual)
        inv = residual[piv].inverse()
        row = scale(inv, residual)
        if self.track:
            combo = scale(inv, combo)
        # 消去已有行在新主元列上的分量,保持行最简
        for other_piv, other_row in list(self._rows.items()):
            c = other_row.get(piv)
            if c is not None:
                self._rows[other_piv] = axpy(other_row, -c, row)
                if self.track:
                    self._combos[other_piv] = axpy(self._combos[other_piv], -c, combo)
        self._rows[piv] = row
        if self.track:
            self._combos[piv] = combo
        return True

    def extend(self, vecs: Iterable[Vector]) -> int:
        """依次加入,返回新增维数"""
        return sum(1 for v in vecs if self.add(v))

    def _reduce(self, vec: Vector) -> Tuple[Vector, Dict[int, RatFunc]]:
        coefs = {piv: vec[piv] for piv in vec if piv in self._rows}
        residual = dict(vec)
        for piv, c in coefs.items():
            residual = axpy(residual, -c, self._rows[piv])
        return residual, coefs


# ---------------------------------------------------------------------------
# 一次性计算
# ---------------------------------------------------------------------------


def rref(field: FunctionField, rows: Sequence[Vector], width: int) -> EchelonSpace:
    space = EchelonSpace(field, width)
    space.extend(rows)
    return space


def rank(field: FunctionField, rows: Sequence[Vector], width: int) -> int:
    return rref(field, rows, width).dim


def nullspace(field: FunctionField, rows: Sequence[Vector], width: int) -> List[Vector]:
    """右零空间 {v : rows·v = 0} 的基。

    每个基向量在自己的自由列处为 1、在其余自由列处为 0,
    因此零空间中任意向量的坐标就是它在自由列上的分量。
    """
    space = rref(field, rows, width)
    basis: List[Vector] = []
    for free in space.free_columns():
        vec: Vector = {free: field.one}
        for piv, row in space._rows.items():
            c = row.get(free)
            if c is not None:
                vec[piv] = -c
        basis.append(vec)
    return basis


def left_nullspace(field: FunctionField, rows: Sequence[Vector], width: int) -> List[Vector]:
    """左零空间 {a : a·rows = 0} 的基,结构同 :func:`nullspace`"""
    return nullspace(field, transpose(rows, width), len(rows))


def null_coordinates(field: FunctionField, rows: Sequence[Vector], width: int) -> List[int]:
    """:func:`nullspace` 基所对应的自由列"""
    return rref(field, rows, width).free_columns()


def left_kernel(field: FunctionField, rows: Sequence[Vector], width: int) -> List[Combo]:
    """所有线性关系 Σ c_i·rows[i] = 0 组成的空间的一组基(按行下标记录)"""
    space = EchelonSpace(field, width, track=True)
    for i, row in enumerate(rows):
        space.add(row, label=i)
    return space.relations


def solve_left(field: FunctionField, rows: Sequence[Vector], width: int, target: Vector) -> Optional[Combo]:
    """求 c 使 Σ c_i·rows[i] = target;无解返回 None"""
    space = EchelonSpace(field, width, track=True)
    for i, row in enumerate(rows):
        space.add(row, label=i)
    return space.express(target)
