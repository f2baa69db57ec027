"""域的模型:夹在 A^{p^e} 与 A 之间的中间域。

每个中间域 E 都是 A 的一个 A^{p^e}-子空间,用 Frobenius 下降坐标
(A 在 B = A^{p^e} 上的单项式基 x^a)下的行最简形表示。包含 B 的子环
自动是域(域上的有限整扩张),因此闭包只需要反复做"张成再相乘"。

B 上的坐标是 p^e 次方根:元素 Σ_a c_a^{p^e} x^a 的坐标为 (c_a)_a,
B 中标量 s^{p^e} 作用在坐标上就是乘以 s,于是所有 B-线性代数都变成
有理函数域 A 上的普通线性代数。
"""

from __future__ import annotations

import itertools
import logging
import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Deque, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from ..algebra.cache import MemoCache
from ..algebra.funcfield import FunctionField, Monomial, RatFunc, format_ratfunc
from ..algebra.linalg import EchelonSpace, Vector, left_kernel
from ..algebra.xpoly import XPoly
from ..errors import (
    ConfigError,
    GeneratorsInsufficient,
    NotASubfield,
    NotATower,
    NotInField,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# 环境域
# ---------------------------------------------------------------------------


class AmbientField:
    """A = F_p(x_1..x_N) 连同指数上界 e;B = A^{p^e} 是所有中间域的公共底"""

    def __init__(self, p: int, names: Sequence[str], e: int):
        if not isinstance(e, int) or e < 1:
            raise ConfigError(f"指数上界 e={e!r} 必须为正整数")
        self.field = FunctionField(p, names)
        self.p = p
        self.names = tuple(names)
        self.e = e
        self.q = p**e
        # 列顺序:按 (总次数, 指数向量) 升序,1 总在第 0 列
        self.monomials: List[Monomial] = sorted(
            itertools.product(range(self.q), repeat=len(self.names)),
            key=lambda a: (sum(a), a),
        )
        self.index: Dict[Monomial, int] = {a: i for i, a in enumerate(self.monomials)}
        self._monomial_values: Dict[int, RatFunc] = {}

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def dimension(self) -> int:
        """[A : A^{p^e}] = p^{eN}"""
        return len(self.monomials)

    def var(self, index: int) -> RatFunc:
        return self.field.var(index)

    def coord(self, f: RatFunc) -> Vector:
        """f 在 B 上的下降坐标"""
        return {self.index[a]: c for a, c in f.descent(self.e).items()}

    def element(self, vec: Vector) -> RatFunc:
        """coord 的逆"""
        total = self.field.zero
        for j, c in vec.items():
            mono = self._monomial_values.get(j)
            if mono is None:
                mono = self._monomial_values[j] = self.field.monomial(self.monomials[j])
            total = total + c.frobenius(self.e) * mono
        return total

    def base(self) -> "IntermediateField":
        """B = A^{p^e} 本身"""
        space = EchelonSpace(self.field, self.dimension)
        space.add(self.coord(self.field.one))
        return IntermediateField(self, (), space, (self.field.one,), ())

    def full(self) -> "IntermediateField":
        """整个 A"""
        return self.base().adjoin([self.var(i) for i in range(self.nvars)])

    def rebase(self, e: int) -> "AmbientField":
        if e < self.e:
            raise ConfigError(f"只能加细到更大的指数上界 (当前 {self.e}, 请求 {e})")
        return AmbientField(self.p, self.names, e)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AmbientField) and (self.p, self.names, self.e) == (other.p, other.names, other.e)

    def __hash__(self) -> int:
        return hash((self.p, self.names, self.e))

    def __repr__(self) -> str:
        return f"AmbientField(p={self.p}, names={self.names}, e={self.e})"


# ---------------------------------------------------------------------------
# 中间域
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubfieldBasis:
    """中间域在 B 上的行最简基"""

    space: EchelonSpace

    @property
    def rows(self) -> List[Vector]:
        return self.space.rows()

    @property
    def pivots(self) -> List[int]:
        return self.space.pivots

    @property
    def dim(self) -> int:
        return self.space.dim


class IntermediateField:
    """B ⊆ E ⊆ A 的中间域。

    ``spanning`` 是闭包过程中实际得到的一组 B-张成元(生成元的乘积),
    ``multipliers`` 是一组代数生成元,E 对它们的乘法封闭。
    """

    def __init__(
        self,
        ambient: AmbientField,
        generators: Tuple[RatFunc, ...],
        space: EchelonSpace,
        spanning: Tuple[RatFunc, ...],
        multipliers: Tuple[RatFunc, ...],
    ):
        self.ambient = ambient
        self.generators = tuple(generators)
        self.space = space
        self.spanning = tuple(spanning)
        self.multipliers = tuple(multipliers)

    @property
    def basis(self) -> SubfieldBasis:
        return SubfieldBasis(self.space)

    @property
    def dim_over_base(self) -> int:
        return self.space.dim

    @property
    def dim(self) -> int:
        return self.space.dim

    @cached_property
    def basis_elements(self) -> Tuple[RatFunc, ...]:
        """行最简基对应的元素,按主元列顺序"""
        return tuple(self.ambient.element(row) for row in self.space.rows())

    @cached_property
    def sorted_basis(self) -> Tuple[RatFunc, ...]:
        """张成元与行最简基元素的并,去掉常数后按规范形排序(贪心搜索的候选顺序)"""
        seen = {}
        for f in list(self.spanning) + list(self.basis_elements):
            if not f.is_constant():
                seen.setdefault(f, None)
        return tuple(sorted(seen, key=lambda f: f.sort_key()))

    def contains(self, f: RatFunc) -> bool:
        return self.space.contains(self.ambient.coord(f))

    def contains_field(self, other: "IntermediateField") -> bool:
        _same_ambient(self, other)
        return self.space.contains_space(other.space)

    def adjoin(self, elements: Iterable[RatFunc]) -> "IntermediateField":
        """E(elements)"""
        elements = list(elements)
        space = self.space.copy()
        spanning = list(self.spanning)
        multipliers = list(self.multipliers)
        added = _close(self.ambient, space, spanning, multipliers, elements)
        if not added:
            return self
        return IntermediateField(
            self.ambient,
            self.generators + tuple(added),
            space,
            tuple(spanning),
            tuple(multipliers),
        )

    @classmethod
    def from_space(cls, ambient: AmbientField, space: EchelonSpace) -> "IntermediateField":
        """由已知是子域的行空间构造,贪心挑选一组生成元"""
        target = IntermediateField(ambient, (), space, (), ())
        current = ambient.base()
        for cand in target.sorted_basis:
            if current.dim == space.dim:
                break
            if not current.contains(cand):
                current = current.adjoin([cand])
        if not current.space.same_space(space):
            raise NotATower("给定的行空间不是对乘法封闭的子域")
        return current

    def key(self) -> tuple:
        return (self.ambient, self.space.key())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntermediateField):
            return NotImplemented
        return self.ambient == other.ambient and self.space.same_space(other.space)

    def __hash__(self) -> int:
        return hash(self.key())

    def describe(self) -> str:
        gens = ", ".join(format_ratfunc(g) for g in self.generators)
        return f"B({gens}) [dim {self.dim}]"

    def __repr__(self) -> str:
        return f"IntermediateField({self.describe()})"


def _close(
    ambient: AmbientField,
    space: EchelonSpace,
    spanning: List[RatFunc],
    multipliers: List[RatFunc],
    extra: Sequence[RatFunc],
) -> List[RatFunc]:
    """把 extra 并入一个已经对 multipliers 乘法封闭的 B-子代数,就地重新封闭。

    返回真正新增的乘子(已在子代数中的元素不需要再作乘子)。
    """
    new_mults: List[RatFunc] = []
    for g in extra:
        if g.ring != ambient.field.ring:
            raise NotInField(f"元素 {format_ratfunc(g)} 不属于环境域 {ambient}")
        if space.contains(ambient.coord(g)) or g in new_mults:
            continue
        new_mults.append(g)
    if not new_mults:
        return []
    queue: Deque[Tuple[RatFunc, RatFunc]] = deque((b, g) for g in new_mults for b in spanning)
    multipliers.extend(new_mults)
    rounds = 0
    while queue:
        b, g = queue.popleft()
        prod = b * g
        if space.add(ambient.coord(prod)):
            spanning.append(prod)
            queue.extend((prod, h) for h in multipliers)
            rounds += 1
    logger.debug("闭包新增 %d 维,当前维数 %d", rounds, space.dim)
    return new_mults


def _same_ambient(*fields: IntermediateField) -> None:
    first = fields[0].ambient
    for other in fields[1:]:
        if other.ambient != first:
            raise NotATower(f"域不在同一个环境域中: {first} vs {other.ambient}")


# ---------------------------------------------------------------------------
# 基本操作
# ---------------------------------------------------------------------------


def subfield_closure(ambient: AmbientField, gens: Sequence[RatFunc]) -> SubfieldBasis:
    return ambient.base().adjoin(gens).basis


def closure(ambient: AmbientField, gens: Sequence[RatFunc]) -> IntermediateField:
    """B(gens)"""
    result = ambient.base().adjoin(gens)
    logger.info("闭包完成: %d 个生成元, 维数 %d", len(gens), result.dim)
    return result


def membership(f: RatFunc, E: IntermediateField) -> bool:
    return E.contains(f)


def check_subfield(F: IntermediateField, K: IntermediateField) -> None:
    """K ⊆ F,否则抛 NotASubfield 并指出第一个不在 F 中的生成元"""
    _same_ambient(F, K)
    for g in K.generators:
        if not F.contains(g):
            text = format_ratfunc(g)
            raise NotASubfield(f"K 的生成元 {text} 不在 F 中", generator=text)
    for g in K.basis_elements:
        if not F.contains(g):
            text = format_ratfunc(g)
            raise NotASubfield(f"K 的基元素 {text} 不在 F 中", generator=text)


def check_tower(F: IntermediateField, E: IntermediateField, K: IntermediateField) -> None:
    """K ⊆ E ⊆ F,否则抛 NotATower"""
    _same_ambient(F, E, K)
    if not E.contains_field(K):
        raise NotATower("K ⊄ E")
    if not F.contains_field(E):
        raise NotATower("E ⊄ F")


def degree_over(F: IntermediateField, K: IntermediateField) -> int:
    """[F:K]"""
    check_subfield(F, K)
    return F.dim // K.dim


def exponent(F: IntermediateField, K: IntermediateField) -> int:
    """最小的 n 使 F 的每个基元素的 p^n 次幂都在 K 中"""
    check_subfield(F, K)
    if F.dim == K.dim:
        return 0
    n = 0
    elements = list(F.multipliers) or list(F.basis_elements)
    # 生成元的 p^n 次幂都在 K 中当且仅当 F^{p^n} ⊆ K
    while True:
        n += 1
        if all(K.contains(g.frobenius(n)) for g in elements):
            return n


def element_degree(alpha: RatFunc, K: IntermediateField) -> int:
    """[K(α):K]"""
    return K.adjoin([alpha]).dim // K.dim


def element_exponent(alpha: RatFunc, K: IntermediateField) -> int:
    """最小的 n 使 α^{p^n} ∈ K"""
    n = 0
    power = alpha
    while not K.contains(power):
        n += 1
        power = power.frobenius(1)
    return n


def intersection(E1: IntermediateField, E2: IntermediateField) -> IntermediateField:
    """行空间之交,自动是域"""
    _same_ambient(E1, E2)
    ambient = E1.ambient
    rows = E1.space.rows()
    residuals = [E2.space.reduce(r) for r in rows]
    space = EchelonSpace(ambient.field, ambient.dimension)
    for relation in left_kernel(ambient.field, residuals, ambient.dimension):
        vec: Vector = {}
        for i, c in relation.items():
            for j, v in rows[i].items():
                s = vec.get(j)
                vec[j] = c * v if s is None else s + c * v
        space.add({j: v for j, v in vec.items() if not v.is_zero()})
    return IntermediateField.from_space(ambient, space)


def compositum(E1: IntermediateField, E2: IntermediateField) -> IntermediateField:
    _same_ambient(E1, E2)
    return E1.adjoin(E2.multipliers)


def compositum_with_frobenius(F: IntermediateField, K: IntermediateField, i: int = 1) -> IntermediateField:
    """K·F^{p^i}"""
    _same_ambient(F, K)
    return K.adjoin([g.frobenius(i) for g in F.multipliers])


def rebase(E: IntermediateField, ambient: AmbientField) -> IntermediateField:
    """同一个域放到指数上界更大的环境域里"""
    if ambient.e < E.ambient.e or ambient.names != E.ambient.names or ambient.p != E.ambient.p:
        raise ConfigError(f"无法把 {E.ambient} 上的域加细到 {ambient}")
    if ambient == E.ambient:
        return E
    base_gens = [ambient.var(j).frobenius(E.ambient.e) for j in range(ambient.nvars)]
    return ambient.base().adjoin(base_gens + list(E.multipliers))


def frobenius_image(F: IntermediateField, i: int) -> IntermediateField:
    """F^{p^i};若它不含 B 则放到 e+i 的环境域中"""
    ambient = F.ambient
    if i == 0:
        return F
    if i <= ambient.e:
        lower = [ambient.var(j).frobenius(ambient.e - i) for j in range(ambient.nvars)]
        if all(F.contains(x) for x in lower):
            return ambient.base().adjoin([g.frobenius(i) for g in F.multipliers])
    wider = ambient.rebase(ambient.e + i)
    logger.debug("F^{p^%d} 不含 B,加细环境域到 e=%d", i, wider.e)
    return wider.base().adjoin([g.frobenius(i) for g in F.multipliers])


def random_element(F: IntermediateField, rng: random.Random, max_terms: int = 3) -> RatFunc:
    """F 中基元素的随机 F_p-组合(非零)"""
    pool = list(F.sorted_basis) or [F.ambient.field.one]
    p = F.ambient.p
    while True:
        k = rng.randint(1, min(max_terms, len(pool)))
        picks = rng.sample(range(len(pool)), k)
        total = F.ambient.field.zero
        for idx in sorted(picks):
            total = total + pool[idx] * rng.randint(1, p - 1)
        if not total.is_zero():
            return total


# ---------------------------------------------------------------------------
# 三角表现
# ---------------------------------------------------------------------------


class _KBasisSolver:
    """在 {κ_k·u^a} 上做 B-线性求解,把 F 的元素写成 Σ λ_a u^a, λ_a ∈ K"""

    def __init__(self, K: IntermediateField, gens: Sequence[RatFunc], degs: Sequence[int]):
        ambient = K.ambient
        self.ambient = ambient
        self.kappa = K.basis_elements
        self.monomials: List[Monomial] = list(itertools.product(*[range(d) for d in degs]))
        self.powers = _MonomialPowers(ambient.field, gens)
        self.space = EchelonSpace(ambient.field, ambient.dimension, track=True)
        for a in self.monomials:
            ua = self.powers(a)
            for k, kappa in enumerate(self.kappa):
                self.space.add(ambient.coord(kappa * ua), label=(a, k))

    def solve(self, v: RatFunc) -> Optional[Dict[Monomial, RatFunc]]:
        combo = self.space.express(self.ambient.coord(v))
        if combo is None:
            return None
        out: Dict[Monomial, RatFunc] = {}
        e = self.ambient.e
        for (a, k), r in combo.items():
            term = r.frobenius(e) * self.kappa[k]
            s = out.get(a)
            out[a] = term if s is None else s + term
        return {a: c for a, c in out.items() if not c.is_zero()}


class _MonomialPowers:
    """u^a 的带缓存求值"""

    def __init__(self, field: FunctionField, gens: Sequence[RatFunc]):
        self.field = field
        self.gens = tuple(gens)
        self._cache: Dict[Monomial, RatFunc] = {}

    def __call__(self, a: Monomial) -> RatFunc:
        if any(a[len(self.gens):]):
            raise IndexError("单项式超出生成元个数")
        a = tuple(a[: len(self.gens)])
        hit = self._cache.get(a)
        if hit is not None:
            return hit
        if not any(a):
            value = self.field.one
        else:
            j = max(i for i, x in enumerate(a) if x)
            prev = list(a)
            prev[j] -= 1
            value = self(tuple(prev)) * self.gens[j]
        self._cache[a] = value
        return value


@dataclass(frozen=True, eq=False)
class TriangularPresentation:
    """F = K(u_1..u_n),u_i^{p^{e_i}} = c_i(u_1..u_{i-1})。

    ``tails[i]`` 是 n 个未定元上的 XPoly,只含 X_1..X_{i-1},系数在 K 中。
    """

    K: IntermediateField
    F: IntermediateField
    gens: Tuple[RatFunc, ...]
    exps: Tuple[int, ...]
    tails: Tuple[XPoly, ...]

    @property
    def n(self) -> int:
        return len(self.gens)

    @property
    def field(self) -> FunctionField:
        return self.K.ambient.field

    @property
    def degrees(self) -> Tuple[int, ...]:
        p = self.K.ambient.p
        return tuple(p**e for e in self.exps)

    @property
    def degree(self) -> int:
        out = 1
        for d in self.degrees:
            out *= d
        return out

    @cached_property
    def power(self) -> _MonomialPowers:
        return _MonomialPowers(self.field, self.gens)

    @cached_property
    def solver(self) -> _KBasisSolver:
        return _KBasisSolver(self.K, self.gens, self.degrees)

    def monomials(self) -> List[Monomial]:
        return list(itertools.product(*[range(d) for d in self.degrees]))

    def relation(self, i: int) -> XPoly:
        """P_i = X_i^{p^{e_i}} − c_i"""
        lead = [0] * self.n
        lead[i] = self.degrees[i]
        return XPoly(self.field, self.n, {tuple(lead): self.field.one}) - self.tails[i]

    def evaluate(self, poly: XPoly) -> RatFunc:
        return poly.evaluate(self.power)

    def restrict(self, m: int, E: IntermediateField) -> "TriangularPresentation":
        """E = K(u_1..u_m) 时,F/E 的表现:把尾项中的 X_1..X_m 代入 u_1..u_m"""
        n = self.n
        tails = []
        for i in range(m, n):
            terms: Dict[Monomial, RatFunc] = {}
            for a, lam in self.tails[i].terms.items():
                coeff = lam * self.power(a[:m] + (0,) * (n - m))
                key = a[m:]
                s = terms.get(key)
                terms[key] = coeff if s is None else s + coeff
            tails.append(XPoly(self.field, n - m, terms))
        return TriangularPresentation(E, self.F, self.gens[m:], self.exps[m:], tuple(tails))


def triangular_presentation(
    F: IntermediateField,
    K: IntermediateField,
    gens: Optional[Sequence[RatFunc]] = None,
) -> TriangularPresentation:
    """构造 F/K 的三角表现;不给 gens 时用贪心极小生成元列表。

    Raises:
        NotASubfield: K ⊄ F
        GeneratorsInsufficient: 给定的生成元生成不了 F
    """
    check_subfield(F, K)
    if gens is None:
        # 默认表现按 (F, K) 复用,同一对域上的导子因此共享同一个表现对象
        return _PRESENTATIONS.get_or_compute(
            (F, K), lambda: _build_presentation(F, K, minimal_generator_count(F, K).generators)
        )
    gens = list(gens)
    for g in gens:
        if not F.contains(g):
            raise GeneratorsInsufficient(f"生成元 {format_ratfunc(g)} 不在 F 中")
    return _build_presentation(F, K, gens)


_PRESENTATIONS: MemoCache[TriangularPresentation] = MemoCache("default_presentation", max_size=256)


def _build_presentation(F: IntermediateField, K: IntermediateField, gens: Sequence[RatFunc]) -> TriangularPresentation:
    p = K.ambient.p
    current = K
    kept: List[RatFunc] = []
    exps: List[int] = []
    raw_tails: List[Dict[Monomial, RatFunc]] = []
    for g in gens:
        if current.contains(g):
            logger.warning("生成元 %s 已在 K(u_<i) 中,跳过", format_ratfunc(g))
            continue
        k = 1
        power = g.frobenius(1)
        while not current.contains(power):
            k += 1
            power = power.frobenius(1)
        solver = _KBasisSolver(K, kept, [p**e for e in exps])
        lam = solver.solve(power)
        if lam is None:
            raise NotInField(f"{format_ratfunc(power)} 无法在 K(u_<i) 的单项式基下展开")
        kept.append(g)
        exps.append(k)
        raw_tails.append(lam)
        current = current.adjoin([g])
    if current.dim != F.dim:
        raise GeneratorsInsufficient(f"生成元只生成了维数 {current.dim} 的子域, F 的维数为 {F.dim}")
    n = len(kept)
    tails = tuple(
        XPoly(K.ambient.field, n, {a + (0,) * (n - len(a)): c for a, c in lam.items()}) for lam in raw_tails
    )
    pres = TriangularPresentation(K, F, tuple(kept), tuple(exps), tails)
    logger.info("三角表现: n=%d, 指数 %s, [F:K]=%d", n, exps, pres.degree)
    return pres


_EXPANSIONS: MemoCache[Dict[Monomial, RatFunc]] = MemoCache("express_in_basis", max_size=16384)


def express_in_basis(v: RatFunc, pres: TriangularPresentation) -> Dict[Monomial, RatFunc]:
    """v = Σ_a λ_a u^a, λ_a ∈ K;只返回非零系数。

    Raises:
        NotInField: v ∉ F
    """

    def compute() -> Dict[Monomial, RatFunc]:
        lam = pres.solver.solve(v)
        if lam is None:
            raise NotInField(f"{format_ratfunc(v)} 不在 F 中")
        return lam

    return _EXPANSIONS.get_or_compute((pres, v), compute)


def expansion_cache_stats() -> dict:
    return _EXPANSIONS.get_cache_stats()


# ---------------------------------------------------------------------------
# 生成元个数
# ---------------------------------------------------------------------------


class GeneratorCount(NamedTuple):
    count: int
    generators: List[RatFunc]


def minimal_generator_count(F: IntermediateField, K: IntermediateField) -> GeneratorCount:
    """F/K 的最少生成元个数与一组贪心极小生成元。

    S 生成 F/K 当且仅当 S 生成 F/K·F^p,因此在 F 的基上贪心挑选不落在
    K·F^p(已选元素) 中的元素即可,所得个数与顺序无关。
    """
    check_subfield(F, K)
    frattini = compositum_with_frobenius(F, K, 1)
    chosen: List[RatFunc] = []
    for cand in F.sorted_basis:
        if frattini.dim == F.dim:
            break
        if not frattini.contains(cand):
            chosen.append(cand)
            frattini = frattini.adjoin([cand])
    logger.info("极小生成元个数 %d", len(chosen))
    return GeneratorCount(len(chosen), chosen)


# ---------------------------------------------------------------------------
# 线性无交
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Disjoint:
    """E1 与 E2 在 C = E1 ∩ E2 上线性无交"""

    intersection_dim: int
    c_basis: Tuple[RatFunc, ...]

    disjoint = True


@dataclass(frozen=True)
class Dependence:
    """C-线性无关的 b_1..b_k ∈ E1 满足 Σ μ_j b_j = 0,μ_j ∈ E2 不全为零"""

    elements: Tuple[RatFunc, ...]
    coefficients: Tuple[RatFunc, ...]
    intersection_dim: int

    disjoint = False


DisjointnessResult = Union[Disjoint, Dependence]


def c_basis(E1: IntermediateField, C: IntermediateField) -> List[RatFunc]:
    """E1 在子域 C 上的一组贪心基"""
    _same_ambient(E1, C)
    ambient = E1.ambient
    span = EchelonSpace(ambient.field, ambient.dimension)
    chosen: List[RatFunc] = []
    target = E1.dim // C.dim
    for b in (ambient.field.one,) + E1.sorted_basis:
        if len(chosen) == target:
            break
        if span.contains(ambient.coord(b)):
            continue
        chosen.append(b)
        for kappa in C.basis_elements:
            span.add(ambient.coord(kappa * b))
    return chosen


def linear_disjointness(E1: IntermediateField, E2: IntermediateField) -> DisjointnessResult:
    """判定 E1, E2 是否在 C = E1 ∩ E2 上线性无交,否则给出相关性证书"""
    _same_ambient(E1, E2)
    ambient = E1.ambient
    C = intersection(E1, E2)
    basis = c_basis(E1, C)
    kappa = E2.basis_elements
    space = EchelonSpace(ambient.field, ambient.dimension, track=True)
    for j, b in enumerate(basis):
        for l, k in enumerate(kappa):
            space.add(ambient.coord(k * b), label=(j, l))
            if space.relations:
                relation = space.relations[0]
                mu: Dict[int, RatFunc] = {}
                for (jj, ll), r in relation.items():
                    term = r.frobenius(ambient.e) * kappa[ll]
                    s = mu.get(jj)
                    mu[jj] = term if s is None else s + term
                used = sorted(jj for jj, c in mu.items() if not c.is_zero())
                logger.info("线性相关: %d 个 C-无关元素在 E2 上相关", len(used))
                return Dependence(
                    tuple(basis[jj] for jj in used),
                    tuple(mu[jj] for jj in used),
                    C.dim,
                )
    return Disjoint(C.dim, tuple(basis))
