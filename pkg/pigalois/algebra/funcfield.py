"""有理函数域 A = F_p(x_1, ..., x_N) 上的精确运算。

多项式直接使用 ``sympy.polys.rings`` 在 ``GF(p)`` 上、按 grlex 序
(x_1 > ... > x_N)建的稀疏多项式环;本模块只负责分式的规范形、
偏导、Frobenius 幂与 Frobenius 下降。

规范形约定:
- 分子分母互素(每次运算后用精确 gcd 约分);
- 分母在 grlex 序下首项系数为 1;
- 零统一写作 0/1。
"""

from __future__ import annotations

import logging
from typing import Dict, Iterable, Optional, Sequence, Tuple

from sympy import isprime
from sympy.polys.domains import GF
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from ..errors import ConfigError, DivisionByZero

logger = logging.getLogger(__name__)

# 类型别名:系数是 GF(p) 的元素,多项式是 sympy 的 PolyElement
PrimeScalar = object
MultiPoly = PolyElement
Monomial = Tuple[int, ...]

# sympy 新版本不再缓存 PolyRing,这里按 (p, 变量名) 自己缓存
_RINGS: Dict[Tuple[int, Tuple[str, ...]], PolyRing] = {}


def _poly_ring(p: int, names: Tuple[str, ...]) -> PolyRing:
    ring = _RINGS.get((p, names))
    if ring is None:
        ring = _RINGS[(p, names)] = PolyRing(names, GF(p), grlex)
    return ring


class FunctionField:
    """环境有理函数域 F_p(x_1, ..., x_N)。

    同一组 (p, 变量名) 共享同一个多项式环对象(见 ``_RINGS``),因此两个
    ``FunctionField`` 只要参数相同,它们的元素就可以互相运算。
    """

    def __init__(self, p: int, names: Sequence[str]):
        if not isinstance(p, int) or p < 2 or not isprime(p):
            raise ConfigError(f"特征 p={p!r} 不是素数")
        names = tuple(names)
        if not names:
            raise ConfigError("至少需要一个变量")
        if len(set(names)) != len(names):
            raise ConfigError(f"变量名重复: {names}")
        self.p = p
        self.names = names
        self.ring: PolyRing = _poly_ring(p, names)
        self.domain = self.ring.domain
        self.zero = RatFunc(self.ring.zero, self.ring.one)
        self.one = RatFunc(self.ring.one, self.ring.one)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def var(self, index: int) -> "RatFunc":
        """第 index 个变量 x_{index+1}"""
        return RatFunc(self.ring.gens[index], self.ring.one)

    def const(self, value: int) -> "RatFunc":
        """整数常数(模 p 约化)"""
        return ratfunc_normalize(self.ring.ground_new(self.domain(value)), self.ring.one)

    def monomial(self, exps: Monomial, coeff: int = 1) -> "RatFunc":
        return ratfunc_normalize(self.ring.from_dict({tuple(exps): self.domain(coeff)}), self.ring.one)

    def from_poly(self, num: MultiPoly, den: Optional[MultiPoly] = None) -> "RatFunc":
        return ratfunc_normalize(num, self.ring.one if den is None else den)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FunctionField) and self.ring == other.ring

    def __hash__(self) -> int:
        return hash((self.p, self.names))

    def __repr__(self) -> str:
        return f"FunctionField(p={self.p}, names={self.names})"


class RatFunc:
    """规范化的有理函数,值语义且不可变。"""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: MultiPoly, den: MultiPoly):
        # 只在内部使用:调用方保证 (num, den) 已是规范形
        self.num = num
        self.den = den
        self._hash: Optional[int] = None

    # -- 基本属性 ---------------------------------------------------------

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    @property
    def p(self) -> int:
        return self.num.ring.domain.mod

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == self.den

    def is_constant(self) -> bool:
        return self.num.is_ground and self.den.is_ground

    def is_polynomial(self) -> bool:
        return self.den.is_ground

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = _const_like(self, other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def sort_key(self) -> tuple:
        """确定性的排序键:总次数小者在前,再比较 grlex 下的项"""
        return (
            _total_degree(self.num) + _total_degree(self.den),
            len(self.num) + len(self.den),
            _terms_key(self.num),
            _terms_key(self.den),
        )

    # -- 域运算 -----------------------------------------------------------

    def __add__(self, other: "RatFunc | int") -> "RatFunc":
        if isinstance(other, int):
            other = _const_like(self, other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            return ratfunc_normalize(a + c, b)
        g = b.gcd(d)
        if g.is_ground:
            # 分母互素时结果自动既约
            return RatFunc(a * d + c * b, b * d)
        b1, d1 = _exquo(b, g), _exquo(d, g)
        num = a * d1 + c * b1
        if not num:
            return RatFunc(self.ring.zero, self.ring.one)
        h, num2, g2 = num.cofactors(g)
        return _monic_pair(num2, g2 * b1 * d1)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: "RatFunc | int") -> "RatFunc":
        if isinstance(other, int):
            other = _const_like(self, other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> "RatFunc":
        return _const_like(self, other) - self

    def __mul__(self, other: "RatFunc | int") -> "RatFunc":
        if isinstance(other, int):
            other = _const_like(self, other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if not self.num or not other.num:
            return RatFunc(self.ring.zero, self.ring.one)
        a, b, c, d = self.num, self.den, other.num, other.den
        if b.is_ground and d.is_ground:
            return RatFunc(a * c, b)
        if not d.is_ground:
            g1, a, d = a.cofactors(d)
        if not b.is_ground:
            g2, c, b = c.cofactors(b)
        return _monic_pair(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise DivisionByZero("有理函数除以零")
        return _monic_pair(self.den, self.num)

    def __truediv__(self, other: "RatFunc | int") -> "RatFunc":
        if isinstance(other, int):
            other = _const_like(self, other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: int) -> "RatFunc":
        return _const_like(self, other) / self

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return RatFunc(self.ring.one, self.ring.one)
        # 互素的分子分母的幂仍互素,首一分母的幂仍首一
        return RatFunc(self.num**k, self.den**k)

    # -- 特征 p 专有运算 --------------------------------------------------

    def frobenius(self, e: int = 1) -> "RatFunc":
        """f^{p^e};系数在 F_p 中被 Frobenius 固定,只需放大指数"""
        if e == 0 or not self.num:
            return self
        q = self.p**e
        return RatFunc(_inflate(self.num, q), _inflate(self.den, q))

    def diff(self, var: int) -> "RatFunc":
        return partial_derivative(self, var)

    def descent(self, e: int) -> Dict[Monomial, "RatFunc"]:
        return frobenius_descent(self, e)

    def root(self, e: int) -> Optional["RatFunc"]:
        return is_pe_power(self, e)

    def __str__(self) -> str:
        return format_ratfunc(self)

    def __repr__(self) -> str:
        return f"RatFunc({format_ratfunc(self)!s})"


# ---------------------------------------------------------------------------
# 规范化
# ---------------------------------------------------------------------------


def ratfunc_normalize(num: MultiPoly, den: MultiPoly) -> RatFunc:
    """把 (num, den) 化为规范形。

    Raises:
        DivisionByZero: 分母(模 p 约化后)为零
    """
    if not den:
        raise DivisionByZero("分母为零")
    if not num:
        return RatFunc(num.ring.zero, num.ring.one)
    if den.is_ground:
        return RatFunc(num.quo_ground(den.LC), num.ring.one)
    _, num, den = num.cofactors(den)
    return _monic_pair(num, den)


def _monic_pair(num: MultiPoly, den: MultiPoly) -> RatFunc:
    lc = den.LC
    if lc != den.ring.domain.one:
        num = num.quo_ground(lc)
        den = den.quo_ground(lc)
    return RatFunc(num, den)


def _exquo(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    # f, g 均首一且 g | f
    _, q, _ = f.cofactors(g)
    return q


def _const_like(f: RatFunc, value: int) -> RatFunc:
    ring = f.ring
    return RatFunc(ring.ground_new(ring.domain(value)), ring.one)


def _inflate(poly: MultiPoly, q: int) -> MultiPoly:
    return poly.ring.from_dict({tuple(q * a for a in monom): coeff for monom, coeff in poly.iterterms()})


def _total_degree(poly: MultiPoly) -> int:
    return max((sum(m) for m in poly.itermonoms()), default=0)


def _terms_key(poly: MultiPoly) -> tuple:
    return tuple((tuple(-a for a in monom), int(coeff)) for monom, coeff in poly.terms())


# ---------------------------------------------------------------------------
# 偏导、Frobenius 下降
# ---------------------------------------------------------------------------


def poly_diff(poly: PolyElement, x: PolyElement) -> PolyElement:
    """sympy 的 ``diff`` 在特征 p 下会留下系数为 0 的项,这里去掉"""
    out = poly.diff(x)
    out.strip_zero()
    return out


def partial_derivative(f: RatFunc, var: int) -> RatFunc:
    """形式偏导 ∂f/∂x_{var+1},商法则后重新规范化"""
    ring = f.ring
    if not 0 <= var < ring.ngens:
        raise IndexError(f"变量下标越界: {var}")
    x = ring.gens[var]
    dn = poly_diff(f.num, x)
    if f.den.is_ground:
        return RatFunc(dn, ring.one)
    dd = poly_diff(f.den, x)
    return ratfunc_normalize(dn * f.den - f.num * dd, f.den * f.den)


def frobenius_descent(f: RatFunc, e: int) -> Dict[Monomial, RatFunc]:
    """把 f 写成 Σ_a (c_a)^{p^e} x^a,a ∈ [0, p^e)^N。

    做法:f = n/d = n·d^{q-1} / d^q,把分子 n·d^{q-1} 的单项式 x^{qb+a}
    按余数 a 分组,得到 c_a = (Σ coef·x^b) / d。只返回非零的 c_a。
    """
    if e < 1:
        raise ValueError("e 必须为正整数")
    ring = f.ring
    if not f.num:
        return {}
    q = ring.domain.mod**e
    numer = f.num if f.den.is_ground else f.num * f.den ** (q - 1)
    groups: Dict[Monomial, Dict[Monomial, object]] = {}
    for monom, coeff in numer.iterterms():
        rem = tuple(a % q for a in monom)
        quo = tuple(a // q for a in monom)
        groups.setdefault(rem, {})[quo] = coeff
    result: Dict[Monomial, RatFunc] = {}
    for rem in sorted(groups):
        part = ring.from_dict(groups[rem])
        result[rem] = ratfunc_normalize(part, f.den)
    return result


def frobenius_assemble(parts: Dict[Monomial, RatFunc], e: int, field: FunctionField) -> RatFunc:
    """frobenius_descent 的逆:Σ_a (c_a)^{p^e} x^a"""
    total = field.zero
    for monom, coeff in parts.items():
        total = total + coeff.frobenius(e) * field.monomial(monom)
    return total


def is_pe_power(f: RatFunc, e: int) -> Optional[RatFunc]:
    """若 f 是某个 g 的 p^e 次幂则返回 g,否则返回 None"""
    q = f.p**e
    if not f.num:
        return f
    for poly in (f.num, f.den):
        if any(a % q for monom in poly.itermonoms() for a in monom):
            return None
    return RatFunc(_deflate(f.num, q), _deflate(f.den, q))


def _deflate(poly: MultiPoly, q: int) -> MultiPoly:
    return poly.ring.from_dict({tuple(a // q for a in monom): coeff for monom, coeff in poly.iterterms()})


# ---------------------------------------------------------------------------
# 规范打印
# ---------------------------------------------------------------------------


def format_poly(poly: MultiPoly) -> str:
    """按 grlex 降序打印多项式,系数取最小非负剩余"""
    if not poly:
        return "0"
    names = [str(s) for s in poly.ring.symbols]
    mod = poly.ring.domain.mod
    pieces = []
    for monom, coeff in poly.terms():
        c = int(coeff) % mod
        factors = []
        for name, a in zip(names, monom):
            if a == 1:
                factors.append(name)
            elif a > 1:
                factors.append(f"{name}^{a}")
        if not factors:
            pieces.append(str(c))
        elif c == 1:
            pieces.append("*".join(factors))
        else:
            pieces.append("*".join([str(c)] + factors))
    return " + ".join(pieces)


def format_ratfunc(f: RatFunc) -> str:
    """规范打印;输出总能被表达式文法重新解析成相等的值"""
    num = format_poly(f.num)
    if f.den.is_ground:
        return num
    if len(f.num) > 1:
        num = f"({num})"
    den = format_poly(f.den)
    single_var = len(f.den) == 1 and sum(1 for a in f.den.leading_expv() if a) == 1
    if not single_var:
        den = f"({den})"
    return f"{num}/{den}"


def ratfunc_sum(terms: Iterable[RatFunc], field: FunctionField) -> RatFunc:
    total = field.zero
    for t in terms:
        total = total + t
    return total
