"""以有理函数为系数的多项式 Σ λ_a X^a。

三角表现的尾项 c_i、元素在单项式基下的展开 Σ λ_a u^a,以及表现之间的
比较映射都用它表示。底层是 sympy 的 ``PolyRing``,系数域是环境多项式环
的分式域 ``FracField``;本模块只补上 sympy 没有的几样:系数的 Frobenius、
把 X 代成具体元素求值、按某个未定元的次数拆分,以及打印。

sympy 分式的内部形式与 :class:`RatFunc` 的规范形不同,所以系数比较一律
先转回 ``RatFunc``。
"""

from __future__ import annotations

from typing import Callable, Dict, Mapping, Sequence, Tuple

from sympy import Dummy
from sympy.polys.fields import FracElement, FracField
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from .funcfield import FunctionField, Monomial, RatFunc, poly_diff, ratfunc_normalize


class XRing:
    """K(x)[X_1..X_n]:n 个未定元,系数在环境函数域里"""

    def __init__(self, field: FunctionField, nvars: int):
        self.field = field
        self.nvars = nvars
        self.frac = FracField(field.ring.symbols, field.domain, grlex)
        # Dummy 保证未定元不会和环境变量重名
        symbols = tuple(Dummy(f"X{i + 1}") for i in range(nvars))
        self.ring = PolyRing(symbols, self.frac.to_domain(), grlex)

    def to_coeff(self, c: RatFunc) -> FracElement:
        return self.frac.raw_new(c.num, c.den)

    def from_coeff(self, c: FracElement) -> RatFunc:
        return ratfunc_normalize(c.numer, c.denom)


_XRINGS: Dict[Tuple[FunctionField, int], XRing] = {}


def x_ring(field: FunctionField, nvars: int) -> XRing:
    ring = _XRINGS.get((field, nvars))
    if ring is None:
        ring = _XRINGS[(field, nvars)] = XRing(field, nvars)
    return ring


class XPoly:
    """n 个未定元上的稀疏多项式,不可变"""

    __slots__ = ("xring", "poly", "_terms")

    def __init__(self, field: FunctionField, nvars: int, terms: Mapping[Monomial, RatFunc] = ()):
        xring = x_ring(field, nvars)
        poly = xring.ring.from_dict({tuple(m): xring.to_coeff(c) for m, c in dict(terms).items() if not c.is_zero()})
        self._set(xring, poly)

    def _set(self, xring: XRing, poly: PolyElement) -> None:
        self.xring = xring
        self.poly = poly
        self._terms = None

    @classmethod
    def _wrap(cls, xring: XRing, poly: PolyElement) -> "XPoly":
        out = cls.__new__(cls)
        out._set(xring, poly)
        return out

    @classmethod
    def constant(cls, field: FunctionField, nvars: int, value: RatFunc) -> "XPoly":
        return cls(field, nvars, {(0,) * nvars: value})

    @property
    def field(self) -> FunctionField:
        return self.xring.field

    @property
    def nvars(self) -> int:
        return self.xring.nvars

    @property
    def terms(self) -> Dict[Monomial, RatFunc]:
        """非零项 {指数: 系数},系数是规范形的 RatFunc"""
        if self._terms is None:
            from_coeff = self.xring.from_coeff
            self._terms = {m: from_coeff(c) for m, c in self.poly.iterterms()}
        return self._terms

    # -- 运算 -------------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.poly)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, XPoly) and self.xring is other.xring and self.terms == other.terms

    __hash__ = None

    def __add__(self, other: "XPoly") -> "XPoly":
        return XPoly._wrap(self.xring, self.poly + other.poly)

    def __neg__(self) -> "XPoly":
        return XPoly._wrap(self.xring, -self.poly)

    def __sub__(self, other: "XPoly") -> "XPoly":
        return XPoly._wrap(self.xring, self.poly - other.poly)

    def __mul__(self, other: "XPoly | RatFunc") -> "XPoly":
        if isinstance(other, RatFunc):
            return XPoly._wrap(self.xring, self.poly.mul_ground(self.xring.to_coeff(other)))
        return XPoly._wrap(self.xring, self.poly * other.poly)

    def diff(self, index: int) -> "XPoly":
        return XPoly._wrap(self.xring, poly_diff(self.poly, self.xring.ring.gens[index]))

    def frobenius(self, e: int) -> "XPoly":
        """(Σ λ_a X^a)^{p^e} = Σ λ_a^{p^e} X^{p^e a}(特征 p)"""
        q = self.field.p**e
        xr = self.xring
        return XPoly._wrap(
            xr,
            xr.ring.from_dict(
                {tuple(q * a for a in m): xr.to_coeff(c.frobenius(e)) for m, c in self.terms.items()}
            ),
        )

    def evaluate(self, power: Callable[[Monomial], RatFunc]) -> RatFunc:
        """代入求值;``power(a)`` 给出 u^a 的值"""
        total = self.field.zero
        for m, c in self.terms.items():
            total = total + c * power(m)
        return total

    def split_by_degree(self, index: int, bound: int) -> Tuple["XPoly", "XPoly"]:
        """按第 index 个未定元的次数是否 ≥ bound 拆成 (高, 低) 两部分,高部分除去 X^bound"""
        high = {}
        low = {}
        for m, c in self.poly.iterterms():
            if m[index] >= bound:
                m2 = list(m)
                m2[index] -= bound
                high[tuple(m2)] = c
            else:
                low[m] = c
        ring = self.xring.ring
        return XPoly._wrap(self.xring, ring.from_dict(high)), XPoly._wrap(self.xring, ring.from_dict(low))

    def format(self, names: Sequence[str], render: Callable[[RatFunc], str]) -> str:
        if not self.poly:
            return "0"
        pieces = []
        for m, c in sorted(self.terms.items(), key=lambda item: (-sum(item[0]), tuple(-a for a in item[0]))):
            mon = "*".join(n if a == 1 else f"{n}^{a}" for n, a in zip(names, m) if a)
            coeff = render(c)
            if not mon:
                pieces.append(f"({coeff})")
            elif c.is_one():
                pieces.append(mon)
            else:
                pieces.append(f"({coeff})*{mon}")
        return " + ".join(pieces)
