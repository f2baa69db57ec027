"""限制李代数公理与锚方程的随机检验。

对 g 中随机元素 D1, D2 以及 λ ∈ K 检查:

1. (λD1)^{[p]} = λ^p D1^{[p]}
2. ad(D1^{[p]}) = ad(D1)^p(作用在 D2 上)
3. (D1+D2)^{[p]} = D1^{[p]} + D2^{[p]} + Σ_{i=1}^{p-1} s_i(D1, D2),
   i·s_i 是 ad(tD1+D2)^{p-1}(D1) 中 t^{i-1} 的系数

另外对 λ ∈ F 检查 Hochschild 公式与锚方程 [D1, φD2] = φ[D1,D2] + D1(φ)D2,
并对第三个随机元素检查 Jacobi 恒等式。
"""

from __future__ import annotations

import hashlib
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Sequence

from ..algebra.funcfield import RatFunc
from ..errors import UnsupportedPrime
from ..fields.tower import IntermediateField, random_element
from .algebroid import RestrictedLieAlgebroid
from .derivations import Derivation, apply_derivation, bracket, compose_power, p_power

logger = logging.getLogger(__name__)

DEFAULT_SUPPORTED_PRIMES = (2, 3, 5)


def trial_rng(seed: int, index: int, tag: str = "") -> random.Random:
    """由 (seed, 试验序号) 确定地派生每次试验的随机源"""
    digest = hashlib.blake2b(f"{seed}:{index}:{tag}".encode(), digest_size=8).digest()
    return random.Random(int.from_bytes(digest, "big"))


def s_terms(D1: Derivation, D2: Derivation) -> List[Derivation]:
    """[s_1, ..., s_{p-1}]:把 ad(tD1+D2)^{p-1}(D1) 展开成 t 的多项式"""
    p = D1.pres.field.p
    coeffs: List[Derivation] = [D1]
    for _ in range(p - 1):
        new = [Derivation.zero(D1.pres) for _ in range(len(coeffs) + 1)]
        for k, c in enumerate(coeffs):
            new[k] = new[k] + bracket(D2, c)
            new[k + 1] = new[k + 1] + bracket(D1, c)
        coeffs = new
    field_ = D1.pres.field
    # i 在 1..p-1 范围内模 p 可逆
    return [coeffs[i - 1] * field_.const(i).inverse() for i in range(1, p)]


def scalar_homogeneity(D: Derivation, lam: RatFunc) -> bool:
    """(λD)^{[p]} = λ^p D^{[p]},λ ∈ K"""
    return p_power(D * lam) == p_power(D) * lam.frobenius(1)


def ad_compatibility(D1: Derivation, D2: Derivation) -> bool:
    """[D1^{[p]}, D2] = ad(D1)^p(D2)"""
    p = D1.pres.field.p
    lhs = bracket(p_power(D1), D2)
    rhs = D2
    for _ in range(p):
        rhs = bracket(D1, rhs)
    return lhs == rhs


def jacobson_sum(D1: Derivation, D2: Derivation) -> bool:
    total = p_power(D1) + p_power(D2)
    for s in s_terms(D1, D2):
        total = total + s
    return p_power(D1 + D2) == total


def hochschild_check(D: Derivation, lam: RatFunc) -> bool:
    """(λD)^{[p]} = λ^p D^{[p]} + (λD)^{p-1}(λ)·D,λ ∈ F"""
    p = D.pres.field.p
    lamD = D * lam
    correction = compose_power(lamD, lam, p - 1)
    return p_power(lamD) == p_power(D) * lam.frobenius(1) + D * correction


def anchor_leibniz_check(D1: Derivation, D2: Derivation, phi: RatFunc) -> bool:
    """[D1, φD2] = φ[D1, D2] + D1(φ)·D2"""
    return bracket(D1, D2 * phi) == bracket(D1, D2) * phi + D2 * apply_derivation(D1, phi)


def jacobi_check(D1: Derivation, D2: Derivation, D3: Derivation) -> bool:
    total = bracket(bracket(D1, D2), D3) + bracket(bracket(D2, D3), D1) + bracket(bracket(D3, D1), D2)
    return total.is_zero()


@dataclass
class AxiomReport:
    trials: int
    passed: Dict[str, int] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def random_derivation(g: RestrictedLieAlgebroid, rng: random.Random) -> Derivation:
    """g 的基的随机组合,系数取 F_p 常数或 F 中的随机元素"""
    F = g.pres.F
    f = g.pres.field
    total = Derivation.zero(g.pres)
    for D in g.basis:
        if rng.random() < 0.5:
            coeff = f.const(rng.randint(0, f.p - 1))
        else:
            coeff = random_element(F, rng, max_terms=2)
        total = total + D * coeff
    return total


def _random_scalar(E: IntermediateField, rng: random.Random) -> RatFunc:
    ambient = E.ambient
    pool = list(E.sorted_basis) + [ambient.var(j).frobenius(ambient.e) for j in range(ambient.nvars)]
    lam = pool[rng.randrange(len(pool))]
    return lam + ambient.field.const(rng.randint(0, ambient.p - 1))


def verify_restricted_axioms(
    g: RestrictedLieAlgebroid,
    trials: int,
    seed: int,
    supported_primes: Sequence[int] = DEFAULT_SUPPORTED_PRIMES,
) -> AxiomReport:
    """在随机元素上检查三条公理、Hochschild 公式与锚方程

    Raises:
        UnsupportedPrime: p 不在支持范围内
    """
    p = g.pres.field.p
    if p not in supported_primes:
        raise UnsupportedPrime(f"p={p} 不在支持的素数 {list(supported_primes)} 中")
    report = AxiomReport(trials=0)
    names = ("scalar", "ad", "sum", "hochschild", "anchor", "jacobi")
    report.passed = {name: 0 for name in names}
    if g.dim == 0:
        logger.info("g = 0,公理检验平凡通过")
        return report
    for t in range(trials):
        rng = trial_rng(seed, t, "axioms")
        D1 = random_derivation(g, rng)
        D2 = random_derivation(g, rng)
        D3 = random_derivation(g, rng)
        lam_K = _random_scalar(g.pres.K, rng)
        lam_F = random_element(g.pres.F, rng, max_terms=2)
        results = {
            "scalar": scalar_homogeneity(D1, lam_K),
            "ad": ad_compatibility(D1, D2),
            "sum": jacobson_sum(D1, D2),
            "hochschild": hochschild_check(D1, lam_F),
            "anchor": anchor_leibniz_check(D1, D2, lam_F),
            "jacobi": jacobi_check(D1, D2, D3),
        }
        report.trials += 1
        for name, ok in results.items():
            if ok:
                report.passed[name] += 1
            else:
                report.failures.append(f"trial {t}: {name}")
                logger.warning("公理 %s 在第 %d 次试验中失败", name, t)
    return report
