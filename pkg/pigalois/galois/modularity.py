"""模扩张判定:分解搜索与线性无交证书两条路线。

路线 (a) 找 K 上的单扩张 K(α_1), ..., K(α_r),其次数之积为 [F:K],
再用同伦条件验证;路线 (b) 是经典判据(Sweedler 的线性无交刻画):
F/K 是模扩张当且仅当对所有 i ≥ 1,F^{p^i} 与 K 在交上线性无交。
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..algebra.funcfield import RatFunc
from ..algebra.linalg import EchelonSpace
from ..errors import InternalInconsistency
from ..fields.tower import (
    Dependence,
    DisjointnessResult,
    IntermediateField,
    check_subfield,
    check_tower,
    degree_over,
    exponent,
    frobenius_image,
    intersection,
    linear_disjointness,
    minimal_generator_count,
    random_element,
    rebase,
    triangular_presentation,
)
from ..homology.sequence import DirectSumReport, direct_sum_compare
from ..lie.derivations import derivation_module
from ..lie.homotopy import galois_homotopy_data
from .checkers import ConditionReport, check_essential_image

logger = logging.getLogger(__name__)

CLASSICAL_CRITERION = "classical criterion (Sweedler linear disjointness)"


# ---------------------------------------------------------------------------
# 判定结果
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModularConditionReport:
    essential_image: Tuple[ConditionReport, ...]
    fibre_dims: Tuple[int, ...]
    direct_sum: DirectSumReport

    @property
    def condition1(self) -> bool:
        return all(r.verdict for r in self.essential_image)

    @property
    def condition2(self) -> bool:
        return all(d == 1 for d in self.fibre_dims)

    @property
    def condition3(self) -> bool:
        return self.direct_sum.isomorphic

    @property
    def ok(self) -> bool:
        return self.condition1 and self.condition2 and self.condition3


@dataclass(frozen=True)
class Modular:
    parts: Tuple[IntermediateField, ...]
    generators: Tuple[RatFunc, ...]
    degrees: Tuple[int, ...]
    conditions: ModularConditionReport

    verdict = "Modular"


@dataclass(frozen=True)
class NotModular:
    power: int
    certificate: Dependence
    frobenius_field: IntermediateField
    base_field: IntermediateField
    provenance: str = CLASSICAL_CRITERION

    verdict = "NotModular"


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    attempts: int

    verdict = "Inconclusive"


ModularityVerdict = Union[Modular, NotModular, Inconclusive]


# ---------------------------------------------------------------------------
# 路线 (b):线性无交证书
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DisjointnessStep:
    power: int
    frobenius_field: IntermediateField
    base_field: IntermediateField
    result: DisjointnessResult


def disjointness_certificates(F: IntermediateField, K: IntermediateField) -> List[DisjointnessStep]:
    """对 i = 1..exp-1 检查 F^{p^i} 与 K 的线性无交,遇到第一个相关性证书即停止;
    i ≥ exp 时 F^{p^i} ⊆ K,无需检查"""
    check_subfield(F, K)
    steps: List[DisjointnessStep] = []
    for i in range(1, exponent(F, K)):
        Fi = frobenius_image(F, i)
        Ki = K if Fi.ambient == K.ambient else rebase(K, Fi.ambient)
        result = linear_disjointness(Fi, Ki)
        steps.append(DisjointnessStep(i, Fi, Ki, result))
        logger.debug("F^{p^%d} 与 K: disjoint=%s", i, result.disjoint)
        if not result.disjoint:
            break
    return steps


def verify_certificate(step: DisjointnessStep) -> bool:
    """独立复核相关性证书:元素在 F^{p^i} 中、系数在 K 中、关系成立、元素在交上无关"""
    cert = step.result
    if cert.disjoint:
        return False
    Fi, Ki = step.frobenius_field, step.base_field
    ambient = Fi.ambient
    if not all(Fi.contains(b) for b in cert.elements):
        return False
    if not all(Ki.contains(mu) for mu in cert.coefficients):
        return False
    if all(mu.is_zero() for mu in cert.coefficients):
        return False
    total = ambient.field.zero
    for b, mu in zip(cert.elements, cert.coefficients):
        total = total + b * mu
    if not total.is_zero():
        return False
    C = intersection(Fi, Ki)
    span = EchelonSpace(ambient.field, ambient.dimension)
    for b in cert.elements:
        for kappa in C.basis_elements:
            span.add(ambient.coord(kappa * b))
    return span.dim == len(cert.elements) * C.dim


# ---------------------------------------------------------------------------
# 路线 (a):分解搜索
# ---------------------------------------------------------------------------


@dataclass
class SearchOutcome:
    generators: Optional[Tuple[RatFunc, ...]]
    attempts: int
    exhausted: bool = False
    degrees: Dict[RatFunc, int] = field(default_factory=dict)


def _candidates(F: IntermediateField, K: IntermediateField, budget: int, seed: int) -> List[RatFunc]:
    """表现生成元、表现单项式、F 的基元素,再补随机组合;去重后至多 budget 个"""
    pres = triangular_presentation(F, K)
    pool: List[RatFunc] = list(pres.gens)
    pool.extend(pres.power(a) for a in pres.monomials() if any(a))
    pool.extend(F.sorted_basis)
    rng = random.Random(seed)
    pool.extend(random_element(F, rng) for _ in range(budget))
    seen = set()
    result: List[RatFunc] = []
    for alpha in pool:
        if K.contains(alpha) or alpha in seen:
            continue
        seen.add(alpha)
        result.append(alpha)
        if len(result) >= budget:
            break
    return result


def decomposition_search(F: IntermediateField, K: IntermediateField, budget: int, seed: int) -> SearchOutcome:
    """回溯寻找 α_1..α_r 使 Π[K(α_i):K] = [F:K] 且合成域的次数逐步相乘

    合成域次数等于次数之积时各 K(α_i) 的张量积就是 F,r 不超过 dim Ω¹_{F/K}。
    总尝试次数以 budget·max(r, 1) 为上限。
    """
    check_subfield(F, K)
    target = degree_over(F, K)
    if target == 1:
        return SearchOutcome((), 0)
    depth = minimal_generator_count(F, K).count
    cap = budget * max(depth, 1)
    candidates = _candidates(F, K, budget, seed)
    outcome = SearchOutcome(None, 0)
    for alpha in candidates:
        outcome.degrees[alpha] = K.adjoin([alpha]).dim // K.dim
    candidates.sort(key=lambda a: (-outcome.degrees[a], a.sort_key()))

    def search(start: int, current: IntermediateField, chosen: List[RatFunc]) -> Optional[List[RatFunc]]:
        degree = current.dim // K.dim
        if degree == target:
            return chosen
        if len(chosen) >= depth:
            return None
        for idx in range(start, len(candidates)):
            alpha = candidates[idx]
            d = outcome.degrees[alpha]
            if degree * d > target or target % (degree * d):
                continue
            if outcome.attempts >= cap:
                outcome.exhausted = True
                return None
            outcome.attempts += 1
            grown = current.adjoin([alpha])
            if grown.dim // K.dim != degree * d:
                continue
            logger.debug("分解搜索: 第 %d 层接受次数 %d 的候选", len(chosen) + 1, d)
            found = search(idx + 1, grown, chosen + [alpha])
            if found is not None or outcome.exhausted:
                return found
        return None

    found = search(0, K, [])
    if found is not None:
        outcome.generators = tuple(sorted(found, key=lambda a: (outcome.degrees[a], a.sort_key())))
    elif outcome.attempts >= cap:
        outcome.exhausted = True
    logger.info("分解搜索: 尝试 %d 次, 成功=%s", outcome.attempts, found is not None)
    return outcome


# ---------------------------------------------------------------------------
# 条件验证与总判定
# ---------------------------------------------------------------------------


def verify_modular_conditions(
    F: IntermediateField,
    K: IntermediateField,
    parts: Sequence[IntermediateField],
) -> ModularConditionReport:
    """每个部分满足本质像条件、纤维 π₀ 一维、直和比较为同构

    Raises:
        NotATower: 某个部分不在 K 与 F 之间
    """
    for E in parts:
        check_tower(F, E, K)
    module = derivation_module(F, K)
    reports = []
    fibres = []
    for E in parts:
        data = galois_homotopy_data(E, F, K, module)
        reports.append(check_essential_image(data, F, K, module))
        fibres.append(data.fib_pi0_dim)
    return ModularConditionReport(tuple(reports), tuple(fibres), direct_sum_compare(F, K, list(parts)))


def modularity_test(
    F: IntermediateField,
    K: IntermediateField,
    budget: int,
    seed: int,
    cross_check: bool = False,
) -> ModularityVerdict:
    """先走路线 (b),再走路线 (a)。

    cross_check 为真时即使 (b) 已给出证书也运行 (a),两者结论冲突则抛
    InternalInconsistency。

    Raises:
        NotASubfield: K ⊄ F
        InternalInconsistency: 两条路线结论相反,或找到的分解未通过条件验证
    """
    check_subfield(F, K)
    steps = disjointness_certificates(F, K)
    dependent = next((s for s in steps if not s.result.disjoint), None)
    if dependent is not None:
        if not verify_certificate(dependent):
            raise InternalInconsistency("线性相关证书未通过独立复核")
        if cross_check:
            outcome = decomposition_search(F, K, budget, seed)
            if outcome.generators is not None:
                raise InternalInconsistency("分解搜索找到模分解,但存在线性相关证书")
        logger.info("非模扩张: F^{p^%d} 与 K 线性相关", dependent.power)
        return NotModular(dependent.power, dependent.result, dependent.frobenius_field, dependent.base_field)

    outcome = decomposition_search(F, K, budget, seed)
    if outcome.generators is None:
        reason = "search budget exhausted" if outcome.exhausted else "no decomposition among candidates"
        logger.warning("模性判定未完成: %s (尝试 %d 次)", reason, outcome.attempts)
        return Inconclusive(reason, outcome.attempts)
    parts = tuple(K.adjoin([alpha]) for alpha in outcome.generators)
    conditions = verify_modular_conditions(F, K, parts)
    if not conditions.ok:
        raise InternalInconsistency("找到的模分解未通过同伦条件验证")
    degrees = tuple(outcome.degrees[alpha] for alpha in outcome.generators)
    logger.info("模扩张: 各部分次数 %s", degrees)
    return Modular(parts, outcome.generators, degrees, conditions)
