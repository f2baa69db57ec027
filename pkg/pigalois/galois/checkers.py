"""定理层面的检查:本质像条件、单扩张判定、Jacobson 往返、Frobenius 链。"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from ..algebra.funcfield import RatFunc, format_ratfunc
from ..algebra.linalg import rank, sparse
from ..errors import DimensionMismatch, ExponentTooLarge, GeneratorsInsufficient
from ..fields.tower import (
    AmbientField,
    IntermediateField,
    check_subfield,
    degree_over,
    element_degree,
    element_exponent,
    exponent,
    random_element,
)
from ..homology.cotangent import CartierReport, cartier_check, cotangent_complex, homology
from ..homology.sequence import euler_check, six_term
from ..lie.algebroid import algebroid_from, derivations_vanishing_on, fixed_field, restricted_closure
from ..lie.axioms import random_derivation, trial_rng
from ..lie.derivations import DerivationModule, derivation_module
from ..lie.homotopy import AlgebroidHomotopyData, galois_homotopy_data

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# 本质像条件
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConditionReport:
    injectivity: bool
    vanishing: bool
    balance: bool
    dims: Dict[str, int]

    @property
    def verdict(self) -> bool:
        return self.injectivity and self.vanishing and self.balance


def check_essential_image(
    data: AlgebroidHomotopyData,
    F: IntermediateField,
    K: IntermediateField,
    module: Optional[DerivationModule] = None,
) -> ConditionReport:
    """单射性、0/1 以外消失、平衡

    Raises:
        DimensionMismatch: 锚矩阵的列数与 dim Der_K(F) 不符
    """
    if module is None:
        module = derivation_module(F, K)
    if data.der_dim != module.dim or any(len(row) != module.dim for row in data.anchor_pi1):
        raise DimensionMismatch(f"锚矩阵列数应为 dim Der_K(F) = {module.dim}")
    anchor_rank = rank(module.pres.field, [sparse(row) for row in data.anchor_pi1], module.dim)
    return ConditionReport(
        injectivity=anchor_rank == data.pi1_dim and len(data.anchor_pi1) == data.pi1_dim,
        vanishing=data.vanishing_outside_01,
        balance=data.pi0_dim == data.pi1_dim,
        dims={
            "pi1": data.pi1_dim,
            "pi0": data.pi0_dim,
            "anchor_rank": anchor_rank,
            "der": module.dim,
            "fib_pi0": data.fib_pi0_dim,
            "fib_pi1": data.fib_pi1_dim,
        },
    )


# ---------------------------------------------------------------------------
# 单扩张
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimplicityReport:
    simple: bool
    trivial: bool
    omega_dim: int
    generator: Optional[RatFunc]
    search_agrees: bool


def find_single_generator(
    F: IntermediateField,
    K: IntermediateField,
    random_trials: int = 20,
    seed: int = 0,
) -> Optional[RatFunc]:
    """在 F 的基元素与有限个随机组合中找 α 使 K(α) = F"""
    target = degree_over(F, K)
    candidates: List[RatFunc] = list(F.sorted_basis)
    rng = random.Random(seed)
    candidates.extend(random_element(F, rng) for _ in range(random_trials))
    for alpha in candidates:
        if element_degree(alpha, K) == target:
            return alpha
    return None


def is_simple(F: IntermediateField, K: IntermediateField, random_trials: int = 20, seed: int = 0) -> SimplicityReport:
    """F/K 是非平凡单扩张当且仅当 dim Ω¹_{F/K} = 1;同时用显式生成元交叉验证

    Raises:
        NotASubfield: K ⊄ F
    """
    check_subfield(F, K)
    if F == K:
        return SimplicityReport(False, True, 0, None, True)
    omega = homology(cotangent_complex(F, K)).pi0_dim
    generator = find_single_generator(F, K, random_trials, seed)
    agrees = (omega == 1) == (generator is not None)
    if not agrees:
        logger.warning("单扩张判定不一致: dim Ω¹ = %d, 生成元 %s", omega, generator)
    return SimplicityReport(omega == 1, False, omega, generator, agrees)


# ---------------------------------------------------------------------------
# Jacobson 往返
# ---------------------------------------------------------------------------


@dataclass
class RoundtripReport:
    trials: int
    field_roundtrips: int = 0
    algebroid_roundtrips: int = 0
    reversals: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def jacobson_roundtrip(F: IntermediateField, K: IntermediateField, trials: int, seed: int) -> RoundtripReport:
    """指数 1 时中间域与限制李代数胚的双向往返及反序性

    Raises:
        ExponentTooLarge: exponent(F, K) > 1
    """
    n = exponent(F, K)
    if n > 1:
        raise ExponentTooLarge(f"Jacobson 对应要求指数 ≤ 1, 实际为 {n}")
    module = derivation_module(F, K)
    full = algebroid_from(module, module.basis)
    report = RoundtripReport(trials=trials)
    for t in range(trials):
        rng = trial_rng(seed, t, "jacobson")
        E = K.adjoin([random_element(F, rng) for _ in range(rng.randint(1, 2))])
        g = derivations_vanishing_on(E, F, K, module)
        if fixed_field(g) == E:
            report.field_roundtrips += 1
        else:
            report.failures.append(f"trial {t}: fixed_field(Der_E(F)) != E")

        seeds = [random_derivation(full, rng) for _ in range(rng.randint(1, 2))]
        h = restricted_closure(seeds, module)
        if derivations_vanishing_on(fixed_field(h), F, K, module) == h:
            report.algebroid_roundtrips += 1
        else:
            report.failures.append(f"trial {t}: Der_(F^g)(F) != g")

        E2 = E.adjoin([random_element(F, rng)])
        g2 = derivations_vanishing_on(E2, F, K, module)
        if g.contains_algebroid(g2):
            report.reversals += 1
        else:
            report.failures.append(f"trial {t}: inclusion not reversed")
    logger.info("Jacobson 往返: %d/%d 次试验无失败", trials - len({f.split(':')[0] for f in report.failures}), trials)
    return report


# ---------------------------------------------------------------------------
# Frobenius 链与单扩张链
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinkReport:
    index: int
    pi1_dim: int
    pi0_dim: int
    fib_pi0_dim: int
    fib_pi1_dim: int


@dataclass(frozen=True)
class TowerCheck:
    index: int
    dims: tuple
    exact: bool
    euler: bool
    pi1_map_zero: bool


@dataclass
class ChainReport:
    expected_dim: int
    links: List[LinkReport]
    towers: List[TowerCheck]
    cartier: CartierReport

    @property
    def ok(self) -> bool:
        dims_ok = all(link.pi1_dim == link.pi0_dim == self.expected_dim for link in self.links)
        towers_ok = all(t.exact and t.euler and t.pi1_map_zero for t in self.towers)
        return dims_ok and towers_ok and self.cartier.equal


def _chain_report(F: IntermediateField, chain: Sequence[IntermediateField], expected: int) -> ChainReport:
    """chain[0] = F ⊃ chain[1] ⊃ ... ⊃ chain[-1] = K"""
    K = chain[-1]
    module = derivation_module(F, K)
    links = []
    for i in range(1, len(chain)):
        data = galois_homotopy_data(chain[i], F, K, module)
        links.append(LinkReport(i, data.pi1_dim, data.pi0_dim, data.fib_pi0_dim, data.fib_pi1_dim))
    towers = []
    for i in range(1, len(chain) - 1):
        seq = six_term(F, chain[i], chain[i + 1])
        towers.append(TowerCheck(i, seq.dims, seq.exact, euler_check(seq), seq.is_zero(1)))
    return ChainReport(expected, links, towers, cartier_check(F, K))


def frobenius_chain_report(ambient: AmbientField, e: Optional[int] = None) -> ChainReport:
    """F = A, 链 K = F^{p^e} ⊂ ... ⊂ F^p ⊂ F"""
    e = ambient.e if e is None else e
    if not 1 <= e <= ambient.e:
        raise ValueError(f"链长 e={e} 超出环境域的指数上界 {ambient.e}")
    F = ambient.full()
    base = ambient.base()
    chain = [F]
    for i in range(1, e + 1):
        chain.append(base.adjoin([ambient.var(j).frobenius(i) for j in range(ambient.nvars)]))
    report = _chain_report(F, chain, ambient.nvars)
    logger.info("Frobenius 链: %d 个链节, 通过=%s", len(report.links), report.ok)
    return report


def simple_chain_report(F: IntermediateField, K: IntermediateField, alpha: RatFunc) -> ChainReport:
    """F = K(α), 链 E_i = K(α^{p^i})

    Raises:
        GeneratorsInsufficient: K(α) ≠ F
    """
    check_subfield(F, K)
    if K.adjoin([alpha]) != F:
        raise GeneratorsInsufficient(f"K({format_ratfunc(alpha)}) ≠ F")
    n = element_exponent(alpha, K)
    chain = [K.adjoin([alpha.frobenius(i)]) for i in range(n + 1)]
    return _chain_report(F, chain, 1)


# ---------------------------------------------------------------------------
# 导子消灭 p 次幂
# ---------------------------------------------------------------------------


@dataclass
class KillPowersReport:
    samples: int
    checks: int = 0
    failures: List[str] = field(default_factory=list)
    row_spaces_equal: Optional[bool] = None

    @property
    def ok(self) -> bool:
        return not self.failures and self.row_spaces_equal is not False


def derivations_kill_powers(F: IntermediateField, K: IntermediateField, samples: int, seed: int) -> KillPowersReport:
    """D(f^p) = 0;F 为整个环境域时还检查 Der_{F^{p^e}}(F) = Der_{F^p}(F)"""
    module = derivation_module(F, K)
    report = KillPowersReport(samples=samples)
    for t in range(samples):
        rng = trial_rng(seed, t, "kill")
        f = random_element(F, rng)
        fp = f.frobenius(1)
        for k, D in enumerate(module.basis):
            report.checks += 1
            if not D(fp).is_zero():
                report.failures.append(f"sample {t}: D{k + 1}(f^p) != 0")
    ambient = F.ambient
    if F == ambient.full():
        base = ambient.base()
        base_module = module if K == base else derivation_module(F, base)
        frob = base.adjoin([ambient.var(j).frobenius(1) for j in range(ambient.nvars)])
        full = algebroid_from(base_module, base_module.basis)
        report.row_spaces_equal = derivations_vanishing_on(frob, F, base, base_module) == full
    return report
