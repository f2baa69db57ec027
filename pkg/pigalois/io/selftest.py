"""带种子的性质自检套件,供 ``pigalois selftest`` 调用。

每个套件接收试验次数与种子,逐次试验用 ``trial_rng(seed, 序号, 套件名)``
派生随机源,所以同一种子的两次运行结果逐字节相同。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

from ..config import PigaloisConfig
from ..fields.tower import AmbientField
from ..galois.checkers import (
    check_essential_image,
    derivations_kill_powers,
    frobenius_chain_report,
    is_simple,
    jacobson_roundtrip,
)
from ..galois.modularity import Modular, NotModular, disjointness_certificates, modularity_test, verify_certificate
from ..galois.sampling import random_intermediate, random_pair, random_tower
from ..homology.cotangent import cartier_check
from ..homology.sequence import euler_check, six_term
from ..lie.algebroid import algebroid_from
from ..lie.axioms import trial_rng, verify_restricted_axioms
from ..lie.derivations import derivation_module
from ..lie.homotopy import galois_homotopy_data
from . import report as rpt

logger = logging.getLogger(__name__)


@dataclass
class SuiteResult:
    name: str
    trials: int = 0
    passed: int = 0
    failures: List[str] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures and self.passed == self.trials

    def record(self, ok: bool, label: str) -> None:
        self.trials += 1
        if ok:
            self.passed += 1
        else:
            self.failures.append(label)
            logger.warning("自检 %s 失败: %s", self.name, label)

    def payload(self) -> dict:
        payload = {"trials": self.trials, "passed": self.passed, "failures": list(self.failures), "ok": self.ok}
        if self.details:
            payload["details"] = dict(self.details)
        return payload


def _random_ambients() -> List[AmbientField]:
    return [AmbientField(2, ("x", "y"), 2), AmbientField(3, ("x", "y"), 1)]


def _exponent_one(p: int) -> AmbientField:
    return AmbientField(p, ("x", "y"), 1)


def _sweedler(p: int):
    ambient = AmbientField(p, ("x", "y", "z"), 2)
    x, y, z = (ambient.var(i) for i in range(3))
    K = ambient.base().adjoin([x.frobenius(1), y.frobenius(1)])
    F = K.adjoin([x * z + y, z])
    return F, K


def suite_cartier(trials: int, seed: int, config: PigaloisConfig) -> SuiteResult:
    result = SuiteResult("cartier")
    ambients = _random_ambients()
    for t in range(trials):
        rng = trial_rng(seed, t, "cartier")
        F, K = random_pair(ambients[t % len(ambients)], rng)
        result.record(cartier_check(F, K).equal, f"trial {t}")
    return result


def suite_six_term(trials: int, seed: int, config: PigaloisConfig) -> SuiteResult:
    result = SuiteResult("six_term")
    ambients = _random_ambients()
    for t in range(trials):
        rng = trial_rng(seed, t, "six_term")
        F, E, K = random_tower(ambients[t % len(ambients)], rng)
        seq = six_term(F, E, K)
        result.record(seq.exact and euler_check(seq), f"trial {t}: dims {seq.dims}")
    chain = frobenius_chain_report(AmbientField(2, ("x",), 2))
    result.record(chain.ok, "frobenius chain F2(x), e=2")
    return result


def suite_jacobson(trials: int, seed: int, config: PigaloisConfig) -> SuiteResult:
    result = SuiteResult("jacobson")
    for p in (2, 3):
        ambient = _exponent_one(p)
        report = jacobson_roundtrip(ambient.full(), ambient.base(), trials, seed)
        result.record(report.ok and report.field_roundtrips == trials, f"p={p} field roundtrips")
        result.record(report.ok and report.algebroid_roundtrips == trials, f"p={p} algebroid roundtrips")
    return result


def suite_axioms(trials: int, seed: int, config: PigaloisConfig) -> SuiteResult:
    result = SuiteResult("axioms")
    for p in (2, 3):
        ambient = _exponent_one(p)
        module = derivation_module(ambient.full(), ambient.base())
        g = algebroid_from(module, module.basis)
        report = verify_restricted_axioms(g, trials, seed, config.limits.supported_primes_for_axioms)
        result.details[f"p={p}"] = rpt.axiom_payload(report)
        result.record(report.ok and report.trials == trials, f"p={p}: {report.failures[:3]}")
    return result


def suite_essential(trials: int, seed: int, config: PigaloisConfig) -> SuiteResult:
    result = SuiteResult("essential")
    ambient = AmbientField(2, ("x", "y"), 2)
    F, K = ambient.full(), ambient.base()
    module = derivation_module(F, K)
    data = None
    for t in range(trials):
        rng = trial_rng(seed, t, "essential")
        E = random_intermediate(F, K, rng)
        data = galois_homotopy_data(E, F, K, module)
        result.record(check_essential_image(data, F, K, module).verdict, f"trial {t}")
    if data is not None:
        violations = {
            "balance": data.perturbed(pi0_dim=data.pi0_dim + 1),
            "vanishing": data.perturbed(vanishing_outside_01=False),
            "injectivity": data.perturbed(
                pi1_dim=1,
                anchor_pi1=[[F.ambient.field.zero] * module.dim],
                pi0_dim=1,
            ),
        }
        for name, bad in violations.items():
            report = check_essential_image(bad, F, K, module)
            flags = {"injectivity": report.injectivity, "vanishing": report.vanishing, "balance": report.balance}
            failed = [k for k, v in flags.items() if not v]
            result.record(failed == [name], f"violation {name}: failed {failed}")
    return result


def suite_frobenius_kill(trials: int, seed: int, config: PigaloisConfig) -> SuiteResult:
    result = SuiteResult("frobenius_kill")
    ambient = AmbientField(2, ("x", "y"), 2)
    report = derivations_kill_powers(ambient.full(), ambient.base(), trials, seed)
    result.details["F2(x,y), e=2"] = rpt.kill_payload(report)
    result.record(not report.failures and report.checks == trials * 2, f"{len(report.failures)} failures")
    result.record(report.row_spaces_equal is True, "Der_{F^{p^e}}(F) = Der_{F^p}(F)")
    return result


def suite_simplicity(trials: int, seed: int, config: PigaloisConfig) -> SuiteResult:
    result = SuiteResult("simplicity")
    frob = AmbientField(2, ("x",), 2)
    pair = _exponent_one(2)
    jac = AmbientField(3, ("x", "y"), 2)
    x, y = jac.var(0), jac.var(1)
    jac_K = jac.base().adjoin([x.frobenius(1), y.frobenius(1) + x])
    cases = [
        ("F2(x)/F2(x^4)", frob.full(), frob.base(), True),
        ("F2(x,y)/A^2", pair.full(), pair.base(), False),
        ("F3(x,y)/(x^3, y^3+x)", jac.full(), jac_K, True),
    ]
    for label, F, K, expected in cases:
        report = is_simple(F, K, seed=seed)
        result.record(report.simple == expected and report.search_agrees, label)
    return result


def suite_modularity(trials: int, seed: int, config: PigaloisConfig) -> SuiteResult:
    result = SuiteResult("modularity")
    budget = config.runtime.budget
    ambient = AmbientField(2, ("x", "y"), 2)
    x, y = ambient.var(0), ambient.var(1)
    K = ambient.base().adjoin([x.frobenius(1), y.frobenius(2)])
    verdict = modularity_test(ambient.full(), K, budget, seed)
    result.record(isinstance(verdict, Modular) and verdict.degrees == (2, 4), "F2(x,y)/(x^2, y^4)")
    F, K = _sweedler(2)
    verdict = modularity_test(F, K, budget, seed)
    ok = isinstance(verdict, NotModular)
    if ok:
        steps = disjointness_certificates(F, K)
        ok = verify_certificate(steps[-1])
    result.record(ok, "Sweedler p=2")
    return result


SuiteFn = Callable[[int, int, PigaloisConfig], SuiteResult]

SUITES: Dict[str, SuiteFn] = {
    "cartier": suite_cartier,
    "six_term": suite_six_term,
    "jacobson": suite_jacobson,
    "axioms": suite_axioms,
    "essential": suite_essential,
    "frobenius_kill": suite_frobenius_kill,
    "simplicity": suite_simplicity,
    "modularity": suite_modularity,
}

# 没有试验次数配置项的套件只跑固定实例
_FIXED_TRIALS = {"simplicity": 1, "modularity": 1}


def run_selftest(config: PigaloisConfig, seed: int, suites: Optional[Sequence[str]] = None) -> Dict[str, SuiteResult]:
    """按名字运行套件;suites 为空时全部运行

    Raises:
        KeyError: 套件名不存在
    """
    names = list(suites) if suites else list(SUITES)
    results: Dict[str, SuiteResult] = {}
    for name in names:
        fn = SUITES[name]
        trials = _FIXED_TRIALS.get(name) or getattr(config.selftest, name)
        logger.info("运行自检套件 %s (%d 次试验)", name, trials)
        results[name] = fn(trials, seed, config)
    return results
