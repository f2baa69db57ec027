"""把一对 K ⊆ F 的各项不变量汇总成一份报告。"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from ..fields.tower import (
    GeneratorCount,
    IntermediateField,
    TriangularPresentation,
    check_subfield,
    degree_over,
    exponent,
    minimal_generator_count,
    triangular_presentation,
)
from ..homology.cotangent import CartierReport, HomologyData, cartier_check, cotangent_complex, homology
from ..lie.derivations import derivation_module
from .checkers import RoundtripReport, SimplicityReport, is_simple, jacobson_roundtrip
from .modularity import ModularityVerdict, modularity_test

logger = logging.getLogger(__name__)

ROUNDTRIP_SAMPLE_TRIALS = 2


@dataclass(frozen=True)
class AnalysisReport:
    degree: int
    exponent: int
    generators: GeneratorCount
    presentation: TriangularPresentation
    homology: HomologyData
    der_dim: int
    cartier: CartierReport
    simplicity: SimplicityReport
    modularity: ModularityVerdict
    roundtrip: Optional[RoundtripReport]


def analyze(F: IntermediateField, K: IntermediateField, seed: int, budget: int) -> AnalysisReport:
    """Raises: NotASubfield"""
    check_subfield(F, K)
    n = exponent(F, K)
    pres = triangular_presentation(F, K)
    report = AnalysisReport(
        degree=degree_over(F, K),
        exponent=n,
        generators=minimal_generator_count(F, K),
        presentation=pres,
        homology=homology(cotangent_complex(F, K, pres)),
        der_dim=derivation_module(F, K).dim,
        cartier=cartier_check(F, K),
        simplicity=is_simple(F, K, seed=seed),
        modularity=modularity_test(F, K, budget, seed),
        roundtrip=jacobson_roundtrip(F, K, ROUNDTRIP_SAMPLE_TRIALS, seed) if n == 1 else None,
    )
    logger.info(
        "分析完成: [F:K]=%d, 指数=%d, 生成元=%d, 模性=%s",
        report.degree,
        report.exponent,
        report.generators.count,
        report.modularity.verdict,
    )
    return report
