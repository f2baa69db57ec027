"""把计算结果转成 JSON 负载,并渲染成 JSON 或文本。

文本渲染只读 JSON 负载,不再访问任何计算对象,两种输出因此总是一致。
所有有理函数都用规范打印,重新解析后得到相等的值;表现的 ``relations``
在环境变量之外还用到 ``unknowns`` 列出的未定元,两者合起来解析。
"""

from __future__ import annotations

import json
import logging
from typing import Any, Dict, List, Optional, Sequence

from ..algebra.funcfield import RatFunc, format_ratfunc
from ..algebra.linalg import Vector
from ..fields.tower import Dependence, IntermediateField, TriangularPresentation
from ..galois.analyze import AnalysisReport
from ..galois.checkers import ChainReport, ConditionReport, KillPowersReport, RoundtripReport, SimplicityReport
from ..galois.modularity import Inconclusive, Modular, ModularConditionReport, ModularityVerdict, NotModular
from ..homology.cotangent import CartierReport, HomologyData, TwoTermComplex
from ..homology.sequence import DirectSumReport, SixTermSequence
from ..lie.algebroid import RestrictedLieAlgebroid
from ..lie.axioms import AxiomReport
from ..lie.derivations import Derivation, DerivationModule
from ..lie.homotopy import AlgebroidHomotopyData
from .spec import SCHEMA_VERSION, ProblemSpec

logger = logging.getLogger(__name__)

Payload = Dict[str, Any]


# ---------------------------------------------------------------------------
# 基本对象
# ---------------------------------------------------------------------------


def fmt(f: RatFunc) -> str:
    return format_ratfunc(f)


def fmt_list(values: Sequence[RatFunc]) -> List[str]:
    return [format_ratfunc(v) for v in values]


def fmt_matrix(rows: Sequence[Sequence[RatFunc]]) -> List[List[str]]:
    return [fmt_list(row) for row in rows]


def fmt_vector(vec: Vector, width: int) -> List[str]:
    return ["0" if j not in vec else format_ratfunc(vec[j]) for j in range(width)]


def field_payload(E: IntermediateField) -> Payload:
    return {
        "dim_over_base": E.dim,
        "generators": fmt_list(E.generators),
    }


def unknown_names(pres: TriangularPresentation) -> List[str]:
    """表现未定元的名字 X1..Xn;与环境变量重名时加下划线前缀"""
    taken = set(pres.field.names)
    prefix = "X"
    while any(f"{prefix}{i + 1}" in taken for i in range(pres.n)):
        prefix = "_" + prefix
    return [f"{prefix}{i + 1}" for i in range(pres.n)]


def presentation_payload(pres: TriangularPresentation) -> Payload:
    names = unknown_names(pres)
    tails = []
    for tail in pres.tails:
        terms = sorted(tail.terms.items(), key=lambda item: (-sum(item[0]), tuple(-a for a in item[0])))
        tails.append([{"exponents": list(a), "coefficient": fmt(c)} for a, c in terms])
    return {
        "generators": fmt_list(pres.gens),
        "exponents": list(pres.exps),
        "degree": pres.degree,
        "tails": tails,
        "unknowns": names,
        "relations": [pres.relation(i).format(names, format_ratfunc) for i in range(pres.n)],
    }


def complex_payload(c: TwoTermComplex) -> Payload:
    return {
        "n": c.n,
        "deg1": c.deg1_labels,
        "deg0": c.deg0_labels,
        "jacobian": fmt_matrix(c.dense()),
    }


def homology_payload(h: HomologyData) -> Payload:
    return {
        "pi0_dim": h.pi0_dim,
        "pi1_dim": h.pi1_dim,
        "rank": h.rank,
        "pi0_basis": [fmt_vector(v, h.n) for v in h.pi0_basis],
        "pi1_basis": [fmt_vector(v, h.n) for v in h.pi1_basis],
    }


def cartier_payload(c: CartierReport) -> Payload:
    return {"pi0_dim": c.pi0_dim, "pi1_dim": c.pi1_dim, "equal": c.equal}


def derivation_payload(D: Derivation) -> List[str]:
    return D.format()


def module_payload(module: DerivationModule) -> Payload:
    return {
        "dim": module.dim,
        "basis": [derivation_payload(D) for D in module.basis],
        "free_columns": list(module.free_columns),
    }


def algebroid_payload(g: RestrictedLieAlgebroid) -> Payload:
    return {
        "dim": g.dim,
        "basis": [derivation_payload(D) for D in g.basis],
        "bracket_closed": g.bracket_closed,
        "p_closed": g.p_closed,
    }


def homotopy_payload(data: AlgebroidHomotopyData) -> Payload:
    return {
        "pi1_dim": data.pi1_dim,
        "pi0_dim": data.pi0_dim,
        "anchor_pi1": fmt_matrix(data.anchor_pi1),
        "der_dim": data.der_dim,
        "fib_pi0_dim": data.fib_pi0_dim,
        "fib_pi1_dim": data.fib_pi1_dim,
        "vanishing_outside_01": data.vanishing_outside_01,
    }


def condition_payload(report: ConditionReport) -> Payload:
    return {
        "injectivity": report.injectivity,
        "vanishing": report.vanishing,
        "balance": report.balance,
        "dims": dict(report.dims),
        "verdict": "pass" if report.verdict else "fail",
    }


def six_term_payload(seq: SixTermSequence) -> Payload:
    return {
        "nodes": list(SixTermSequence.NODES),
        "dims": list(seq.dims),
        "matrices": [fmt_matrix(m) for m in seq.matrices],
        "exact_at": list(seq.exact_at),
        "exact": seq.exact,
        "euler": sum((-1) ** k * d for k, d in enumerate(seq.dims)) == 0,
    }


def direct_sum_payload(report: DirectSumReport) -> Payload:
    def degree(c) -> Payload:
        return {"source_dims": list(c.source_dims), "target_dim": c.target_dim, "rank": c.rank, "isomorphic": c.isomorphic}

    return {"pi0": degree(report.pi0), "pi1": degree(report.pi1), "isomorphic": report.isomorphic}


# ---------------------------------------------------------------------------
# 定理层面的报告
# ---------------------------------------------------------------------------


def simplicity_payload(report: SimplicityReport) -> Payload:
    return {
        "simple": report.simple,
        "trivial": report.trivial,
        "omega_dim": report.omega_dim,
        "generator": None if report.generator is None else fmt(report.generator),
        "search_agrees": report.search_agrees,
    }


def roundtrip_payload(report: RoundtripReport) -> Payload:
    return {
        "trials": report.trials,
        "field_roundtrips": report.field_roundtrips,
        "algebroid_roundtrips": report.algebroid_roundtrips,
        "reversals": report.reversals,
        "failures": list(report.failures),
        "ok": report.ok,
    }


def chain_payload(report: ChainReport) -> Payload:
    return {
        "expected_dim": report.expected_dim,
        "links": [
            {
                "index": link.index,
                "pi1_dim": link.pi1_dim,
                "pi0_dim": link.pi0_dim,
                "fib_pi0_dim": link.fib_pi0_dim,
                "fib_pi1_dim": link.fib_pi1_dim,
            }
            for link in report.links
        ],
        "towers": [
            {
                "index": t.index,
                "dims": list(t.dims),
                "exact": t.exact,
                "euler": t.euler,
                "pi1_map_zero": t.pi1_map_zero,
            }
            for t in report.towers
        ],
        "cartier": cartier_payload(report.cartier),
        "ok": report.ok,
    }


def kill_payload(report: KillPowersReport) -> Payload:
    return {
        "samples": report.samples,
        "checks": report.checks,
        "failures": list(report.failures),
        "row_spaces_equal": report.row_spaces_equal,
        "ok": report.ok,
    }


def axiom_payload(report: AxiomReport) -> Payload:
    return {"trials": report.trials, "passed": dict(report.passed), "failures": list(report.failures), "ok": report.ok}


def certificate_payload(cert: Dependence) -> Payload:
    return {
        "elements": fmt_list(cert.elements),
        "coefficients": fmt_list(cert.coefficients),
        "intersection_dim": cert.intersection_dim,
    }


def modular_conditions_payload(report: ModularConditionReport) -> Payload:
    return {
        "condition1": report.condition1,
        "condition2": report.condition2,
        "condition3": report.condition3,
        "essential_image": [condition_payload(r) for r in report.essential_image],
        "fibre_pi0_dims": list(report.fibre_dims),
        "direct_sum": direct_sum_payload(report.direct_sum),
        "ok": report.ok,
    }


def verdict_payload(verdict: ModularityVerdict) -> Payload:
    if isinstance(verdict, Modular):
        return {
            "verdict": verdict.verdict,
            "generators": fmt_list(verdict.generators),
            "degrees": list(verdict.degrees),
            "parts": [field_payload(E) for E in verdict.parts],
            "conditions": modular_conditions_payload(verdict.conditions),
        }
    if isinstance(verdict, NotModular):
        return {
            "verdict": verdict.verdict,
            "power": verdict.power,
            "certificate": certificate_payload(verdict.certificate),
            "provenance": verdict.provenance,
        }
    if isinstance(verdict, Inconclusive):
        return {"verdict": verdict.verdict, "reason": verdict.reason, "attempts": verdict.attempts}
    raise TypeError(f"未知的模性判定结果 {verdict!r}")


def analysis_payload(report: AnalysisReport) -> Payload:
    return {
        "degree": report.degree,
        "exponent": report.exponent,
        "generator_count": report.generators.count,
        "generators": fmt_list(report.generators.generators),
        "presentation": presentation_payload(report.presentation),
        "homology": {"pi0_dim": report.homology.pi0_dim, "pi1_dim": report.homology.pi1_dim},
        "der_dim": report.der_dim,
        "cartier": cartier_payload(report.cartier),
        "simplicity": simplicity_payload(report.simplicity),
        "modularity": verdict_payload(report.modularity),
        "roundtrip": None if report.roundtrip is None else roundtrip_payload(report.roundtrip),
    }


# ---------------------------------------------------------------------------
# 信封与渲染
# ---------------------------------------------------------------------------


def envelope(
    command: str,
    result: Payload,
    version: str,
    spec: Optional[ProblemSpec] = None,
    timing: Optional[float] = None,
) -> Payload:
    report: Payload = {
        "schema_version": SCHEMA_VERSION,
        "version": version,
        "command": command,
        "spec": None if spec is None else spec.model_dump(mode="json"),
        "result": result,
    }
    if timing is not None:
        report["timing_seconds"] = round(timing, 3)
    return report


def render_json(report: Payload) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _render_value(value: Any, indent: int, lines: List[str], key: str) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        lines.append(f"{pad}{key}:")
        for k in sorted(value):
            _render_value(value[k], indent + 1, lines, k)
    elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        lines.append(f"{pad}{key}:")
        for i, v in enumerate(value):
            _render_value(v, indent + 1, lines, f"[{i}]")
    elif isinstance(value, list):
        lines.append(f"{pad}{key}: [{', '.join(str(v) for v in value)}]")
    elif value is None:
        lines.append(f"{pad}{key}: -")
    else:
        lines.append(f"{pad}{key}: {value}")


def render_text(report: Payload) -> str:
    lines: List[str] = [f"pigalois {report['version']} :: {report['command']}"]
    for k in sorted(report["result"]):
        _render_value(report["result"][k], 0, lines, k)
    if "timing_seconds" in report:
        lines.append(f"timing: {report['timing_seconds']}s")
    return "\n".join(lines) + "\n"
