"""命令行入口:只负责读入配置与问题、分派命令、渲染报告、映射退出码。

退出码:0 成功;2 问题描述或表达式有误;3 数学前提不成立;
4 模性判定 Inconclusive;1 其他错误(含自检失败与内部不一致)。
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from . import __version__
from .config import PigaloisConfig, load_config
from .errors import CommandFailed, PigaloisError, SpecError, UnknownCommand
from .fields.tower import expansion_cache_stats, triangular_presentation
from .galois.analyze import analyze
from .galois.checkers import (
    check_essential_image,
    frobenius_chain_report,
    jacobson_roundtrip,
    simple_chain_report,
)
from .galois.modularity import Inconclusive, modularity_test
from .homology.cotangent import cartier_check, cotangent_complex, homology
from .homology.sequence import six_term
from .io import report as rpt
from .io.selftest import SUITES, run_selftest
from .io.spec import SCHEMA_VERSION, Problem, load_spec
from .lie.algebroid import fixed_field, restricted_closure
from .lie.derivations import derivation_module
from .lie.homotopy import galois_homotopy_data

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INCONCLUSIVE = 4


@dataclass
class RunContext:
    problem: Optional[Problem]
    config: PigaloisConfig
    seed: int
    budget: int
    suites: Optional[List[str]] = None


@dataclass
class CommandResult:
    payload: rpt.Payload
    exit_code: int = EXIT_OK


def _require_problem(ctx: RunContext, command: str) -> Problem:
    if ctx.problem is None:
        raise SpecError(f"命令 {command} 需要问题描述 (--spec 或 stdin)")
    return ctx.problem


def _require_E(problem: Problem, command: str):
    if problem.E is None:
        raise SpecError(f"命令 {command} 需要问题描述中的 E.generators")
    return problem.E


# ---------------------------------------------------------------------------
# 各命令
# ---------------------------------------------------------------------------


def cmd_analyze(ctx: RunContext) -> CommandResult:
    pb = _require_problem(ctx, "analyze")
    report = analyze(pb.F, pb.K, ctx.seed, ctx.budget)
    code = EXIT_INCONCLUSIVE if isinstance(report.modularity, Inconclusive) else EXIT_OK
    return CommandResult(rpt.analysis_payload(report), code)


def cmd_cotangent(ctx: RunContext) -> CommandResult:
    pb = _require_problem(ctx, "cotangent")
    pres = triangular_presentation(pb.F, pb.K)
    c = cotangent_complex(pb.F, pb.K, pres)
    return CommandResult(
        {
            "presentation": rpt.presentation_payload(pres),
            "complex": rpt.complex_payload(c),
            "homology": rpt.homology_payload(homology(c)),
            "cartier": rpt.cartier_payload(cartier_check(pb.F, pb.K)),
        }
    )


def cmd_derivations(ctx: RunContext) -> CommandResult:
    pb = _require_problem(ctx, "derivations")
    module = derivation_module(pb.F, pb.K)
    return CommandResult(
        {"presentation": rpt.presentation_payload(module.pres), "module": rpt.module_payload(module)}
    )


def cmd_fixed_field(ctx: RunContext) -> CommandResult:
    pb = _require_problem(ctx, "fixed-field")
    module = derivation_module(pb.F, pb.K)
    seeds = []
    for values in pb.spec.derivations:
        if len(values) != module.pres.n:
            raise SpecError(f"导子取值个数 {len(values)} 与表现生成元个数 {module.pres.n} 不符")
        seeds.append(module.derivation([pb.parse(v) for v in values]))
    g = restricted_closure(seeds, module)
    E = fixed_field(g)
    return CommandResult(
        {
            "presentation": rpt.presentation_payload(module.pres),
            "seed_derivations": [rpt.derivation_payload(D) for D in seeds],
            "algebroid": rpt.algebroid_payload(g),
            "fixed_field": rpt.field_payload(E),
        }
    )


def cmd_galois_check(ctx: RunContext) -> CommandResult:
    pb = _require_problem(ctx, "galois-check")
    E = _require_E(pb, "galois-check")
    module = derivation_module(pb.F, pb.K)
    data = galois_homotopy_data(E, pb.F, pb.K, module)
    return CommandResult(
        {
            "E": rpt.field_payload(E),
            "homotopy": rpt.homotopy_payload(data),
            "conditions": rpt.condition_payload(check_essential_image(data, pb.F, pb.K, module)),
        }
    )


def cmd_modularity(ctx: RunContext) -> CommandResult:
    pb = _require_problem(ctx, "modularity")
    verdict = modularity_test(pb.F, pb.K, ctx.budget, ctx.seed)
    code = EXIT_INCONCLUSIVE if isinstance(verdict, Inconclusive) else EXIT_OK
    return CommandResult(rpt.verdict_payload(verdict), code)


def cmd_six_term(ctx: RunContext) -> CommandResult:
    pb = _require_problem(ctx, "six-term")
    E = _require_E(pb, "six-term")
    return CommandResult({"E": rpt.field_payload(E), "sequence": rpt.six_term_payload(six_term(pb.F, E, pb.K))})


def cmd_frobenius_chain(ctx: RunContext) -> CommandResult:
    pb = _require_problem(ctx, "frobenius-chain")
    report = frobenius_chain_report(pb.ambient)
    return CommandResult(rpt.chain_payload(report), EXIT_OK if report.ok else EXIT_FAILURE)


def cmd_simple_chain(ctx: RunContext) -> CommandResult:
    pb = _require_problem(ctx, "simple-chain")
    if pb.spec.alpha is None:
        raise SpecError("命令 simple-chain 需要问题描述中的 alpha")
    report = simple_chain_report(pb.F, pb.K, pb.parse(pb.spec.alpha))
    return CommandResult(rpt.chain_payload(report), EXIT_OK if report.ok else EXIT_FAILURE)


def cmd_roundtrip(ctx: RunContext) -> CommandResult:
    pb = _require_problem(ctx, "roundtrip")
    report = jacobson_roundtrip(pb.F, pb.K, ctx.config.selftest.jacobson, ctx.seed)
    return CommandResult(rpt.roundtrip_payload(report), EXIT_OK if report.ok else EXIT_FAILURE)


def cmd_selftest(ctx: RunContext) -> CommandResult:
    for name in ctx.suites or ():
        if name not in SUITES:
            raise SpecError(f"未知的自检套件 {name!r},可选: {', '.join(SUITES)}")
    results = run_selftest(ctx.config, ctx.seed, ctx.suites)
    ok = all(r.ok for r in results.values())
    payload = {"suites": {name: r.payload() for name, r in results.items()}, "ok": ok}
    return CommandResult(payload, EXIT_OK if ok else EXIT_FAILURE)


def cmd_version(ctx: RunContext) -> CommandResult:
    return CommandResult({"version": __version__, "schema_version": SCHEMA_VERSION})


COMMANDS: Dict[str, Callable[[RunContext], CommandResult]] = {
    "analyze": cmd_analyze,
    "cotangent": cmd_cotangent,
    "derivations": cmd_derivations,
    "fixed-field": cmd_fixed_field,
    "galois-check": cmd_galois_check,
    "modularity": cmd_modularity,
    "six-term": cmd_six_term,
    "frobenius-chain": cmd_frobenius_chain,
    "simple-chain": cmd_simple_chain,
    "roundtrip": cmd_roundtrip,
    "selftest": cmd_selftest,
    "version": cmd_version,
}

# 不读问题描述的命令
_NO_SPEC = {"selftest", "version"}


def run(command: str, ctx: RunContext) -> CommandResult:
    """分派命令,底层异常包装成 CommandFailed

    Raises:
        UnknownCommand: 命令名不存在
        CommandFailed: 命令执行中抛出的 pigalois 异常
    """
    handler = COMMANDS.get(command)
    if handler is None:
        raise UnknownCommand(f"未知命令 {command!r},可选: {', '.join(COMMANDS)}")
    try:
        return handler(ctx)
    except PigaloisError as exc:
        raise CommandFailed(command, exc) from exc


# ---------------------------------------------------------------------------
# 参数与主流程
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pigalois",
        description="纯不可分域扩张的余切复形、限制李代数胚与 Galois 对应的精确计算",
    )
    parser.add_argument("command", help=f"命令: {', '.join(COMMANDS)}")
    parser.add_argument("--spec", default=None, help="问题描述 JSON 路径,缺省或 '-' 时读 stdin")
    parser.add_argument("--config", default=None, help="配置 JSON 路径")
    parser.add_argument("--seed", type=int, default=None, help="覆盖随机种子")
    parser.add_argument("--budget", type=int, default=None, help="覆盖模性搜索预算")
    output = parser.add_mutually_exclusive_group()
    output.add_argument("--json", dest="output", action="store_const", const="json", help="输出 JSON (默认)")
    output.add_argument("--text", dest="output", action="store_const", const="text", help="输出文本")
    parser.add_argument("--log-level", default=None, choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--suite", action="append", default=None, help="selftest 只运行指定套件,可重复")
    parser.add_argument("--timing", action="store_true", default=None, help="在报告中附带耗时")
    return parser


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    logging.getLogger("pigalois").setLevel(getattr(logging, level))


def _pick(*values: Optional[int]) -> int:
    """命令行参数 > 问题描述 > 配置"""
    return next(v for v in values if v is not None)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config).with_overrides(
            runtime__seed=args.seed,
            runtime__budget=args.budget,
            runtime__output=args.output,
            runtime__timing=args.timing,
            logging__level=args.log_level,
        )
    except PigaloisError as exc:
        sys.stderr.write(f"pigalois: {exc}\n")
        return exc.exit_code
    _configure_logging(config.logging.level)

    started = time.perf_counter()
    problem = None
    try:
        if args.command in COMMANDS and args.command not in _NO_SPEC:
            problem = load_spec(args.spec, config.limits)
        spec = problem.spec if problem is not None else None
        seed = _pick(args.seed, spec.seed if spec else None, config.runtime.seed)
        budget = _pick(args.budget, spec.budget if spec else None, config.runtime.budget)
        ctx = RunContext(problem, config, seed, budget, args.suite)
        result = run(args.command, ctx)
    except PigaloisError as exc:
        logger.error("%s", exc)
        sys.stderr.write(f"pigalois: {exc}\n")
        return exc.exit_code

    timing = time.perf_counter() - started if config.runtime.timing else None
    report = rpt.envelope(args.command, result.payload, __version__, problem.spec if problem else None, timing)
    text = rpt.render_json(report) if config.runtime.output == "json" else rpt.render_text(report)
    sys.stdout.write(text)
    logger.info("命令 %s 完成, 退出码 %d", args.command, result.exit_code)
    logger.debug("展开缓存: %s", expansion_cache_stats())
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
