"""问题描述(JSON)的 schema、读取与域的构造。

示例(p=2 的 Sweedler 扩张)::

    {"p": 2, "variables": ["x", "y", "z"], "exponent_bound": 2,
     "F": {"generators": ["x*z+y", "z"]},
     "K": {"generators": ["x^2", "y^2"]}}

A^{p^e} 总是隐式包含在每个域里,生成元只列额外的元素。F 默认取
K(F 的生成元);``"includes_K": false`` 时取 A^{p^e}(F 的生成元),
并检查 K ⊆ F。E 总是取 K(E 的生成元)。
"""

from __future__ import annotations

import json
import logging
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import IO, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator
from sympy import isprime

from ..algebra.funcfield import RatFunc
from ..config import LimitsSection
from ..errors import ConfigError, NotATower, SchemaError, SpecError
from ..fields.tower import AmbientField, IntermediateField, check_subfield
from .expression import parse_expression, parse_many

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class FieldSpec(BaseModel):
    """单个中间域:额外生成元的表达式列表"""

    model_config = ConfigDict(extra="forbid")

    generators: List[str] = Field(default_factory=list, description="生成元表达式")
    includes_K: bool = Field(default=True, description="仅对 F 有效:是否把 K 的生成元并入 F")


class ProblemSpec(BaseModel):
    """一个 K ⊆ (E ⊆) F ⊆ A 的问题描述"""

    model_config = ConfigDict(extra="forbid")

    schema_version: Literal["1"] = Field(default=SCHEMA_VERSION, description="schema 版本")
    p: int = Field(..., description="特征,必须是素数")
    variables: List[str] = Field(..., min_length=1, description="环境域 A 的变量名")
    exponent_bound: int = Field(..., ge=1, description="环境指数上界 e,所有域都包含 A^{p^e}")
    F: FieldSpec = Field(default_factory=FieldSpec)
    K: FieldSpec = Field(default_factory=FieldSpec)
    E: Optional[FieldSpec] = Field(default=None, description="塔类命令需要的中间域")
    seed: Optional[int] = Field(default=None, ge=0, lt=2**64, description="覆盖配置中的种子")
    budget: Optional[int] = Field(default=None, ge=1, description="覆盖配置中的搜索预算")
    derivations: List[List[str]] = Field(
        default_factory=list,
        description="fixed-field 命令读取的导子,每个是在 F/K 贪心表现生成元上的取值",
    )
    alpha: Optional[str] = Field(default=None, description="simple-chain 使用的单生成元")

    @field_validator("p")
    @classmethod
    def _prime(cls, v: int) -> int:
        if v < 2 or not isprime(v):
            raise ValueError(f"p={v} 不是素数")
        return v

    @field_validator("variables")
    @classmethod
    def _names(cls, v: List[str]) -> List[str]:
        for name in v:
            if not _NAME_RE.match(name):
                raise ValueError(f"非法变量名 {name!r}")
        if len(set(v)) != len(v):
            raise ValueError("变量名重复")
        return v


@dataclass(frozen=True)
class Problem:
    """校验并构造好的问题:环境域与各中间域"""

    spec: ProblemSpec
    ambient: AmbientField
    F: IntermediateField
    K: IntermediateField
    E: Optional[IntermediateField]

    def parse(self, text: str) -> RatFunc:
        return parse_expression(text, self.ambient.field)


def read_spec(source: Union[str, Path, IO[str], None] = None) -> ProblemSpec:
    """读取 JSON 并做 schema 校验;source 为 None 或 "-" 时读 stdin

    Raises:
        SpecError: 无法读取或不是 JSON
        SchemaError: schema 不符
    """
    try:
        if source is None or source == "-":
            text = sys.stdin.read()
        elif hasattr(source, "read"):
            text = source.read()
        else:
            text = Path(source).read_text(encoding="utf-8")
        raw = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"无法读取问题描述: {exc}") from exc
    try:
        return ProblemSpec.model_validate(raw)
    except ValidationError as exc:
        raise SchemaError(f"问题描述校验失败: {exc}") from exc


def build_problem(spec: ProblemSpec, limits: Optional[LimitsSection] = None) -> Problem:
    """解析生成元、求闭包并检查 K ⊆ E ⊆ F

    Raises:
        ConfigError: 环境维数超过上限
        ParseError / UnknownVariable / ZeroDenominator: 生成元表达式有误
        NotASubfield: K ⊄ F,异常中带有违例生成元
        NotATower: E 不夹在 K 与 F 之间
    """
    limits = limits or LimitsSection()
    dimension = spec.p ** (spec.exponent_bound * len(spec.variables))
    if dimension > limits.max_ambient_dimension:
        raise ConfigError(f"环境维数 p^(eN) = {dimension} 超过上限 {limits.max_ambient_dimension}")
    ambient = AmbientField(spec.p, spec.variables, spec.exponent_bound)
    field = ambient.field

    def gens(section: FieldSpec) -> List[RatFunc]:
        return parse_many(section.generators, field)

    K = ambient.base().adjoin(gens(spec.K))
    if spec.F.includes_K:
        F = K.adjoin(gens(spec.F))
    else:
        F = ambient.base().adjoin(gens(spec.F))
        check_subfield(F, K)
    E = None
    if spec.E is not None:
        E = K.adjoin(gens(spec.E))
        if not F.contains_field(E):
            raise NotATower("E ⊄ F")
    logger.info("问题已构造: %s, [F:B]=%d, [K:B]=%d", ambient, F.dim, K.dim)
    return Problem(spec, ambient, F, K, E)


def load_spec(source: Union[str, Path, IO[str], None] = None, limits: Optional[LimitsSection] = None) -> Problem:
    return build_problem(read_spec(source), limits)
