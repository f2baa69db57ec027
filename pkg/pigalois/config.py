"""pigalois 配置模型。

按 section 拆分,每个字段带 ``description``,顶层配置用
``default_factory`` 组合各 section。加载顺序为 默认值 → ``--config`` JSON 文件 →
命令行参数;校验失败统一转成 :class:`~pigalois.errors.ConfigError`。
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .errors import ConfigError

# ---------------------------------------------------------------------------
# Sections
# ---------------------------------------------------------------------------


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", validate_assignment=True)


class RuntimeSection(_Section):
    """运行参数"""

    seed: int = Field(default=42, ge=0, lt=2**64, description="随机化测试与搜索使用的 64 位种子")
    budget: int = Field(default=200, ge=1, description="模性分解搜索每层最多尝试的候选生成元个数")
    output: Literal["json", "text"] = Field(default="json", description="报告输出格式")
    timing: bool = Field(default=False, description="是否在 JSON 报告中附带耗时(会破坏逐字节稳定性)")


class LimitsSection(_Section):
    """规模与支持范围限制"""

    supported_primes_for_axioms: list[int] = Field(
        default_factory=lambda: [2, 3, 5],
        description="限制李代数公理检验支持的素数;p-1 层嵌套括号在更大的 p 下不可行",
    )
    max_ambient_dimension: int = Field(
        default=729,
        ge=1,
        description="环境域 A 在 A^{p^e} 上的维数 p^{eN} 上限,超出时拒绝运行",
    )


class SelftestSection(_Section):
    """自检套件的试验次数"""

    cartier: int = Field(default=50, ge=0, description="Cartier 等式随机域对个数")
    jacobson: int = Field(default=25, ge=0, description="Jacobson 往返随机试验个数(每个方向)")
    six_term: int = Field(default=100, ge=0, description="六项正合列随机塔个数")
    axioms: int = Field(default=50, ge=0, description="限制李代数公理随机导子对个数")
    essential: int = Field(default=20, ge=0, description="本质像条件随机中间域个数")
    frobenius_kill: int = Field(default=100, ge=0, description="导子消灭 p 次幂的随机元素个数")


class LoggingSection(_Section):
    """日志"""

    level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(default="WARNING", description="根 logger 级别")


# ---------------------------------------------------------------------------
# Top-level config
# ---------------------------------------------------------------------------


class PigaloisConfig(_Section):
    """pigalois 顶层配置"""

    runtime: RuntimeSection = Field(default_factory=RuntimeSection)
    limits: LimitsSection = Field(default_factory=LimitsSection)
    selftest: SelftestSection = Field(default_factory=SelftestSection)
    logging: LoggingSection = Field(default_factory=LoggingSection)

    def with_overrides(self, **overrides: Any) -> "PigaloisConfig":
        """按 ``section__field=value`` 形式覆盖配置项,值为 None 的项跳过。

        Raises:
            ConfigError: 覆盖后的配置不合法
        """
        data = self.model_dump()
        for key, value in overrides.items():
            if value is None:
                continue
            section, _, field = key.partition("__")
            if section not in data or field not in data[section]:
                raise ConfigError(f"未知配置项: {key}")
            data[section][field] = value
        return _validate(data)


def _validate(data: Any) -> PigaloisConfig:
    try:
        return PigaloisConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"配置校验失败: {exc}") from exc


def load_config(path: Optional[str | Path] = None) -> PigaloisConfig:
    """读取配置;``path`` 为空时返回默认配置。

    Raises:
        ConfigError: 文件不存在、不是合法 JSON 或字段校验失败
    """
    if path is None:
        return PigaloisConfig()
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"无法读取配置文件 {path}: {exc}") from exc
    return _validate(raw)
