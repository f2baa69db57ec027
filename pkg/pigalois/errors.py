"""pigalois 异常层级。

所有对外抛出的异常都继承 :class:`PigaloisError`,CLI 按类别映射退出码:

- ``SpecError`` / ``SchemaError`` / ``ParseError`` / ``UnknownVariable`` / ``UnknownCommand``: 2
- ``MathPreconditionError`` 子类(NotASubfield 等): 3
- ``InternalInconsistency``: 1(两个独立判据互相矛盾,属于 bug)
"""

from __future__ import annotations

from typing import Optional


class PigaloisError(Exception):
    """所有 pigalois 异常的基类"""

    exit_code: int = 1


class ConfigError(PigaloisError, ValueError):
    """配置非法(素数 p 不是素数、规模超限等)"""

    exit_code = 2


class SpecError(PigaloisError):
    """问题描述 JSON 不符合 schema"""

    exit_code = 2


class SchemaError(SpecError):
    """JSON 读取成功,但字段缺失、多余或取值非法"""


class ParseError(SpecError):
    """表达式语法错误,``position`` 为出错字符的下标(0 起)"""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (位置 {position})")
        self.position = position


class UnknownVariable(ParseError):
    """表达式中出现未声明的变量"""

    def __init__(self, name: str, position: int) -> None:
        super().__init__(f"未声明的变量 '{name}'", position)
        self.name = name


class UnknownCommand(SpecError):
    """CLI 命令名不存在"""


class DivisionByZero(PigaloisError, ZeroDivisionError):
    """有理函数除以零(分母在模 p 约化后为 0)"""

    exit_code = 3


class MathPreconditionError(PigaloisError):
    """数学前提不成立"""

    exit_code = 3


class NotASubfield(MathPreconditionError):
    """K ⊄ F;``generator`` 记录第一个不在 F 中的生成元(可打印形式)"""

    def __init__(self, message: str, generator: Optional[str] = None) -> None:
        super().__init__(message)
        self.generator = generator


class NotATower(MathPreconditionError):
    """K ⊆ E ⊆ F 不成立"""


class NotInField(MathPreconditionError):
    """元素不在给定的域中"""


class ExponentTooLarge(MathPreconditionError):
    """要求指数为 1 的操作收到了指数更高的扩张"""


class GeneratorsInsufficient(MathPreconditionError):
    """给定的生成元生成不了整个 F"""


class PresentationMismatch(MathPreconditionError):
    """两个导子不属于同一个表现(presentation)"""


class DimensionMismatch(MathPreconditionError):
    """锚映射矩阵的形状与 Der_K(F) 不符"""


class UnsupportedPrime(MathPreconditionError):
    """限制李代数公理检验只支持较小的素数"""


class CommandFailed(PigaloisError):
    """CLI 命令执行失败,包装底层异常并附带命令名"""

    def __init__(self, command: str, cause: PigaloisError) -> None:
        super().__init__(f"命令 {command} 失败: {cause}")
        self.command = command
        self.cause = cause
        self.exit_code = cause.exit_code


class InternalInconsistency(PigaloisError):
    """两条独立的判定路径给出了矛盾结论"""

    exit_code = 1


class NotADerivation(MathPreconditionError):
    """值向量不满足 J·d = 0,延拓不成 K-导子"""


class ZeroDenominator(DivisionByZero):
    """表达式中的分母约化后为零;属于输入错误,退出码 2"""

    exit_code = 2

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (位置 {position})")
        self.position = position
