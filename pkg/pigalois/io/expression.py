"""有理函数表达式的词法分析与递归下降解析。

文法::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | base ('^' 非负整数)?
    base   := 整数 | 变量 | '(' expr ')'

整数按模 p 约化,空白不计;打印方向见 :func:`pigalois.algebra.funcfield.format_ratfunc`。
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import List, Sequence

from ..algebra.funcfield import FunctionField, RatFunc, format_ratfunc
from ..errors import ParseError, UnknownVariable, ZeroDenominator

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "name" | "op" | "end"
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    """Raises: ParseError"""
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"无法识别的字符 {text[offset]!r}", offset)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, field: FunctionField):
        self.field = field
        self.tokens = tokenize(text)
        self.index = 0
        self.names = {name: i for i, name in enumerate(field.names)}

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _accept(self, *ops: str) -> bool:
        token = self.current
        return token.kind == "op" and token.text in ops

    def _expect(self, op: str) -> None:
        token = self.current
        if token.kind != "op" or token.text != op:
            found = token.text or "输入结尾"
            raise ParseError(f"期望 {op!r}, 实际为 {found!r}", token.position)
        self._advance()

    def parse(self) -> RatFunc:
        value = self.expr()
        token = self.current
        if token.kind != "end":
            raise ParseError(f"多余的输入 {token.text!r}", token.position)
        return value

    def expr(self) -> RatFunc:
        value = self.term()
        while self._accept("+", "-"):
            op = self._advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RatFunc:
        value = self.factor()
        while self._accept("*", "/"):
            op = self._advance()
            rhs = self.factor()
            if op.text == "*":
                value = value * rhs
            elif rhs.is_zero():
                raise ZeroDenominator("分母为零", op.position + 1)
            else:
                value = value / rhs
        return value

    def factor(self) -> RatFunc:
        if self._accept("-"):
            self._advance()
            return -self.factor()
        value = self.base()
        if self._accept("^"):
            self._advance()
            token = self.current
            if token.kind != "int":
                raise ParseError("'^' 之后应为非负整数", token.position)
            self._advance()
            k = int(token.text)
            if k == 0:
                return self.field.one
            value = value**k
        return value

    def base(self) -> RatFunc:
        token = self.current
        if token.kind == "int":
            self._advance()
            return self.field.const(int(token.text))
        if token.kind == "name":
            self._advance()
            if token.text not in self.names:
                raise UnknownVariable(token.text, token.position)
            return self.field.var(self.names[token.text])
        if self._accept("("):
            self._advance()
            value = self.expr()
            self._expect(")")
            return value
        found = token.text or "输入结尾"
        raise ParseError(f"期望整数、变量或 '(' , 实际为 {found!r}", token.position)


def parse_expression(text: str, field: FunctionField) -> RatFunc:
    """把表达式解析成规范化的有理函数

    Raises:
        ParseError: 语法错误,带出错位置
        UnknownVariable: 变量未声明
        ZeroDenominator: 分母约化后为零
    """
    return _Parser(text, field).parse()


def parse_many(texts: Sequence[str], field: FunctionField) -> List[RatFunc]:
    return [parse_expression(t, field) for t in texts]


def format_expression(f: RatFunc) -> str:
    return format_ratfunc(f)
