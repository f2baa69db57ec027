"""
输入输出

- expression: 表达式的词法分析与递归下降解析
- spec: 问题描述 JSON 的 schema 与域的构造
- report: 结果到 JSON 负载的转换,JSON/文本渲染
- selftest: 带种子的性质自检套件
"""
