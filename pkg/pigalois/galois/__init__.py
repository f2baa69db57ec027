"""
定理层面的检查

- checkers: 本质像三条件、单扩张判定、Jacobson 往返、Frobenius 链与单扩张链、导子消灭 p 次幂
- modularity: 模扩张判定(分解搜索 + 线性无交证书)
- analyze: 一对扩张的汇总报告
- sampling: 随机中间域与塔的抽样
"""
