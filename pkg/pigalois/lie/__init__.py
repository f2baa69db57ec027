"""导子与限制李代数胚。

- ``derivations``: 值向量表示的 K-导子、Der_K(F)、求值/括号/p 次幂
- ``algebroid``: 限制闭包、不动域、Der_E(F)
- ``axioms``: 限制李代数公理、Hochschild 公式、锚方程的随机检验
- ``homotopy``: 中间域对应的同伦群层面数据
"""
