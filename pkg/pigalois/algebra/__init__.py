"""代数底层。

- ``funcfield``: F_p(x_1..x_N) 中的规范有理函数、偏导、Frobenius 下降
- ``linalg``: 有理函数域上的精确稀疏线性代数(增量行最简形、零空间)
- ``xpoly``: 以环境域元素为系数、以表现变量 X_1..X_n 为未定元的多项式
- ``cache``: 线程安全的有界记忆表
"""
