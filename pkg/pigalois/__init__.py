"""
pigalois: 纯不可分域扩张的精确计算

- algebra: 有理函数、函数域上的精确线性代数、有界缓存
- fields: 环境域、中间域、三角表现、线性无交
- homology: 两项余切复形、复形映射、六项正合列
- lie: 导子、限制李代数胚、公理检验、同伦数据
- galois: 本质像条件、单扩张、Jacobson 往返、模性判定
- io: 表达式文法、问题描述、报告渲染、自检套件
- cli: 命令行入口
"""

__version__ = "1.0.0"
