"""余切复形。

- ``cotangent``: 两项复形、同调、Cartier 检查、复形映射、表现比较映射
- ``sequence``: 塔的余纤维序列、六项正合列、直和比较
"""
