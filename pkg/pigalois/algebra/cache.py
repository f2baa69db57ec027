"""有界内存缓存。

导子求值要反复把同一个元素在表现的单项式基下展开,这是整个系统唯一的热点,
结果按 (表现, 元素) 记忆化。缓存内容是键的纯函数,所以淘汰策略不影响结果,
只影响速度。
"""

from __future__ import annotations

import logging
import threading
from collections import OrderedDict
from typing import Any, Callable, Dict, Generic, Hashable, TypeVar

logger = logging.getLogger(__name__)

V = TypeVar("V")


class MemoCache(Generic[V]):
    """线程安全的 LRU 记忆表"""

    def __init__(self, name: str, max_size: int = 4096):
        self.name = name
        self.max_size = max_size
        self._entries: "OrderedDict[Hashable, V]" = OrderedDict()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get_or_compute(self, key: Hashable, compute: Callable[[], V]) -> V:
        """命中则返回缓存值,否则计算并写入。

        计算在锁外进行;两个线程同时算同一个键时结果相同,后写入者覆盖即可。
        """
        with self._lock:
            if key in self._entries:
                self._entries.move_to_end(key)
                self.hits += 1
                return self._entries[key]
            self.misses += 1
        value = compute()
        with self._lock:
            if len(self._entries) >= self.max_size:
                # 删除最久未使用的条目
                oldest, _ = self._entries.popitem(last=False)
                logger.debug("缓存 %s 已满,淘汰 %r", self.name, oldest)
            self._entries[key] = value
        return value

    def clear(self) -> None:
        """清空缓存"""
        with self._lock:
            self._entries.clear()
            self.hits = 0
            self.misses = 0

    def get_cache_stats(self) -> Dict[str, Any]:
        """获取缓存统计信息"""
        with self._lock:
            return {
                "name": self.name,
                "cache_size": len(self._entries),
                "max_cache_size": self.max_size,
                "hits": self.hits,
                "misses": self.misses,
            }
