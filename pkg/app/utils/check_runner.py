"""
检查项执行器
max_workers > 1 时用线程池并行计算，结果顺序与提交顺序一致
"""
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar

from app.core.config import settings

T = TypeVar("T")


def run_checks(checks: Sequence[Callable[[], T]]) -> List[T]:
    """
    依次（或并行）执行检查函数

    Args:
        checks: 无参检查函数列表

    Returns:
        与 checks 同序的结果列表
    """
    if settings.max_workers <= 1 or len(checks) <= 1:
        return [check() for check in checks]
    with ThreadPoolExecutor(max_workers=settings.max_workers) as executor:
        return list(executor.map(lambda check: check(), checks))
