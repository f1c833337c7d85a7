"""
注册表示例键
"""
from dataclasses import dataclass
from typing import Tuple

FAMILIES = ("cyclic-group", "symmetric-group-3", "dual-group", "sweedler4", "taft")


@dataclass(frozen=True)
class ExampleKey:
    """
    示例键

    family: 见 FAMILIES
    params: cyclic-group (n,)；dual-group (n,) 表示 kC_n 的对偶，() 表示 kS_3 的对偶；
            taft (n, p, q)；其余为空
    """
    family: str
    params: Tuple[int, ...] = ()
