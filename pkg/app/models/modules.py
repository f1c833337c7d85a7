"""
模范畴对象数据模型

结构张量约定（v, w 为载体基下标）:
  YD 类型 1（左 H-模、右 K-余模）: action[h,v,w]、coaction[v,w,k]
  YD 类型 2（左 K-余模、右 H-模）: action[v,h,w]、coaction[v,k,w]
  RepModule: action[q,v,w]，q 为代数基下标
  DoiHopfModule: left_action[x,m,m']、right_action[m,x,m']、coaction[m,m',α]
  TwoSidedModule: left_action[x,m,m']、right_action[m,y,m']、
                  left_coaction[m,k,m']、right_coaction[m,m',k]
"""
from dataclasses import dataclass
from typing import Generic, TypeVar

import numpy as np

from app.models.hopf import AlgebraData, HopfAlgebraData
from app.models.pairing import HopfPairing
from app.models.report import VerificationReport

YD_LEFT_H = "H-mod/K-comod"
YD_RIGHT_H = "K-comod/H-mod"

SIDE_K = "K"
SIDE_K_STAR = "K*"


@dataclass(frozen=True, eq=False)
class YdModule:
    """相对 Yetter–Drinfeld 模"""
    flavor: str
    pairing: HopfPairing
    dim: int
    action: np.ndarray
    coaction: np.ndarray
    label: str = "V"


@dataclass(frozen=True, eq=False)
class RepModule:
    """代数上的左模"""
    algebra: HopfAlgebraData
    dim: int
    action: np.ndarray
    label: str = "V"


@dataclass(frozen=True, eq=False)
class DoiHopfContext:
    """
    相对 Doi-Hopf 模的环境

    c_star 为 K*cop（作为代数），a_star 为环境 Hopf 代数的对偶，
    c_star_coaction[x,z,α] 为 C* 的右 A*-余作用 x* ↦ Σ z*⊗α
    """
    pairing: HopfPairing
    c_star: AlgebraData
    a_star: HopfAlgebraData
    c_star_coaction: np.ndarray


@dataclass(frozen=True, eq=False)
class DoiHopfModule:
    """相对 Doi-Hopf 模：C*-双模与右 A*-余模"""
    context: DoiHopfContext
    dim: int
    left_action: np.ndarray
    right_action: np.ndarray
    coaction: np.ndarray
    label: str = "M"


@dataclass(frozen=True, eq=False)
class TwoSidedModule:
    """双边双余相对 Hopf 模"""
    side: str
    pairing: HopfPairing
    dim: int
    left_action: np.ndarray
    right_action: np.ndarray
    left_coaction: np.ndarray
    right_coaction: np.ndarray
    label: str = "M"


T = TypeVar("T")


@dataclass(frozen=True, eq=False)
class Verified(Generic[T]):
    """只由 verify_object 产生的"已验证"包装"""
    value: T
    report: VerificationReport
