"""
部分对偶相关数据模型：余模代数、模余代数、PAMS 与拟 Hopf 代数
"""
from dataclasses import dataclass

import numpy as np

from app.models.hopf import AlgebraData, CoalgebraData, HopfAlgebraData


@dataclass(frozen=True, eq=False)
class ComoduleAlgebra:
    """
    左 A-余模代数 B

    coaction[b, a, b'] 为 ρ(e_b) = Σ coaction[b,a,b'] a⊗e_b' 的系数
    """
    ambient: HopfAlgebraData
    algebra: AlgebraData
    coaction: np.ndarray

    @property
    def carrier_dim(self) -> int:
        return self.algebra.dim


@dataclass(frozen=True, eq=False)
class ModuleCoalgebra:
    """
    右 A-模余代数 C

    action[c, a, c'] 为 e_c ◁ a 在 e_c' 上的系数
    """
    ambient: HopfAlgebraData
    coalgebra: CoalgebraData
    action: np.ndarray

    @property
    def carrier_dim(self) -> int:
        return self.coalgebra.dim


@dataclass(frozen=True, eq=False)
class Pams:
    """
    部分可容许映射系统 (ι, ζ, π, γ)

    所有映射矩阵均为输入在前：
      iota (dim B, dim A)、zeta (dim A, dim B)、pi (dim A, dim C)、gamma (dim C, dim A)
    zeta_bar、gamma_bar 为卷积逆
    """
    name: str
    ambient: HopfAlgebraData
    b: ComoduleAlgebra
    c: ModuleCoalgebra
    iota: np.ndarray
    zeta: np.ndarray
    pi: np.ndarray
    gamma: np.ndarray
    zeta_bar: np.ndarray
    gamma_bar: np.ndarray

    @property
    def field(self):
        return self.ambient.field


@dataclass(frozen=True, eq=False)
class QuasiHopfData:
    """
    左部分对偶 C*#B（基 x*#b_j，平坦下标 x·dim B + j）

    comult 形状 (d, d, d)，associator 与 associator_inv 为三重张量元素 (d, d, d)
    """
    name: str
    field: object
    dim: int
    mult: np.ndarray
    unit: np.ndarray
    comult: np.ndarray
    counit: np.ndarray
    associator: np.ndarray
    associator_inv: np.ndarray
