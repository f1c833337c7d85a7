"""
Hopf 代数数据模型

结构常数张量约定（n 为维数）:
  mult[a, b, c]    e_a·e_b = Σ_c mult[a,b,c] e_c
  comult[a, b, c]  Δ(e_a) = Σ comult[a,b,c] e_b⊗e_c
  antipode[a, b]   S(e_a) = Σ_b antipode[a,b] e_b
张量基 e_i⊗f_j 的平坦下标为 i·dim(F)+j；mult.reshape(n*n, n) 即 (n², n) 矩阵形式。
"""
from dataclasses import dataclass

import numpy as np

from app.utils.exact_math import FieldSpec


@dataclass(frozen=True, eq=False)
class AlgebraData:
    """结合代数（乘法与单位）"""
    field: FieldSpec
    dim: int
    mult: np.ndarray
    unit: np.ndarray


@dataclass(frozen=True, eq=False)
class CoalgebraData:
    """余代数（余乘法与余单位）"""
    field: FieldSpec
    dim: int
    comult: np.ndarray
    counit: np.ndarray


@dataclass(frozen=True, eq=False)
class HopfAlgebraData:
    """有限维 Hopf 代数，antipode_inv 在构造时求出"""
    name: str
    field: FieldSpec
    dim: int
    mult: np.ndarray
    unit: np.ndarray
    comult: np.ndarray
    counit: np.ndarray
    antipode: np.ndarray
    antipode_inv: np.ndarray

    @property
    def algebra(self) -> AlgebraData:
        return AlgebraData(self.field, self.dim, self.mult, self.unit)

    @property
    def coalgebra(self) -> CoalgebraData:
        return CoalgebraData(self.field, self.dim, self.comult, self.counit)

    @property
    def flat_mult(self) -> np.ndarray:
        return self.mult.reshape(self.dim * self.dim, self.dim)

    @property
    def flat_comult(self) -> np.ndarray:
        return self.comult.reshape(self.dim, self.dim * self.dim)

    def same_structure(self, other: "HopfAlgebraData") -> bool:
        """结构常数逐项相等（忽略名称）"""
        if self.field != other.field or self.dim != other.dim:
            return False
        f = self.field
        return (
            f.equal(self.mult, other.mult)
            and f.equal(self.unit, other.unit)
            and f.equal(self.comult, other.comult)
            and f.equal(self.counit, other.counit)
            and f.equal(self.antipode, other.antipode)
        )


@dataclass(frozen=True, eq=False)
class LinearMap:
    """带源、靶标签的线性映射，矩阵为输入在前 (dim_source, dim_target)"""
    source: str
    target: str
    matrix: np.ndarray

    @property
    def shape(self):
        return self.matrix.shape
