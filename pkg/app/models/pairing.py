"""
Hopf 配对数据模型
"""
from dataclasses import dataclass

import numpy as np

from app.models.hopf import HopfAlgebraData


@dataclass(frozen=True, eq=False)
class HopfPairing:
    """
    Hopf 配对 σ: K*⊗H → k

    form[a, h] = σ(e_a*, f_h)，形状 (dim K, dim H)
    """
    name: str
    k_alg: HopfAlgebraData
    h_alg: HopfAlgebraData
    form: np.ndarray

    @property
    def field(self):
        return self.k_alg.field

    @property
    def sigma_r_matrix(self) -> np.ndarray:
        """σ_r: H → K，输入在前 (dim H, dim K)"""
        return self.form.T
