"""
量子偶服务
D(σ) = K*cop ⋈_σ H，基 e_a*⋈f_j 的平坦下标 a·dim H + j
"""
import logging
from typing import Optional

import numpy as np

from app.models.hopf import HopfAlgebraData
from app.models.pairing import HopfPairing
from app.services.hopf_service import HopfService
from app.services.pairing_service import PairingService
from app.utils.tensor_ops import contract

logger = logging.getLogger(__name__)


class DoubleService:
    """量子偶服务"""

    def __init__(self):
        self.hopf_service = HopfService()
        self.pairing_service = PairingService()

    def quantum_double(self, p: HopfPairing, verify: Optional[bool] = None) -> HopfAlgebraData:
        """
        构造量子偶 D(σ)

        乘法 (a⋈h)(b⋈k) = Σ σ(b₃, h₁) a·b₂ ⋈ h₂k σ̄(b₁, h₃)，其中 b 的 Sweedler 腿取 K* 的余乘法

        Args:
            p: Hopf 配对
            verify: 是否运行 Hopf 公理验证

        Returns:
            dim K · dim H 维 Hopf 代数
        """
        F, K, H = p.field, p.k_alg, p.h_alg
        m, n = K.dim, H.dim
        d = m * n
        Ks = self.hopf_service.dual(K)
        P = p.form
        Pbar = self.pairing_service.sigma_bar(p)
        D2Ks = self.hopf_service.iterated_comult(Ks)
        D2H = self.hopf_service.iterated_comult(H)

        logger.info("Building quantum double of %s (dimension %d)", p.name, d)
        T = contract(
            F, "bpqr,rs,pt,jsut,aqc,ukl->ajbkcl",
            D2Ks, P, Pbar, D2H, Ks.mult, H.mult,
        )
        mult = T.reshape(d, d, d)
        unit = F.kron(K.counit, H.unit)
        comult = F.outer(Ks.comult, H.comult).transpose(0, 3, 2, 4, 1, 5).reshape(d, d, d)
        counit = F.kron(K.unit, H.counit)
        antipode = self._double_antipode(p, T, Ks)

        return self.hopf_service.build(
            f"D({p.name})", F, mult, unit, np.ascontiguousarray(comult), counit,
            antipode, verify=verify,
        )

    def _double_antipode(self, p: HopfPairing, T: np.ndarray, Ks: HopfAlgebraData) -> np.ndarray:
        # S(a⋈h) = (ε⋈S(h))·(S_{K*}⁻¹(a)⋈1)
        F, H = p.field, p.h_alg
        d = p.k_alg.dim * H.dim
        S6 = contract(
            F, "xybucl,x,u,jy,ab->ajcl",
            T, Ks.unit, H.unit, H.antipode, Ks.antipode_inv,
        )
        return S6.reshape(d, d)

    def quantum_double_cop_route(self, p: HopfPairing) -> HopfAlgebraData:
        """
        通过显式构造 K*cop 得到的量子偶，腿标号按 K*cop 的余乘法书写，
        与 quantum_double 的结果应逐项相等
        """
        F, K, H = p.field, p.k_alg, p.h_alg
        m, n = K.dim, H.dim
        d = m * n
        Kc = self.hopf_service.variant(self.hopf_service.dual(K), "cop")
        P = p.form
        Pbar = self.pairing_service.sigma_bar(p)
        D2Kc = self.hopf_service.iterated_comult(Kc)
        D2H = self.hopf_service.iterated_comult(H)

        T = contract(
            F, "bpqr,ps,rt,jsut,aqc,ukl->ajbkcl",
            D2Kc, P, Pbar, D2H, Kc.mult, H.mult,
        )
        mult = T.reshape(d, d, d)
        comult = F.outer(Kc.comult, H.comult).transpose(0, 3, 1, 4, 2, 5).reshape(d, d, d)
        S6 = contract(
            F, "xybucl,x,u,jy,ab->ajcl",
            T, Kc.unit, H.unit, H.antipode, Kc.antipode,
        )
        return self.hopf_service.build(
            f"D({p.name})", F, mult, F.kron(K.counit, H.unit),
            np.ascontiguousarray(comult), F.kron(K.unit, H.counit), S6.reshape(d, d),
            verify=False,
        )

    def drinfeld_double(self, h: HopfAlgebraData, verify: Optional[bool] = None) -> HopfAlgebraData:
        """Drinfeld 偶 D(H)：求值配对上的量子偶"""
        p = self.pairing_service.standard_pairing("evaluation", h, h, name=f"eval-{h.name}")
        return self.quantum_double(p, verify=verify)
