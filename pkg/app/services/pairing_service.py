"""
Hopf 配对服务
配对公理 (i)–(v)、诱导映射 σ_l / σ_r、卷积逆 σ̄ 与标准配对
"""
import logging
from typing import Optional, Tuple

import numpy as np

from app.core.exceptions import AlgebraMismatch, FieldMismatch, NotHopfMap, ShapeMismatch, ValidationError
from app.models.hopf import HopfAlgebraData, LinearMap
from app.models.pairing import HopfPairing
from app.models.report import ReportEntry, VerificationReport
from app.services.hopf_service import HopfService
from app.utils.tensor_ops import contract

logger = logging.getLogger(__name__)

PAIRING_KINDS = ("evaluation", "trivial", "from_map")


class PairingService:
    """Hopf 配对服务"""

    def __init__(self):
        self.hopf_service = HopfService()

    def verify_pairing(self, p: HopfPairing) -> VerificationReport:
        """
        验证配对公理

        Returns:
            i-product / ii-coproduct / iii-unit / iv-counit / v-antipode
        """
        K, H, P = p.k_alg, p.h_alg, p.form
        if K.field != H.field:
            raise FieldMismatch("Pairing algebras live over different fields")
        if P.shape != (K.dim, H.dim):
            raise ShapeMismatch(f"Form has shape {P.shape}, expected {(K.dim, H.dim)}")
        F = K.field
        Ks = self.hopf_service.dual(K)

        entries = [
            ReportEntry.compare(
                "i-product", F,
                contract(F, "abc,ch->abh", Ks.mult, P),
                contract(F, "ai,bj,hij->abh", P, P, H.comult),
            ),
            ReportEntry.compare(
                "ii-coproduct", F,
                contract(F, "hkx,ax->ahk", H.mult, P),
                contract(F, "aij,ih,jk->ahk", Ks.comult, P, P),
            ),
            ReportEntry.compare("iii-unit", F, F.matmul(K.counit, P), H.counit),
            ReportEntry.compare("iv-counit", F, F.matmul(P, H.unit), K.unit),
            ReportEntry.compare(
                "v-antipode", F, F.matmul(P, H.antipode.T), F.matmul(K.antipode.T, P)
            ),
        ]
        return VerificationReport(p.name, entries)

    def induced_maps(self, p: HopfPairing) -> Tuple[LinearMap, LinearMap]:
        """
        诱导的 Hopf 代数映射

        Returns:
            (sigma_l: K*→H*, sigma_r: H→K)

        Raises:
            NotHopfMap: 诱导映射不是 Hopf 代数同态
        """
        K, H = p.k_alg, p.h_alg
        sigma_r = LinearMap(H.name, K.name, p.form.T)
        sigma_l = LinearMap(f"{K.name}*", f"{H.name}*", p.form)

        report_r = self.hopf_service.verify_hopf_map(sigma_r.matrix, H, K, "sigma_r")
        if not report_r.overall:
            raise NotHopfMap(f"sigma_r of {p.name} fails {report_r.failed_ids()}")
        report_l = self.hopf_service.verify_hopf_map(
            sigma_l.matrix, self.hopf_service.dual(K), self.hopf_service.dual(H), "sigma_l"
        )
        if not report_l.overall:
            raise NotHopfMap(f"sigma_l of {p.name} fails {report_l.failed_ids()}")
        # σ_l = σ_r*
        if not K.field.equal(sigma_l.matrix, sigma_r.matrix.T):
            raise NotHopfMap("sigma_l is not the dual of sigma_r")
        return sigma_l, sigma_r

    def sigma_bar(self, p: HopfPairing) -> np.ndarray:
        """σ̄ = σ∘(id⊗S⁻¹)，形状 (dim K, dim H)"""
        return p.field.matmul(p.form, p.h_alg.antipode_inv.T)

    def check_sigma_bar(self, p: HopfPairing) -> VerificationReport:
        """σ∗σ̄ = σ̄∗σ = ε⊗ε（K*cop⊗H 上的卷积）"""
        F, K, H = p.field, p.k_alg, p.h_alg
        P = p.form
        Pbar = self.sigma_bar(p)
        DKs = np.transpose(K.mult, (2, 0, 1))
        unit = F.outer(K.unit, H.counit)
        entries = [
            ReportEntry.compare(
                "sigma-times-sigma-bar", F,
                contract(F, "aij,hkl,jk,il->ah", DKs, H.comult, P, Pbar), unit,
            ),
            ReportEntry.compare(
                "sigma-bar-times-sigma", F,
                contract(F, "aij,hkl,jk,il->ah", DKs, H.comult, Pbar, P), unit,
            ),
        ]
        return VerificationReport(f"sigma-bar({p.name})", entries)

    def standard_pairing(self, kind: str, k_alg: HopfAlgebraData, h_alg: HopfAlgebraData,
                         f: Optional[np.ndarray] = None, name: Optional[str] = None) -> HopfPairing:
        """
        标准配对

        Args:
            kind: evaluation / trivial / from_map
            k_alg: K
            h_alg: H
            f: from_map 时的 Hopf 映射 H→K（输入在前）
            name: 配对名称

        Raises:
            AlgebraMismatch: evaluation 要求 K = H
            NotHopfMap: from_map 的映射不是 Hopf 同态
            ValidationError: 结果未通过配对验证
        """
        if k_alg.field != h_alg.field:
            raise FieldMismatch("Pairing algebras live over different fields")
        F = k_alg.field
        name = name or f"{kind}({k_alg.name},{h_alg.name})"

        if kind == "evaluation":
            if not k_alg.same_structure(h_alg):
                raise AlgebraMismatch(f"Evaluation needs K = H, got {k_alg.name} and {h_alg.name}")
            form = F.identity(k_alg.dim)
        elif kind == "trivial":
            form = F.outer(k_alg.unit, h_alg.counit)
        elif kind == "from_map":
            if f is None:
                raise NotHopfMap("from_map needs a map H→K")
            f = F.array(f)
            if f.shape != (h_alg.dim, k_alg.dim):
                raise NotHopfMap(f"Map has shape {f.shape}, expected {(h_alg.dim, k_alg.dim)}")
            report = self.hopf_service.verify_hopf_map(f, h_alg, k_alg, "from_map")
            if not report.overall:
                raise NotHopfMap(f"Map is not a Hopf algebra map: {report.failed_ids()}")
            form = np.ascontiguousarray(f.T)
        else:
            raise ValueError(f"Unknown pairing kind {kind}")

        pairing = HopfPairing(name, k_alg, h_alg, form)
        report = self.verify_pairing(pairing)
        if not report.overall:
            raise ValidationError(report)
        logger.debug("Built %s pairing %s", kind, name)
        return pairing

    def swapped_pairing(self, p: HopfPairing) -> HopfPairing:
        """σ′(h, k*) = σ(k*, h)：K′ = H*，H′ = K*"""
        name = p.name[:-1] if p.name.endswith("'") else p.name + "'"
        return HopfPairing(
            name,
            self.hopf_service.dual(p.h_alg),
            self.hopf_service.dual(p.k_alg),
            np.ascontiguousarray(p.form.T),
        )

    def same_pairing(self, p: HopfPairing, q: HopfPairing) -> bool:
        if p is q:
            return True
        return (
            p.k_alg.same_structure(q.k_alg)
            and p.h_alg.same_structure(q.h_alg)
            and p.field.equal(p.form, q.form)
        )
