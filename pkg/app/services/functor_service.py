"""
函子服务

YD 模与量子偶表示之间的同构 yd_to_rep / rep_to_yd，交换配对的 yd_swap 与 theta，
以及表示与相对 Doi-Hopf 模之间的 psi / phi
"""
import logging
from typing import Dict, Tuple

import numpy as np

from app.core.exceptions import FlavorMismatch, NotComodule, ShapeMismatch
from app.models.hopf import AlgebraData, HopfAlgebraData
from app.models.modules import YD_LEFT_H, DoiHopfContext, DoiHopfModule, RepModule, YdModule
from app.models.pairing import HopfPairing
from app.models.report import ReportEntry, VerificationReport
from app.services.double_service import DoubleService
from app.services.hopf_service import HopfService
from app.services.module_category_service import ModuleCategoryService
from app.services.pairing_service import PairingService
from app.services.partial_dual_service import PartialDualService
from app.utils.exact_math import Quotient, Subspace
from app.utils.tensor_ops import contract

logger = logging.getLogger(__name__)


class FunctorService:
    """函子服务"""

    def __init__(self):
        self.hopf_service = HopfService()
        self.pairing_service = PairingService()
        self.double_service = DoubleService()
        self.partial_dual_service = PartialDualService()
        self.module_service = ModuleCategoryService()
        self._doubles: Dict[int, Tuple[HopfPairing, HopfAlgebraData]] = {}
        self._contexts: Dict[int, Tuple[HopfPairing, DoiHopfContext]] = {}

    # ------------------------------------------------------------------
    # 缓存的环境对象
    # ------------------------------------------------------------------
    def double_of(self, p: HopfPairing) -> HopfAlgebraData:
        """配对的量子偶（按配对对象缓存）"""
        cached = self._doubles.get(id(p))
        if cached is None:
            cached = (p, self.double_service.quantum_double(p))
            self._doubles[id(p)] = cached
        return cached[1]

    def doi_hopf_context(self, p: HopfPairing) -> DoiHopfContext:
        """
        相对 Doi-Hopf 模的环境：C* = K*cop（作为代数），A* = (K^op⊗H)*，
        C* 的右 A*-余作用由标准 PAMS 中 C 的作用对偶而来
        """
        cached = self._contexts.get(id(p))
        if cached is None:
            s = self.partial_dual_service.canonical_pams(p)
            Ks = self.hopf_service.dual(p.k_alg)
            c_star = AlgebraData(p.field, Ks.dim, Ks.mult, Ks.unit)
            a_star = self.hopf_service.dual(s.ambient)
            coaction = np.ascontiguousarray(np.transpose(s.c.action, (2, 0, 1)))
            cached = (p, DoiHopfContext(p, c_star, a_star, coaction))
            self._contexts[id(p)] = cached
        return cached[1]

    # ------------------------------------------------------------------
    # YD 模 ⇄ 量子偶表示
    # ------------------------------------------------------------------
    def yd_to_rep(self, v: YdModule) -> RepModule:
        """(k*⋈h)·v = Σ (h·v)₍₀₎ ⟨k*, (h·v)₍₁₎⟩"""
        if v.flavor != YD_LEFT_H:
            raise FlavorMismatch("yd_to_rep expects an H-module/K-comodule")
        p = v.pairing
        qd = self.double_of(p)
        action = contract(p.field, "jvu,uwa->ajvw", v.action, v.coaction)
        return RepModule(qd, v.dim, action.reshape(qd.dim, v.dim, v.dim), label=v.label)

    def rep_to_yd(self, r: RepModule, p: HopfPairing) -> YdModule:
        """
        量子偶表示恢复为 YD 模：H 经 ε⋈h 作用，余作用 v ↦ Σ (e_i*⋈1)·v ⊗ e_i

        Raises:
            ShapeMismatch: 表示不在 D(σ) 上
            NotComodule: 恢复出的余作用不满足余模公理
        """
        F, K, H = p.field, p.k_alg, p.h_alg
        m, n, d = K.dim, H.dim, r.dim
        if r.algebra.dim != m * n:
            raise ShapeMismatch(f"Representation is over an algebra of dimension {r.algebra.dim}")
        rep4 = r.action.reshape(m, n, d, d)
        action = contract(F, "a,ajvw->jvw", K.counit, rep4)
        coaction = contract(F, "u,iuvw->vwi", H.unit, rep4)
        v = YdModule(YD_LEFT_H, p, d, action, coaction, label=r.label)

        entries = [
            ReportEntry.compare(
                "comodule-coassociativity", F,
                contract(F, "vuq,uwp->vwpq", coaction, coaction),
                contract(F, "vwk,kpq->vwpq", coaction, K.comult),
            ),
            ReportEntry.compare("comodule-counit", F, contract(F, "vwk,k->vw", coaction, K.counit),
                                F.identity(d)),
        ]
        failed = [e.check_id for e in entries if not e.passed]
        if failed:
            raise NotComodule(f"Recovered coaction of {r.label} fails {failed}")
        return v

    # ------------------------------------------------------------------
    # 交换配对
    # ------------------------------------------------------------------
    def swapped(self, p: HopfPairing) -> HopfPairing:
        return self.pairing_service.swapped_pairing(p)

    def yd_swap(self, v: YdModule, swapped: HopfPairing = None) -> YdModule:
        """
        σ 上的 H-模/K-余模 ↦ σ′ 上的 K*-模/H*-余模

        k*⇀v = Σ v₍₀₎⟨k*, v₍₁₎⟩，v ↦ Σ_j f_j·v ⊗ f_j*
        """
        if v.flavor != YD_LEFT_H:
            raise FlavorMismatch("yd_swap expects an H-module/K-comodule")
        target = swapped or self.swapped(v.pairing)
        action = np.ascontiguousarray(np.transpose(v.coaction, (2, 0, 1)))
        coaction = np.ascontiguousarray(np.transpose(v.action, (1, 2, 0)))
        return YdModule(YD_LEFT_H, target, v.dim, action, coaction, label=f"swap({v.label})")

    def theta(self, v: YdModule) -> RepModule:
        """
        经 yd_swap 定义的 D(σ)-表示：(k*⋈h)·v = Σ k*⇀v₍₀₎ ⟨v₍₁₎, h⟩
        """
        p = v.pairing
        w = self.yd_swap(v)
        qd = self.double_of(p)
        action = contract(p.field, "vuj,auw->ajvw", w.coaction, w.action)
        return RepModule(qd, v.dim, action.reshape(qd.dim, v.dim, v.dim), label=f"theta({v.label})")

    # ------------------------------------------------------------------
    # 表示 ⇄ 相对 Doi-Hopf 模
    # ------------------------------------------------------------------
    def _rep_parts(self, r: RepModule, p: HopfPairing) -> Tuple[np.ndarray, np.ndarray]:
        """(K* 部分的作用 REPK[l,v,w], H 作用看作右 H*-余作用 VCO[v,w,y])"""
        F, K, H = p.field, p.k_alg, p.h_alg
        m, n, d = K.dim, H.dim, r.dim
        if r.algebra.dim != m * n:
            raise ShapeMismatch(f"Representation is over an algebra of dimension {r.algebra.dim}")
        rep4 = r.action.reshape(m, n, d, d)
        rep_k = contract(F, "luvw,u->lvw", rep4, H.unit)
        coaction = contract(F, "a,ayvw->vwy", K.counit, rep4)
        return rep_k, coaction

    def psi(self, r: RepModule, p: HopfPairing) -> DoiHopfModule:
        """
        D(σ)-表示 V ↦ V⊗K*

        l*·(v⊗k*) = Σ l*₍₂₎v ⊗ l*₍₁₎k*，(v⊗k*)·l* = v⊗k*l*，
        余作用取值于 A* = K*cop⊗H*
        """
        F, K, H = p.field, p.k_alg, p.h_alg
        m, dv = K.dim, r.dim
        D = dv * m
        Ks = self.hopf_service.dual(K)
        D2Ks = self.hopf_service.iterated_comult(Ks)
        rep_k, vco = self._rep_parts(r, p)

        left = contract(F, "lpq,qvw,pac->lvawc", Ks.comult, rep_k, Ks.mult).reshape(m, D, D)
        right = F.outer(F.identity(dv), Ks.mult).transpose(0, 2, 3, 1, 4).reshape(D, m, D)
        coaction = contract(F, "vwy,abcr,rt,jyt->vawcbj", vco, D2Ks, p.form, H.comult)
        return DoiHopfModule(
            self.doi_hopf_context(p), D, left, np.ascontiguousarray(right),
            coaction.reshape(D, D, m * H.dim), label=f"psi({r.label})",
        )

    def phi_with_quotient(self, x: DoiHopfModule) -> Tuple[RepModule, Quotient]:
        """
        相对 Doi-Hopf 模 M ↦ M/M·(K*)⁺，H 经 h·m = Σ m₍₀₎⟨m₍₁₎, ι(h)⟩ 作用

        Returns:
            (D(σ)-表示, 增广商)
        """
        p = x.context.pairing
        F, K = p.field, p.k_alg
        qd = self.double_of(p)
        s = self.partial_dual_service.canonical_pams(p)
        quot = self.module_service.augmentation_quotient(F, x.right_action, K.unit)
        h_action = contract(F, "mna,ha->hmn", x.coaction, s.iota)
        r = quot.dim
        if r == 0:
            action = F.zeros((qd.dim, 0, 0))
        else:
            action = contract(
                F, "iv,jvu,xuw,wk->xjik", quot.section, h_action, x.left_action, quot.projection
            ).reshape(qd.dim, r, r)
        return RepModule(qd, r, action, label=f"phi({x.label})"), quot

    def phi(self, x: DoiHopfModule) -> RepModule:
        return self.phi_with_quotient(x)[0]

    # ------------------------------------------------------------------
    # 检查
    # ------------------------------------------------------------------
    def check_yd_rep(self, v: YdModule) -> VerificationReport:
        """yd_to_rep 的结果合法、与 theta 一致，rep_to_yd 为其逆"""
        F = v.pairing.field
        report = VerificationReport(f"yd-rep({v.label})")
        r = self.yd_to_rep(v)
        report.merge(self.module_service.verify_object(r), "rep.")
        back = self.rep_to_yd(r, v.pairing)
        report.add(ReportEntry.compare_parts("round-trip", F, [
            (back.action, v.action), (back.coaction, v.coaction),
        ]))
        report.add(ReportEntry.compare("theta-agrees", F, self.theta(v).action, r.action))
        return report

    def check_monoidality(self, v: YdModule, w: YdModule) -> VerificationReport:
        """yd_to_rep(V⊗W) 与 D(σ) 余乘法给出的对角作用一致"""
        F = v.pairing.field
        rv, rw = self.yd_to_rep(v), self.yd_to_rep(w)
        qd = rv.algebra
        d = v.dim * w.dim
        diagonal = contract(F, "qxy,xvp,ywr->qvwpr", qd.comult, rv.action, rw.action).reshape(qd.dim, d, d)
        tensor = self.yd_to_rep(self.module_service.yd_tensor(v, w))
        entry = ReportEntry.compare("monoidal", F, tensor.action, diagonal)
        return VerificationReport(f"monoidal({v.label},{w.label})", [entry])

    def check_hom_spaces(self, v: YdModule, w: YdModule) -> VerificationReport:
        """Hom_YD(V, W) 与 Hom_D(σ)(V, W) 相同"""
        F = v.pairing.field
        yd = self.module_service.yd_morphisms(v, w)
        rep = self.module_service.intertwiners(self.yd_to_rep(v), self.yd_to_rep(w))
        width = v.dim * w.dim
        same = Subspace.from_rows(F, yd.reshape(-1, width), width).same_as(
            Subspace.from_rows(F, rep.reshape(-1, width), width)
        )
        entry = ReportEntry.condition("hom-spaces-agree", same, f"dim {len(yd)}", f"dim {len(rep)}")
        return VerificationReport(f"hom({v.label},{w.label})", [entry])

    def check_swap(self, v: YdModule, w: YdModule) -> VerificationReport:
        """yd_swap 合法、对合，且把张量积换成反序张量积"""
        p = v.pairing
        F = p.field
        swapped = self.swapped(p)
        report = VerificationReport(f"swap({v.label},{w.label})")
        sv = self.yd_swap(v, swapped)
        report.merge(self.module_service.verify_object(sv), "swap-valid.")

        twice = self.yd_swap(sv, self.swapped(swapped))
        report.add(ReportEntry.compare_parts("involution", F, [
            (twice.action, v.action), (twice.coaction, v.coaction),
        ]))

        lhs = self.yd_swap(self.module_service.yd_tensor(v, w), swapped)
        rhs = self.module_service.yd_tensor(self.yd_swap(w, swapped), sv)
        dv, dw = v.dim, w.dim
        act = rhs.action.reshape(-1, dw, dv, dw, dv).transpose(0, 2, 1, 4, 3).reshape(lhs.action.shape)
        coa = rhs.coaction.reshape(dw, dv, dw, dv, -1).transpose(1, 0, 3, 2, 4).reshape(lhs.coaction.shape)
        report.add(ReportEntry.compare_parts("reverses-tensor", F, [
            (lhs.action, act), (lhs.coaction, coa),
        ]))
        return report

    def check_phi_psi(self, r: RepModule, p: HopfPairing) -> VerificationReport:
        """
        psi(V) 合法，ψ 与 φ 互逆地把 V⊗K* 与 V□_{H*}A* 对应，
        且 phi(psi(V)) 经 v ↦ [v⊗ε] 同构于 V
        """
        F, K, H = p.field, p.k_alg, p.h_alg
        m, n, dv = K.dim, H.dim, r.dim
        Ks = self.hopf_service.dual(K)
        report = VerificationReport(f"phi-psi({r.label})")

        x = self.psi(r, p)
        report.merge(self.module_service.verify_object(x), "psi-valid.")

        _, vco = self._rep_parts(r, p)
        lco = contract(
            F, "bcd,dt,st,yps,pej->bjyce", Ks.comult, p.form, H.antipode_inv, H.comult, H.mult
        ).reshape(m * n, n, m * n)
        sub = self.module_service.cotensor(F, vco, lco)
        psi_map = contract(F, "vwy,abc,ct,jyt->vawbj", vco, Ks.comult, p.form, H.comult)
        psi_map = psi_map.reshape(dv * m, dv * m * n)
        phi_map = F.kron(F.identity(dv), F.kron(F.identity(m), H.unit.reshape(n, 1)))

        report.add(ReportEntry.condition("cotensor-dimension", sub.dim == dv * m, sub.dim, dv * m))
        report.add(ReportEntry.compare("phi-psi-identity", F, F.matmul(psi_map, phi_map),
                                       F.identity(dv * m)))
        report.add(ReportEntry.condition("psi-image-in-cotensor", sub.contains(psi_map)))
        report.add(ReportEntry.compare(
            "psi-phi-identity-on-cotensor", F,
            F.matmul(F.matmul(sub.basis, phi_map), psi_map), sub.basis,
        ))

        rbar, quot = self.phi_with_quotient(x)
        report.merge(self.module_service.verify_object(rbar), "phi-valid.")
        can = F.matmul(F.kron(F.identity(dv), K.counit.reshape(1, m)), quot.projection)
        bijective = quot.dim == dv and F.rank(can) == dv
        report.add(ReportEntry.condition("canonical-map-bijective", bijective, quot.dim, dv))
        if bijective:
            report.add(ReportEntry.compare(
                "canonical-map-intertwines", F,
                contract(F, "qvw,wr->qvr", r.action, can),
                contract(F, "vs,qsr->qvr", can, rbar.action),
            ))
        return report
