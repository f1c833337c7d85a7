"""
模范畴服务

YD 模、代数上的模、相对 Doi-Hopf 模与双边双余相对 Hopf 模的验证，
以及余张量积、代数上的张量积、余不变量与增广商等构造
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from app.core.config import settings
from app.core.exceptions import (
    CoactionNotClosed,
    ComputationTooLarge,
    FlavorMismatch,
    ShapeMismatch,
    ValidationError,
)
from app.models.hopf import HopfAlgebraData
from app.models.modules import (
    SIDE_K,
    SIDE_K_STAR,
    YD_LEFT_H,
    YD_RIGHT_H,
    DoiHopfModule,
    RepModule,
    TwoSidedModule,
    Verified,
    YdModule,
)
from app.models.pairing import HopfPairing
from app.models.report import ReportEntry, VerificationReport
from app.services.hopf_service import HopfService
from app.services.pairing_service import PairingService
from app.utils.check_runner import run_checks
from app.utils.exact_math import FieldSpec, Quotient, Subspace, stack_rows
from app.utils.tensor_ops import contract

logger = logging.getLogger(__name__)

ModuleObject = Union[YdModule, RepModule, DoiHopfModule, TwoSidedModule]

# 结构张量布局 -> 算子族 ops[q, v, w]
_TO_OPS = {"qvw": (0, 1, 2), "vqw": (1, 0, 2), "vwq": (2, 0, 1)}
_FROM_OPS = {"qvw": (0, 1, 2), "vqw": (1, 0, 2), "vwq": (1, 2, 0)}

DIRECTIONS = ("right-to-left", "left-to-right")


def to_ops(tensor: np.ndarray, layout: str) -> np.ndarray:
    """把结构张量排成算子族 ops[q]，每个 ops[q] 为输入在前的矩阵"""
    return np.transpose(tensor, _TO_OPS[layout])


def from_ops(ops: np.ndarray, layout: str) -> np.ndarray:
    return np.ascontiguousarray(np.transpose(ops, _FROM_OPS[layout]))


@dataclass(frozen=True)
class TwoSidedFrame:
    """
    双边模所在的环境：作用代数 X、Y，余作用余代数 Lc、Rc，
    以及相容性条件中用到的四个 Hopf 映射（输入在前）
    """
    x_alg: HopfAlgebraData
    y_alg: HopfAlgebraData
    lc_alg: HopfAlgebraData
    rc_alg: HopfAlgebraData
    x_to_lc: np.ndarray
    y_to_lc: np.ndarray
    x_to_rc: np.ndarray
    y_to_rc: np.ndarray


class ModuleCategoryService:
    """模范畴服务"""

    def __init__(self):
        self.hopf_service = HopfService()
        self.pairing_service = PairingService()

    # ------------------------------------------------------------------
    # 验证
    # ------------------------------------------------------------------
    def verify_object(self, obj: ModuleObject) -> VerificationReport:
        """
        按对象类型验证全部公理

        Raises:
            ShapeMismatch: 结构张量形状与载体维数不符
        """
        if isinstance(obj, YdModule):
            return self._verify_yd(obj)
        if isinstance(obj, RepModule):
            return self._verify_rep(obj)
        if isinstance(obj, DoiHopfModule):
            return self._verify_doi_hopf(obj)
        if isinstance(obj, TwoSidedModule):
            return self._verify_two_sided(obj)
        raise TypeError(f"Unsupported object {type(obj).__name__}")

    def certify(self, obj: ModuleObject) -> Verified:
        """验证并包装为 Verified，失败时抛出 ValidationError"""
        report = self.verify_object(obj)
        if not report.overall:
            raise ValidationError(report)
        return Verified(obj, report)

    def _twist_tensors(self, p: HopfPairing) -> Tuple[np.ndarray, np.ndarray]:
        """
        TRI[h₃,y,h₁,k]  为 σ_r(h₃)·y·S⁻¹σ_r(h₁) 在 e_k 上的系数
        TRI2[h₃,y,h₁,k] 为 S⁻¹σ_r(h₃)·y·σ_r(h₁) 在 e_k 上的系数
        """
        F, K = p.field, p.k_alg
        R = p.sigma_r_matrix
        RSi = F.matmul(R, K.antipode_inv)
        tri = contract(F, "zt,tyq,qsk,xs->zyxk", R, K.mult, K.mult, RSi)
        tri2 = contract(F, "zt,tyq,qsk,xs->zyxk", RSi, K.mult, K.mult, R)
        return tri, tri2

    def _check_dims(self, name: str, tensor: np.ndarray, shape: Tuple[int, ...]):
        if tensor.shape != shape:
            raise ShapeMismatch(f"{name} has shape {tensor.shape}, expected {shape}")

    def _verify_yd(self, v: YdModule) -> VerificationReport:
        p = v.pairing
        F, K, H = p.field, p.k_alg, p.h_alg
        m, n, d = K.dim, H.dim, v.dim
        ACT, COA = v.action, v.coaction
        I = F.identity(d)
        D2H = self.hopf_service.iterated_comult(H)
        tri, tri2 = self._twist_tensors(p)

        if v.flavor == YD_LEFT_H:
            self._check_dims("action", ACT, (n, d, d))
            self._check_dims("coaction", COA, (d, d, m))
            checks = [
                lambda: ReportEntry.compare(
                    "module-associativity", F,
                    contract(F, "hkx,xvw->hkvw", H.mult, ACT),
                    contract(F, "kvu,huw->hkvw", ACT, ACT),
                ),
                lambda: ReportEntry.compare("module-unit", F, contract(F, "u,uvw->vw", H.unit, ACT), I),
                lambda: ReportEntry.compare(
                    "comodule-coassociativity", F,
                    contract(F, "vuq,uwp->vwpq", COA, COA),
                    contract(F, "vwk,kpq->vwpq", COA, K.comult),
                ),
                lambda: ReportEntry.compare(
                    "comodule-counit", F, contract(F, "vwk,k->vw", COA, K.counit), I
                ),
                lambda: ReportEntry.compare(
                    "yd-compatibility", F,
                    contract(F, "hvu,uwk->hvwk", ACT, COA),
                    contract(F, "hxyz,zcxk,vuc,yuw->hvwk", D2H, tri, COA, ACT),
                ),
            ]
        elif v.flavor == YD_RIGHT_H:
            self._check_dims("action", ACT, (d, n, d))
            self._check_dims("coaction", COA, (d, m, d))
            checks = [
                lambda: ReportEntry.compare(
                    "module-associativity", F,
                    contract(F, "vhu,ukw->vhkw", ACT, ACT),
                    contract(F, "hkx,vxw->vhkw", H.mult, ACT),
                ),
                lambda: ReportEntry.compare("module-unit", F, contract(F, "u,vuw->vw", H.unit, ACT), I),
                lambda: ReportEntry.compare(
                    "comodule-coassociativity", F,
                    contract(F, "vkw,kpq->vpqw", COA, K.comult),
                    contract(F, "vpu,uqw->vpqw", COA, COA),
                ),
                lambda: ReportEntry.compare(
                    "comodule-counit", F, contract(F, "k,vkw->vw", K.counit, COA), I
                ),
                lambda: ReportEntry.compare(
                    "yd-compatibility", F,
                    contract(F, "vhu,ukw->vhkw", ACT, COA),
                    contract(F, "hxyz,zcxk,vcu,uyw->vhkw", D2H, tri2, COA, ACT),
                ),
            ]
        else:
            raise FlavorMismatch(f"Unknown YD flavor {v.flavor}")
        return VerificationReport(f"yd({v.label})", run_checks(checks))

    def _module_entries(self, F: FieldSpec, prefix: str, mult: np.ndarray, unit: np.ndarray,
                        ops: np.ndarray) -> List[ReportEntry]:
        """左模公理；ops[q] 为 e_q 的作用矩阵"""
        d = ops.shape[1]
        return [
            ReportEntry.compare(
                f"{prefix}associativity", F,
                contract(F, "qrx,xvw->qrvw", mult, ops),
                contract(F, "rvu,quw->qrvw", ops, ops),
            ),
            ReportEntry.compare(f"{prefix}unit", F, contract(F, "u,uvw->vw", unit, ops), F.identity(d)),
        ]

    def _verify_rep(self, r: RepModule) -> VerificationReport:
        A = r.algebra
        self._check_dims("action", r.action, (A.dim, r.dim, r.dim))
        entries = self._module_entries(A.field, "module-", A.mult, A.unit, r.action)
        return VerificationReport(f"rep({r.label})", entries)

    def _verify_doi_hopf(self, x: DoiHopfModule) -> VerificationReport:
        ctx = x.context
        F = ctx.a_star.field
        C, As = ctx.c_star, ctx.a_star
        d = x.dim
        LACT, RACT, MCO = x.left_action, x.right_action, x.coaction
        COACs = ctx.c_star_coaction
        self._check_dims("left_action", LACT, (C.dim, d, d))
        self._check_dims("right_action", RACT, (d, C.dim, d))
        self._check_dims("coaction", MCO, (d, d, As.dim))
        I = F.identity(d)

        checks = [
            lambda: ReportEntry.compare_parts(
                "left-module", F, self._module_pairs(F, C.mult, C.unit, LACT)
            ),
            lambda: ReportEntry.compare_parts(
                "right-module", F,
                self._module_pairs(F, np.transpose(C.mult, (1, 0, 2)), C.unit, to_ops(RACT, "vqw")),
            ),
            lambda: ReportEntry.compare(
                "bimodule", F,
                contract(F, "xmu,uyn->xmyn", LACT, RACT),
                contract(F, "myu,xun->xmyn", RACT, LACT),
            ),
            lambda: ReportEntry.compare_parts("comodule", F, [
                (contract(F, "mua,unb->mnba", MCO, MCO), contract(F, "mnc,cba->mnba", MCO, As.comult)),
                (contract(F, "mnc,c->mn", MCO, As.counit), I),
            ]),
            lambda: ReportEntry.compare(
                "left-compatibility", F,
                contract(F, "xmu,una->xmna", LACT, MCO),
                contract(F, "xzb,muc,zun,bca->xmna", COACs, MCO, LACT, As.mult),
            ),
            lambda: ReportEntry.compare(
                "right-compatibility", F,
                contract(F, "mxu,una->mxna", RACT, MCO),
                contract(F, "muc,uzn,xzb,cba->mxna", MCO, RACT, COACs, As.mult),
            ),
        ]
        return VerificationReport(f"doi-hopf({x.label})", run_checks(checks))

    def _module_pairs(self, F: FieldSpec, mult, unit, ops) -> List[Tuple[np.ndarray, np.ndarray]]:
        d = ops.shape[1]
        return [
            (contract(F, "qrx,xvw->qrvw", mult, ops), contract(F, "rvu,quw->qrvw", ops, ops)),
            (contract(F, "u,uvw->vw", unit, ops), F.identity(d)),
        ]

    def two_sided_frame(self, p: HopfPairing, side: str) -> TwoSidedFrame:
        """
        K 侧：X = K，Y = H，Lc = Rc = K，映射 id、σ_r、id、σ_r
        K* 侧：X = Y = Lc = K*，Rc = H*，映射 id、id、σ_l、σ_l
        """
        F, K, H = p.field, p.k_alg, p.h_alg
        if side == SIDE_K:
            I = F.identity(K.dim)
            R = p.sigma_r_matrix
            return TwoSidedFrame(K, H, K, K, I, R, I, R)
        if side == SIDE_K_STAR:
            Ks = self.hopf_service.dual(K)
            Hs = self.hopf_service.dual(H)
            I = F.identity(K.dim)
            return TwoSidedFrame(Ks, Ks, Ks, Hs, I, I, p.form, p.form)
        raise FlavorMismatch(f"Unknown side {side}")

    def _verify_two_sided(self, t: TwoSidedModule) -> VerificationReport:
        fr = self.two_sided_frame(t.pairing, t.side)
        F = t.pairing.field
        d = t.dim
        LA, RA, LC, RC = t.left_action, t.right_action, t.left_coaction, t.right_coaction
        self._check_dims("left_action", LA, (fr.x_alg.dim, d, d))
        self._check_dims("right_action", RA, (d, fr.y_alg.dim, d))
        self._check_dims("left_coaction", LC, (d, fr.lc_alg.dim, d))
        self._check_dims("right_coaction", RC, (d, d, fr.rc_alg.dim))
        I = F.identity(d)
        DX, DY = fr.x_alg.comult, fr.y_alg.comult
        MLc, MRc = fr.lc_alg.mult, fr.rc_alg.mult

        checks = [
            lambda: ReportEntry.compare_parts(
                "left-module", F, self._module_pairs(F, fr.x_alg.mult, fr.x_alg.unit, LA)
            ),
            lambda: ReportEntry.compare_parts("right-module", F, [
                (contract(F, "vyu,uzw->vyzw", RA, RA), contract(F, "yzt,vtw->vyzw", fr.y_alg.mult, RA)),
                (contract(F, "u,vuw->vw", fr.y_alg.unit, RA), I),
            ]),
            lambda: ReportEntry.compare(
                "bimodule", F,
                contract(F, "xmu,uyn->xmyn", LA, RA), contract(F, "myu,xun->xmyn", RA, LA),
            ),
            lambda: ReportEntry.compare_parts("left-comodule", F, [
                (contract(F, "vkw,kpq->vpqw", LC, fr.lc_alg.comult), contract(F, "vpu,uqw->vpqw", LC, LC)),
                (contract(F, "vkw,k->vw", LC, fr.lc_alg.counit), I),
            ]),
            lambda: ReportEntry.compare_parts("right-comodule", F, [
                (contract(F, "vuq,uwp->vwpq", RC, RC), contract(F, "vwk,kpq->vwpq", RC, fr.rc_alg.comult)),
                (contract(F, "vwk,k->vw", RC, fr.rc_alg.counit), I),
            ]),
            lambda: ReportEntry.compare(
                "bicomodule", F,
                contract(F, "mku,unl->mknl", LC, RC), contract(F, "mul,ukn->mknl", RC, LC),
            ),
            lambda: ReportEntry.compare(
                "compat-1", F,
                contract(F, "xmu,ukn->xmkn", LA, LC),
                contract(F, "xab,at,msu,tsk,bun->xmkn", DX, fr.x_to_lc, LC, MLc, LA),
            ),
            lambda: ReportEntry.compare(
                "compat-2", F,
                contract(F, "myu,ukn->mykn", RA, LC),
                contract(F, "yab,msu,at,stk,ubn->mykn", DY, LC, fr.y_to_lc, MLc, RA),
            ),
            lambda: ReportEntry.compare(
                "compat-3", F,
                contract(F, "xmu,unk->xmnk", LA, RC),
                contract(F, "xab,mus,aun,bt,tsk->xmnk", DX, RC, LA, fr.x_to_rc, MRc),
            ),
            lambda: ReportEntry.compare(
                "compat-4", F,
                contract(F, "myu,unk->mynk", RA, RC),
                contract(F, "yab,mus,uan,bt,stk->mynk", DY, RC, RA, fr.y_to_rc, MRc),
            ),
        ]
        return VerificationReport(f"two-sided-{t.side}({t.label})", run_checks(checks))

    # ------------------------------------------------------------------
    # 平凡对象与正则表示
    # ------------------------------------------------------------------
    def yd_trivial(self, p: HopfPairing, flavor: str = YD_LEFT_H) -> YdModule:
        """一维平凡 YD 模：h·v = ε(h)v，v ↦ v⊗1"""
        K, H = p.k_alg, p.h_alg
        if flavor == YD_LEFT_H:
            return YdModule(flavor, p, 1, H.counit.reshape(-1, 1, 1).copy(),
                            K.unit.reshape(1, 1, -1).copy(), label="k")
        if flavor == YD_RIGHT_H:
            return YdModule(flavor, p, 1, H.counit.reshape(1, -1, 1).copy(),
                            K.unit.reshape(1, -1, 1).copy(), label="k")
        raise FlavorMismatch(f"Unknown YD flavor {flavor}")

    def rep_trivial(self, algebra: HopfAlgebraData) -> RepModule:
        return RepModule(algebra, 1, algebra.counit.reshape(-1, 1, 1).copy(), label="k")

    def regular_rep(self, algebra: HopfAlgebraData) -> RepModule:
        """左正则表示"""
        return RepModule(algebra, algebra.dim, algebra.mult.copy(), label=f"regular({algebra.name})")

    # ------------------------------------------------------------------
    # 张量积
    # ------------------------------------------------------------------
    def _require_same_pairing(self, p: HopfPairing, q: HopfPairing):
        if not self.pairing_service.same_pairing(p, q):
            raise FlavorMismatch(f"Objects live over different pairings {p.name} and {q.name}")

    def yd_tensor(self, v: YdModule, w: YdModule) -> YdModule:
        """
        YD 模的张量积：对角作用与反序余作用（w 的余作用在左）

        Raises:
            FlavorMismatch: 类型或配对不一致
        """
        if v.flavor != w.flavor:
            raise FlavorMismatch(f"Cannot tensor {v.flavor} with {w.flavor}")
        self._require_same_pairing(v.pairing, w.pairing)
        p = v.pairing
        F, K, H = p.field, p.k_alg, p.h_alg
        dv, dw = v.dim, w.dim
        d = dv * dw
        if v.flavor == YD_LEFT_H:
            act = contract(F, "hab,avp,bwq->hvwpq", H.comult, v.action, w.action).reshape(H.dim, d, d)
            coa = contract(F, "vpa,wqb,bak->vwpqk", v.coaction, w.coaction, K.mult).reshape(d, d, K.dim)
        else:
            act = contract(F, "hab,vap,wbq->vwhpq", H.comult, v.action, w.action).reshape(d, H.dim, d)
            coa = contract(F, "vap,wbq,bak->vwkpq", v.coaction, w.coaction, K.mult).reshape(d, K.dim, d)
        return YdModule(v.flavor, p, d, act, coa, label=f"{v.label}⊗{w.label}")

    def unit_two_sided(self, p: HopfPairing, side: str) -> TwoSidedModule:
        """单位对象：K 侧为 K，K* 侧为 K*"""
        F, K = p.field, p.k_alg
        if side == SIDE_K:
            R = p.sigma_r_matrix
            right_action = contract(F, "hs,lsq->lhq", R, K.mult)
            return TwoSidedModule(side, p, K.dim, K.mult.copy(), right_action,
                                  K.comult.copy(), K.comult.copy(), label="K")
        if side == SIDE_K_STAR:
            Ks = self.hopf_service.dual(K)
            right_coaction = contract(F, "xqs,sy->xqy", Ks.comult, p.form)
            return TwoSidedModule(side, p, K.dim, Ks.mult.copy(), Ks.mult.copy(),
                                  Ks.comult.copy(), right_coaction, label="K*")
        raise FlavorMismatch(f"Unknown side {side}")

    def tensor_two_sided(self, m: TwoSidedModule, n: TwoSidedModule) -> TwoSidedModule:
        """
        K 侧为余张量积 M□_K N，K* 侧为 M⊗_{K*} N

        Raises:
            FlavorMismatch: 侧别或配对不一致
        """
        if m.side != n.side:
            raise FlavorMismatch(f"Cannot tensor side {m.side} with side {n.side}")
        self._require_same_pairing(m.pairing, n.pairing)
        fr = self.two_sided_frame(m.pairing, m.side)
        F = m.pairing.field
        dm, dn = m.dim, n.dim
        D = dm * dn
        Im, In = F.identity(dm), F.identity(dn)
        label = f"{m.label}⊗{n.label}"

        if m.side == SIDE_K:
            la = contract(F, "xab,amp,bnq->xmnpq", fr.x_alg.comult, m.left_action, n.left_action)
            ra = contract(F, "yab,map,nbq->mnypq", fr.y_alg.comult, m.right_action, n.right_action)
            lc = F.outer(m.left_coaction, In).transpose(0, 3, 1, 2, 4)
            rc = F.outer(Im, n.right_coaction).transpose(0, 2, 1, 3, 4)
            sub = self.cotensor(F, m.right_coaction, n.left_coaction)
            logger.debug("Cotensor %s has dimension %d", label, sub.dim)
            return TwoSidedModule(
                m.side, m.pairing, sub.dim,
                from_ops(self.restrict_ops(sub, la.reshape(-1, D, D)), "qvw"),
                from_ops(self.restrict_ops(sub, to_ops(ra.reshape(D, -1, D), "vqw")), "vqw"),
                from_ops(self.restrict_ops(sub, to_ops(lc.reshape(D, -1, D), "vqw")), "vqw"),
                from_ops(self.restrict_ops(sub, to_ops(rc.reshape(D, D, -1), "vwq")), "vwq"),
                label=label,
            )

        la = F.outer(m.left_action, In).transpose(0, 1, 3, 2, 4)
        ra = F.outer(Im, n.right_action).transpose(0, 2, 3, 1, 4)
        lc = contract(F, "map,nbq,abk->mnkpq", m.left_coaction, n.left_coaction, fr.lc_alg.mult)
        rc = contract(F, "mpa,nqb,abk->mnpqk", m.right_coaction, n.right_coaction, fr.rc_alg.mult)
        quot = self.tensor_over_algebra(F, m.right_action, n.left_action)
        logger.debug("Relative tensor %s has dimension %d", label, quot.dim)
        return TwoSidedModule(
            m.side, m.pairing, quot.dim,
            from_ops(self.induce_ops(quot, la.reshape(-1, D, D)), "qvw"),
            from_ops(self.induce_ops(quot, to_ops(ra.reshape(D, -1, D), "vqw")), "vqw"),
            from_ops(self.induce_ops(quot, to_ops(lc.reshape(D, -1, D), "vqw")), "vqw"),
            from_ops(self.induce_ops(quot, to_ops(rc.reshape(D, D, -1), "vwq")), "vwq"),
            label=label,
        )

    # ------------------------------------------------------------------
    # 子空间与商空间
    # ------------------------------------------------------------------
    def cotensor(self, field: FieldSpec, right_coaction: np.ndarray,
                 left_coaction: np.ndarray) -> Subspace:
        """
        余张量积 M□_C N ⊆ M⊗N

        Args:
            right_coaction: M 的右 C-余作用 [m, m', c]
            left_coaction: N 的左 C-余作用 [n, c, n']
        """
        rc, lc = np.asarray(right_coaction), np.asarray(left_coaction)
        if rc.shape[2] != lc.shape[1]:
            raise ShapeMismatch("Coactions are over coalgebras of different dimension")
        F = field
        dm, dn = rc.shape[0], lc.shape[0]
        t1 = F.outer(rc, F.identity(dn)).transpose(0, 3, 1, 2, 4)
        t2 = F.outer(F.identity(dm), lc).transpose(0, 2, 1, 3, 4)
        eq = F.sub(t1, t2).reshape(dm * dn, -1)
        return Subspace.from_rows(F, F.kernel_basis(eq.T), dm * dn)

    def tensor_over_algebra(self, field: FieldSpec, right_action: np.ndarray,
                            left_action: np.ndarray) -> Quotient:
        """
        M⊗_A N：M⊗N 模去 m·a⊗n − m⊗a·n

        Args:
            right_action: M 的右作用 [m, a, m']
            left_action: N 的左作用 [a, n, n']
        """
        ra, la = np.asarray(right_action), np.asarray(left_action)
        if ra.shape[1] != la.shape[0]:
            raise ShapeMismatch("Actions are by algebras of different dimension")
        F = field
        dm, dn = ra.shape[0], la.shape[1]
        t1 = F.outer(ra, F.identity(dn)).transpose(0, 1, 3, 2, 4)
        t2 = F.outer(F.identity(dm), la).transpose(0, 2, 3, 1, 4)
        relations = F.sub(t1, t2).reshape(-1, dm * dn)
        return Quotient.by_relations(F, relations, dm * dn)

    def coinvariants(self, field: FieldSpec, coaction: np.ndarray, grouplike: np.ndarray) -> Subspace:
        """
        余不变量 {v : ρ(v) = v⊗g}

        Args:
            coaction: 右余作用 [v, w, c]
            grouplike: 类群元 g 的坐标
        """
        coa = np.asarray(coaction)
        F = field
        d = coa.shape[0]
        eq = F.sub(coa, F.outer(F.identity(d), grouplike))
        return Subspace.from_rows(F, F.kernel_basis(eq.reshape(d, -1).T), d)

    def augmentation_quotient(self, field: FieldSpec, right_action: np.ndarray,
                              augmentation: np.ndarray) -> Quotient:
        """M/M·A⁺：模去 m·a − ε(a)m"""
        ra = np.asarray(right_action)
        F = field
        d = ra.shape[0]
        delta = F.outer(F.identity(d), augmentation).transpose(0, 2, 1)
        relations = F.sub(ra, delta).reshape(-1, d)
        return Quotient.by_relations(F, relations, d)

    def action_from_coaction(self, coaction: np.ndarray, direction: str) -> np.ndarray:
        """
        余作用转作用

        right-to-left: 右 C-余作用 [v,w,a] -> 左 C*-作用 [a,v,w]
        left-to-right: 左 C-余作用 [v,a,w] -> 右 C*-作用 [v,a,w]
        """
        if direction == "right-to-left":
            return from_ops(to_ops(coaction, "vwq"), "qvw")
        if direction == "left-to-right":
            return np.array(coaction, copy=True)
        raise ValueError(f"Unknown direction {direction}")

    def coaction_from_action(self, action: np.ndarray, direction: str) -> np.ndarray:
        """action_from_coaction 的逆"""
        if direction == "right-to-left":
            return from_ops(to_ops(action, "qvw"), "vwq")
        if direction == "left-to-right":
            return np.array(action, copy=True)
        raise ValueError(f"Unknown direction {direction}")

    def restrict_ops(self, sub: Subspace, ops: np.ndarray) -> np.ndarray:
        """
        把算子族限制到子空间上

        Raises:
            CoactionNotClosed: 子空间在算子下不封闭
        """
        F = sub.field
        if sub.dim == 0:
            return F.zeros((ops.shape[0], 0, 0))
        images = contract(F, "iv,qvw->qiw", sub.basis, ops)
        if not sub.contains(images.reshape(-1, sub.ambient_dim)):
            raise CoactionNotClosed("Subspace is not stable under the structure maps")
        return np.ascontiguousarray(sub.coordinates(images))

    def induce_ops(self, quot: Quotient, ops: np.ndarray) -> np.ndarray:
        """把算子族下推到商空间"""
        F = quot.field
        if quot.dim == 0:
            return F.zeros((ops.shape[0], 0, 0))
        return contract(F, "iv,qvw,wj->qij", quot.section, ops, quot.projection)

    # ------------------------------------------------------------------
    # 态射空间
    # ------------------------------------------------------------------
    def _commuting_maps(self, F: FieldSpec, families: Sequence[Tuple[np.ndarray, np.ndarray]],
                        dv: int, dw: int) -> np.ndarray:
        """所有满足 X[q] @ f = f @ Y[q] 的 f，返回形状 (k, dv, dw)"""
        blocks = []
        for x_ops, y_ops in families:
            t1 = F.outer(x_ops, F.identity(dw)).transpose(0, 1, 3, 2, 4)
            t2 = F.outer(F.identity(dv), y_ops).transpose(2, 0, 4, 1, 3)
            blocks.append(F.sub(t1, t2).reshape(-1, dv * dw))
        rows = stack_rows(F, blocks, dv * dw)
        return F.kernel_basis(rows).reshape(-1, dv, dw)

    def intertwiners(self, v: RepModule, w: RepModule) -> np.ndarray:
        """Hom_A(V, W) 的基，每个元素为输入在前的 (dim V, dim W) 矩阵"""
        if not v.algebra.same_structure(w.algebra):
            raise FlavorMismatch("Representations of different algebras")
        F = v.algebra.field
        return self._commuting_maps(F, [(v.action, w.action)], v.dim, w.dim)

    def yd_ops(self, v: YdModule) -> Tuple[np.ndarray, np.ndarray]:
        """(作用算子族, 余作用算子族)"""
        if v.flavor == YD_LEFT_H:
            return to_ops(v.action, "qvw"), to_ops(v.coaction, "vwq")
        return to_ops(v.action, "vqw"), to_ops(v.coaction, "vqw")

    def yd_morphisms(self, v: YdModule, w: YdModule) -> np.ndarray:
        """YD 模态射空间的基"""
        if v.flavor != w.flavor:
            raise FlavorMismatch(f"Cannot compare {v.flavor} with {w.flavor}")
        self._require_same_pairing(v.pairing, w.pairing)
        va, vc = self.yd_ops(v)
        wa, wc = self.yd_ops(w)
        return self._commuting_maps(v.pairing.field, [(va, wa), (vc, wc)], v.dim, w.dim)

    # ------------------------------------------------------------------
    # 测试对象
    # ------------------------------------------------------------------
    def cyclic_submodule(self, rep: RepModule, vector: np.ndarray, label: Optional[str] = None) -> RepModule:
        """由向量生成的循环子模 A·x"""
        F = rep.algebra.field
        x = F.array(vector)
        rows = contract(F, "v,qvw->qw", x, rep.action)
        sub = Subspace.from_rows(F, rows, rep.dim)
        action = self.restrict_ops(sub, rep.action)
        return RepModule(rep.algebra, sub.dim, action, label=label or f"cyclic({rep.label})")

    def sample_yd_modules(self, p: HopfPairing, action: np.ndarray, count: int, seed: int,
                          base_coaction: Optional[np.ndarray] = None) -> List[YdModule]:
        """
        给定类型 1 的 H-作用，随机采样满足相容性与余单位公理的 K-余作用

        相容性与余单位公理对余作用是线性的，解空间为 base + 零空间；
        余结合性是二次的，采样结果经 verify_object 过滤，只返回通过验证的对象

        Raises:
            ComputationTooLarge: 未知数超过 settings.max_dense_unknowns
        """
        F, K, H = p.field, p.k_alg, p.h_alg
        m, n = K.dim, H.dim
        action = F.array(action)
        d = action.shape[1]
        unknowns = d * d * m
        if unknowns > settings.max_dense_unknowns:
            raise ComputationTooLarge(f"Sampling needs {unknowns} unknowns")
        D2H = self.hopf_service.iterated_comult(H)
        tri, _ = self._twist_tensors(p)

        Id, Im = F.identity(d), F.identity(m)
        t2 = contract(F, "hxyz,ybw,zcxk->hbwck", D2H, action, tri)
        l1 = F.outer(action, F.outer(Id, Im)).transpose(0, 1, 4, 6, 2, 3, 5)
        l2 = F.outer(Id, t2).transpose(2, 0, 4, 6, 1, 3, 5)
        compat = F.sub(l1, l2).reshape(-1, unknowns)
        counit = F.outer(F.outer(Id, Id), K.counit).transpose(0, 2, 1, 3, 4).reshape(d * d, unknowns)
        system = np.concatenate([compat, counit], axis=0)
        rhs = np.concatenate([F.zeros(compat.shape[0]), Id.reshape(-1)])

        if base_coaction is None:
            base = F.solve(system, rhs)
        else:
            base = F.array(base_coaction).reshape(-1)
        null = F.kernel_basis(system)
        rng = np.random.default_rng(seed)

        samples = []
        for i in range(count):
            if len(null):
                coeffs = F.array([int(c) for c in rng.integers(-1, 2, size=len(null))])
                coaction = F.add(base, F.matmul(coeffs, null))
            else:
                coaction = base
            candidate = YdModule(YD_LEFT_H, p, d, action, coaction.reshape(d, d, m), label=f"sample-{i}")
            if self.verify_object(candidate).overall:
                samples.append(candidate)
        logger.info("Sampled %d of %d YD modules over %s", len(samples), count, p.name)
        return samples
