"""
Hopf 代数服务
结构常数的构造、公理验证、对偶/反向/张量积以及卷积逆
"""
import logging
from typing import Optional

import numpy as np

from app.core.config import settings
from app.core.exceptions import (
    FieldMismatch,
    NotConvolutionInvertible,
    ShapeMismatch,
    SingularMatrix,
    ValidationError,
)
from app.models.hopf import AlgebraData, CoalgebraData, HopfAlgebraData
from app.models.report import ReportEntry, VerificationReport
from app.utils.check_runner import run_checks
from app.utils.exact_math import FieldSpec
from app.utils.tensor_ops import contract

logger = logging.getLogger(__name__)

VARIANTS = ("op", "cop", "op-cop")


class HopfService:
    """Hopf 代数服务"""

    # ------------------------------------------------------------------
    # 构造
    # ------------------------------------------------------------------
    def build(self, name: str, field: FieldSpec, mult, unit, comult, counit, antipode,
              verify: Optional[bool] = None) -> HopfAlgebraData:
        """
        由结构常数构造 Hopf 代数，S⁻¹ 在此求出

        Args:
            name: 名称
            field: 标量域
            mult, unit, comult, counit, antipode: 结构常数（张量形式）
            verify: 是否运行公理验证，默认取 settings.verify_on_build

        Returns:
            HopfAlgebraData

        Raises:
            ShapeMismatch: 形状不一致
            SingularMatrix: 对极不可逆
            ValidationError: 公理验证失败
        """
        mult = field.array(mult)
        unit = field.array(unit)
        comult = field.array(comult)
        counit = field.array(counit)
        antipode = field.array(antipode)
        n = unit.shape[0] if unit.ndim == 1 else -1
        self._check_shapes(n, mult, unit, comult, counit, antipode)

        try:
            antipode_inv = field.invert(antipode)
        except SingularMatrix as e:
            raise SingularMatrix(f"Antipode of {name} is not invertible: {e}") from e

        h = HopfAlgebraData(name, field, n, mult, unit, comult, counit, antipode, antipode_inv)
        if settings.verify_on_build if verify is None else verify:
            report = self.verify_hopf(h)
            if not report.overall:
                logger.warning("Hopf algebra %s failed %s", name, report.failed_ids())
                raise ValidationError(report)
        logger.debug("Built Hopf algebra %s of dimension %d over %s", name, n, field.label)
        return h

    def _check_shapes(self, n, mult, unit, comult, counit, antipode):
        expected = {
            "mult": (mult, (n, n, n)),
            "unit": (unit, (n,)),
            "comult": (comult, (n, n, n)),
            "counit": (counit, (n,)),
            "antipode": (antipode, (n, n)),
        }
        for key, (value, shape) in expected.items():
            if n < 1 or value.shape != shape:
                raise ShapeMismatch(f"{key} has shape {value.shape}, expected {shape}")

    def ground_field_hopf(self, field: FieldSpec) -> HopfAlgebraData:
        """一维 Hopf 代数 k"""
        one = field.array([[[1]]])
        return HopfAlgebraData(
            "k", field, 1, one, field.array([1]), one.copy(), field.array([1]),
            field.array([[1]]), field.array([[1]]),
        )

    # ------------------------------------------------------------------
    # 验证
    # ------------------------------------------------------------------
    def verify_hopf(self, h: HopfAlgebraData) -> VerificationReport:
        """
        Hopf 公理验证，共 8 条

        Returns:
            associativity / unit / coassociativity / counit / comult-algebra-map /
            counit-algebra-map / antipode-left / antipode-right
        """
        F, n = h.field, h.dim
        M, U, D, E, S = h.mult, h.unit, h.comult, h.counit, h.antipode
        self._check_shapes(n, M, U, D, E, S)
        if h.antipode_inv.shape != (n, n):
            raise ShapeMismatch("antipode_inv has the wrong shape")
        I = F.identity(n)

        checks = [
            lambda: ReportEntry.compare(
                "associativity", F,
                contract(F, "abx,xce->abce", M, M),
                contract(F, "bcx,axe->abce", M, M),
            ),
            lambda: ReportEntry.compare_parts("unit", F, [
                (contract(F, "u,ubc->bc", U, M), I),
                (contract(F, "u,buc->bc", U, M), I),
            ]),
            lambda: ReportEntry.compare(
                "coassociativity", F,
                contract(F, "axd,xbc->abcd", D, D),
                contract(F, "abx,xcd->abcd", D, D),
            ),
            lambda: ReportEntry.compare_parts("counit", F, [
                (contract(F, "b,abc->ac", E, D), I),
                (contract(F, "c,abc->ab", E, D), I),
            ]),
            lambda: ReportEntry.compare_parts("comult-algebra-map", F, [
                (contract(F, "abx,xpq->abpq", M, D),
                 contract(F, "aij,ikp,bkl,jlq->abpq", D, M, D, M)),
                (contract(F, "u,upq->pq", U, D), F.outer(U, U)),
            ]),
            lambda: ReportEntry.compare_parts("counit-algebra-map", F, [
                (contract(F, "abx,x->ab", M, E), F.outer(E, E)),
                (contract(F, "u,u->", U, E), F.array(1)),
            ]),
            lambda: ReportEntry.compare(
                "antipode-left", F,
                contract(F, "aij,ib,bjc->ac", D, S, M), F.outer(E, U),
            ),
            lambda: ReportEntry.compare(
                "antipode-right", F,
                contract(F, "aij,jb,ibc->ac", D, S, M), F.outer(E, U),
            ),
        ]
        return VerificationReport(h.name, run_checks(checks))

    def verify_hopf_map(self, f: np.ndarray, source: HopfAlgebraData,
                        target: HopfAlgebraData, subject: str = "hopf-map") -> VerificationReport:
        """
        验证 f: source → target（输入在前）是 Hopf 代数同态
        """
        F = source.field
        if f.shape != (source.dim, target.dim):
            raise ShapeMismatch(f"Map has shape {f.shape}, expected {(source.dim, target.dim)}")
        Ms, Mt, Ds, Dt = source.mult, target.mult, source.comult, target.comult
        entries = [
            ReportEntry.compare(
                "algebra-map", F,
                contract(F, "abx,xz->abz", Ms, f),
                contract(F, "ax,by,xyz->abz", f, f, Mt),
            ),
            ReportEntry.compare("unit", F, F.matmul(source.unit, f), target.unit),
            ReportEntry.compare(
                "coalgebra-map", F,
                contract(F, "ax,xpq->apq", f, Dt),
                contract(F, "aij,ip,jq->apq", Ds, f, f),
            ),
            ReportEntry.compare("counit", F, F.matmul(f, target.counit), source.counit),
            ReportEntry.compare(
                "antipode", F, F.matmul(source.antipode, f), F.matmul(f, target.antipode)
            ),
        ]
        return VerificationReport(subject, entries)

    # ------------------------------------------------------------------
    # 构造新代数
    # ------------------------------------------------------------------
    def dual(self, h: HopfAlgebraData) -> HopfAlgebraData:
        """
        对偶 Hopf 代数（对偶基）

        mult*[a,b,c] = comult[c,a,b]，comult*[a,b,c] = mult[b,c,a]
        """
        name = h.name[:-1] if h.name.endswith("*") else h.name + "*"
        return HopfAlgebraData(
            name, h.field, h.dim,
            np.ascontiguousarray(np.transpose(h.comult, (1, 2, 0))),
            h.counit.copy(),
            np.ascontiguousarray(np.transpose(h.mult, (2, 0, 1))),
            h.unit.copy(),
            np.ascontiguousarray(h.antipode.T),
            np.ascontiguousarray(h.antipode_inv.T),
        )

    def variant(self, h: HopfAlgebraData, which: str) -> HopfAlgebraData:
        """
        反向乘法 / 反向余乘法

        Args:
            which: "op"、"cop" 或 "op-cop"
        """
        if which not in VARIANTS:
            raise ValueError(f"Unknown variant {which}")
        mult, comult = h.mult, h.comult
        if which in ("op", "op-cop"):
            mult = np.ascontiguousarray(np.transpose(mult, (1, 0, 2)))
        if which in ("cop", "op-cop"):
            comult = np.ascontiguousarray(np.transpose(comult, (0, 2, 1)))
        if which == "op-cop":
            antipode, antipode_inv = h.antipode, h.antipode_inv
        else:
            antipode, antipode_inv = h.antipode_inv, h.antipode
        return HopfAlgebraData(
            f"{h.name}^{which}", h.field, h.dim, mult, h.unit.copy(), comult,
            h.counit.copy(), antipode.copy(), antipode_inv.copy(),
        )

    def tensor_product(self, h: HopfAlgebraData, k: HopfAlgebraData) -> HopfAlgebraData:
        """张量积 Hopf 代数，基 e_i⊗f_j 的平坦下标 i·dim(k)+j"""
        if h.field != k.field:
            raise FieldMismatch(f"{h.name} is over {h.field.label}, {k.name} over {k.field.label}")
        F = h.field
        d = h.dim * k.dim

        def merge(x, y):
            return F.outer(x, y).transpose(0, 3, 1, 4, 2, 5).reshape(d, d, d)

        return HopfAlgebraData(
            f"{h.name}⊗{k.name}", F, d,
            merge(h.mult, k.mult),
            F.kron(h.unit, k.unit),
            merge(h.comult, k.comult),
            F.kron(h.counit, k.counit),
            F.kron(h.antipode, k.antipode),
            F.kron(h.antipode_inv, k.antipode_inv),
        )

    def iterated_comult(self, h: HopfAlgebraData) -> np.ndarray:
        """(Δ⊗id)Δ 的系数 D2[a,b,c,d]"""
        return contract(h.field, "axd,xbc->abcd", h.comult, h.comult)

    def left_integral(self, h: HopfAlgebraData) -> np.ndarray:
        """
        左积分 Λ：对所有 x 有 xΛ = ε(x)Λ

        Returns:
            积分空间的简化阶梯基向量

        Raises:
            SingularMatrix: 积分空间不是一维
        """
        F, n = h.field, h.dim
        system = F.sub(np.transpose(h.mult, (0, 2, 1)), F.outer(h.counit, F.identity(n)))
        space = F.kernel_basis(system.reshape(n * n, n))
        if len(space) != 1:
            raise SingularMatrix(f"{h.name} has {len(space)} independent left integrals")
        return space[0]

    # ------------------------------------------------------------------
    # 卷积代数
    # ------------------------------------------------------------------
    def convolution(self, f: np.ndarray, g: np.ndarray, coalgebra: CoalgebraData,
                    algebra: AlgebraData) -> np.ndarray:
        """(f∗g)(c) = Σ f(c₁)g(c₂)"""
        return contract(algebra.field, "cij,ix,jy,xyz->cz", coalgebra.comult, f, g, algebra.mult)

    def convolution_unit(self, coalgebra: CoalgebraData, algebra: AlgebraData) -> np.ndarray:
        return algebra.field.outer(coalgebra.counit, algebra.unit)

    def convolution_inverse(self, f: np.ndarray, coalgebra: CoalgebraData,
                            algebra: AlgebraData) -> np.ndarray:
        """
        卷积逆：解卷积代数 Hom(C, A) 中的线性方程组 f∗g = unit∘counit

        Args:
            f: 输入在前的矩阵 (dim C, dim A)

        Raises:
            NotConvolutionInvertible: 方程组无解或解不是双边逆
        """
        F = algebra.field
        nc, na = coalgebra.dim, algebra.dim
        if f.shape != (nc, na):
            raise ShapeMismatch(f"Map has shape {f.shape}, expected {(nc, na)}")
        lmap = contract(F, "cij,ix,xyz->czjy", coalgebra.comult, f, algebra.mult)
        unit = self.convolution_unit(coalgebra, algebra)
        try:
            g = F.solve(lmap.reshape(nc * na, nc * na), unit.reshape(-1)).reshape(nc, na)
        except SingularMatrix as e:
            raise NotConvolutionInvertible("Map has no convolution inverse") from e
        if not (F.equal(self.convolution(f, g, coalgebra, algebra), unit)
                and F.equal(self.convolution(g, f, coalgebra, algebra), unit)):
            raise NotConvolutionInvertible("Solution is not a two-sided convolution inverse")
        return g
