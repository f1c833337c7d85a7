"""
验证套件服务

套件编号是稳定接口：
  axioms        Hopf 公理（Hopf 代数；配对时为 K、H 与量子偶）
  pairing       配对公理、σ̄ 卷积恒等式、诱导映射
  pams          标准 PAMS 或变异夹具的全部条件，及其部分对偶的拟 Hopf 公理
  realization   部分对偶与量子偶逐项比较
  yd-rep        YD 模与量子偶表示的同构、单子性、Hom 空间、交换函子
  phi-psi       φ、ψ 互逆，K* 侧转写，单位对象
  theorem-1-2   V ↦ V*⊗K ↦ 余不变量的等价链、两类对偶与 J 的相容性
  schauenburg   求值配对下余不变量的显式作用
"""
import logging
import os
from itertools import combinations_with_replacement
from typing import Callable, Dict, List, Optional, Tuple, Union

from app.core.config import settings
from app.core.exceptions import BadParams, UnknownSuite
from app.models.hopf import HopfAlgebraData
from app.models.modules import SIDE_K, RepModule, YdModule
from app.models.pairing import HopfPairing
from app.models.partial_dual import Pams
from app.models.report import ReportEntry, VerificationReport
from app.services.document_service import DocumentService
from app.services.duality_service import DualityService
from app.services.functor_service import FunctorService
from app.services.registry_service import RegistryService
from app.utils.check_runner import run_checks

logger = logging.getLogger(__name__)

SUITES = (
    "axioms",
    "pairing",
    "pams",
    "realization",
    "yd-rep",
    "phi-psi",
    "theorem-1-2",
    "schauenburg",
)

# 三重余张量积的维数增长很快，J 的相容性只在小对象上检查
_COHERENCE_MAX_DIM = 4
# 每个配对至少选取的夹具数
_MIN_FIXTURES = 3

Target = Union[HopfAlgebraData, HopfPairing, Pams, YdModule, RepModule]
# (条目前缀, 子报告)；前缀为空时条目原样并入
Parts = List[Tuple[str, VerificationReport]]


class SuiteService:
    """验证套件服务"""

    def __init__(self):
        self.functor_service = FunctorService()
        self.registry = RegistryService(self.functor_service)
        self.document_service = DocumentService(self.registry)
        self.duality_service = DualityService(self.functor_service)
        self.hopf_service = self.registry.hopf_service
        self.pairing_service = self.registry.pairing_service
        self.partial_dual_service = self.registry.partial_dual_service
        self.module_service = self.registry.module_service
        self.double_service = self.functor_service.double_service
        self._suites: Dict[str, Callable[[Target], Parts]] = {
            "axioms": self._axioms,
            "pairing": self._pairing,
            "pams": self._pams,
            "realization": self._realization,
            "yd-rep": self._yd_rep,
            "phi-psi": self._phi_psi,
            "theorem-1-2": self._theorem_chain,
            "schauenburg": self._schauenburg,
        }

    # ------------------------------------------------------------------
    # 入口
    # ------------------------------------------------------------------
    def resolve_target(self, target: str, allow_files: bool = True) -> Target:
        """
        目标为已存在的文件路径时按文档解析（allow_files 为假时只查注册表），否则查注册表

        Raises:
            UnknownExample: 注册表中没有该名称
            ParseError / ValidationError: 文档不合法
        """
        if allow_files and os.path.isfile(target):
            return self.document_service.load(target)
        return self.registry.resolve(target)

    def run_suite(self, suite: str, target: str, allow_files: bool = True) -> VerificationReport:
        """
        运行验证套件

        Args:
            suite: 套件编号
            target: 注册表名称或文档路径
            allow_files: 是否允许按文件路径解析目标

        Returns:
            条目顺序固定的验证报告

        Raises:
            UnknownSuite: 未知套件
            UnknownExample: 未知目标
            BadParams: 目标类型不适用于该套件
        """
        if suite not in self._suites:
            raise UnknownSuite(f"Unknown suite {suite}; expected one of {', '.join(SUITES)}")
        obj = self.resolve_target(target, allow_files)
        report = VerificationReport(f"{suite}:{target}")
        for prefix, part in self._suites[suite](obj):
            report.merge(part, f"{prefix}." if prefix else "")
        logger.info("Suite %s on %s: %s (%d checks)", suite, target,
                    "PASS" if report.overall else "FAIL", len(report.entries))
        return report

    def verify_target(self, target: str) -> VerificationReport:
        """按目标类型验证单个对象（命令行 verify）"""
        return self.verify_object(self.resolve_target(target), f"verify:{target}")

    def verify_object(self, obj: Target, subject: str) -> VerificationReport:
        if isinstance(obj, HopfAlgebraData):
            report = self.hopf_service.verify_hopf(obj)
        elif isinstance(obj, HopfPairing):
            report = self.pairing_service.verify_pairing(obj)
        elif isinstance(obj, Pams):
            report = self.partial_dual_service.verify_pams(obj)
        else:
            report = self.module_service.verify_object(obj)
        return VerificationReport(subject).merge(report)

    # ------------------------------------------------------------------
    # 目标类型
    # ------------------------------------------------------------------
    @staticmethod
    def _require_pairing(suite: str, obj: Target) -> HopfPairing:
        if not isinstance(obj, HopfPairing):
            raise BadParams(f"Suite {suite} needs a pairing target, got {type(obj).__name__}")
        return obj

    def select_fixtures(self, p: HopfPairing,
                        weight: Optional[Callable[[YdModule], int]] = None) -> List[YdModule]:
        """
        按维数从小到大选取夹具

        权重不超过 settings.fixture_max_dim 的全部保留；不足 _MIN_FIXTURES 个或全是一维时，
        继续补入最小的夹具

        Args:
            p: 配对
            weight: 夹具的规模，默认为维数
        """
        weight = weight or (lambda v: v.dim)
        modules = sorted(self.registry.build_test_modules(p), key=lambda v: v.dim)
        kept = [v for v in modules if weight(v) <= settings.fixture_max_dim]
        for v in modules:
            if len(kept) >= _MIN_FIXTURES and any(w.dim > 1 for w in kept):
                break
            if not any(v is w for w in kept):
                kept.append(v)
        return sorted(kept, key=lambda v: v.dim)

    # ------------------------------------------------------------------
    # 套件
    # ------------------------------------------------------------------
    def _axioms(self, obj: Target) -> Parts:
        hs = self.hopf_service
        if isinstance(obj, HopfAlgebraData):
            return [("", hs.verify_hopf(obj))]
        p = self._require_pairing("axioms", obj)
        double = self.functor_service.double_of(p)
        return [
            ("K", hs.verify_hopf(p.k_alg)),
            ("H", hs.verify_hopf(p.h_alg)),
            ("double", hs.verify_hopf(double)),
        ]

    def _pairing(self, obj: Target) -> Parts:
        p = self._require_pairing("pairing", obj)
        ps, hs = self.pairing_service, self.hopf_service
        K, H = p.k_alg, p.h_alg
        return [
            ("pairing", ps.verify_pairing(p)),
            ("sigma-bar", ps.check_sigma_bar(p)),
            ("sigma-r", hs.verify_hopf_map(p.sigma_r_matrix, H, K)),
            ("sigma-l", hs.verify_hopf_map(p.form, hs.dual(K), hs.dual(H))),
        ]

    def _pams(self, obj: Target) -> Parts:
        pds = self.partial_dual_service
        if isinstance(obj, Pams):
            return [("", pds.verify_pams(obj))]
        p = self._require_pairing("pams", obj)
        s = pds.canonical_pams(p)
        return [
            ("pams", pds.verify_pams(s)),
            ("quasi-hopf", pds.verify_quasi_hopf(pds.partial_dual(s))),
        ]

    def _realization(self, obj: Target) -> Parts:
        p = self._require_pairing("realization", obj)
        F = p.field
        qd = self.functor_service.double_of(p)
        cop_route = self.double_service.quantum_double_cop_route(p)
        cop = VerificationReport("cop-route", [
            ReportEntry.compare_parts("same-structure", F, [
                (cop_route.mult, qd.mult), (cop_route.comult, qd.comult),
                (cop_route.antipode, qd.antipode),
            ]),
        ])
        return [
            ("realization", self.partial_dual_service.check_double_realization(p)),
            ("cop-route", cop),
        ]

    def _yd_rep(self, obj: Target) -> Parts:
        p = self._require_pairing("yd-rep", obj)
        fs = self.functor_service
        modules = self.select_fixtures(p)
        checks: List[Callable[[], VerificationReport]] = []
        for v in modules:
            checks.append(lambda v=v: fs.check_yd_rep(v))
            checks.append(lambda v=v: fs.check_hom_spaces(v, v))
        for v, w in combinations_with_replacement(modules, 2):
            if v.dim * w.dim > settings.fixture_max_dim:
                continue
            checks.append(lambda v=v, w=w: fs.check_monoidality(v, w))
            checks.append(lambda v=v, w=w: fs.check_swap(v, w))
        return [(r.subject, r) for r in run_checks(checks)]

    def _phi_psi(self, obj: Target) -> Parts:
        p = self._require_pairing("phi-psi", obj)
        fs, ds = self.functor_service, self.duality_service
        reps = [fs.yd_to_rep(v) for v in self.select_fixtures(p, lambda v: v.dim * p.k_alg.dim)]
        checks: List[Callable[[], VerificationReport]] = []
        for r in reps:
            checks.append(lambda r=r: fs.check_phi_psi(r, p))
            checks.append(lambda r=r: ds.check_bridge(r, p))
        checks.append(lambda: ds.unit_checks(p))
        return [(r.subject, r) for r in run_checks(checks)]

    def _theorem_chain(self, obj: Target) -> Parts:
        p = self._require_pairing("theorem-1-2", obj)
        ds, ms = self.duality_service, self.module_service
        m = p.k_alg.dim
        modules = self.select_fixtures(p, lambda v: v.dim * m)

        checks: List[Callable[[], VerificationReport]] = [
            lambda v=v: ds.check_theorem_chain(v) for v in modules
        ]
        for v, w in combinations_with_replacement(modules, 2):
            if v.dim * w.dim <= settings.fixture_max_dim:
                checks.append(lambda v=v, w=w: ds.check_yd_duality(v, w))

        objects = [ms.unit_two_sided(p, SIDE_K)] + [ds.v_star_tensor_k(v) for v in modules[:2]]
        for a, b in combinations_with_replacement(objects, 2):
            if a.dim * b.dim <= settings.fixture_max_dim:
                checks.append(lambda a=a, b=b: ds.check_two_sided_duality(a, b))
        small = [t for t in objects if t.dim <= _COHERENCE_MAX_DIM]
        for a in small:
            checks.append(lambda a=a: ds.check_coherence(a, small[-1], a))
        return [(r.subject, r) for r in run_checks(checks)]

    def _schauenburg(self, obj: Target) -> Parts:
        p = self._require_pairing("schauenburg", obj)
        ds = self.duality_service
        modules = self.select_fixtures(p, lambda v: v.dim * p.k_alg.dim)
        checks = [lambda v=v: ds.check_schauenburg(v) for v in modules]
        return [(r.subject, r) for r in run_checks(checks)]
