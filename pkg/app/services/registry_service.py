"""
示例注册表服务

内置的小型 Hopf 代数、配对、变异 PAMS 与测试模。名称是命令行的稳定接口：
  Hopf 代数   c1 … c6、s3、dual-c1 … dual-c6、dual-s3、sweedler4、taft-n-p-q
  配对        eval-<Hopf 代数>、trivial-c2-c3、sign-s3-c2、quotient-c4-c2
  变异 PAMS   mutant-zeta-bar-sweedler4、mutant-gamma-antipode-c3、mutant-iota-trivial-c3

kS₃ 的基顺序固定为 e、(123)、(132)、(12)、(13)、(23)；
Taft 代数的基为 g^i x^j，平坦下标 i·n + j（Sweedler H₄ 即 n = 2、q = −1：1, x, g, gx）
"""
import dataclasses
import logging
import re
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from app.core.config import settings
from app.core.exceptions import BadParams, UnknownExample
from app.models.example_key import FAMILIES, ExampleKey
from app.models.hopf import HopfAlgebraData
from app.models.modules import YdModule
from app.models.pairing import HopfPairing
from app.models.partial_dual import Pams
from app.services.functor_service import FunctorService
from app.services.hopf_service import HopfService
from app.services.module_category_service import ModuleCategoryService
from app.services.pairing_service import PairingService
from app.services.partial_dual_service import PartialDualService
from app.utils.exact_math import FieldSpec, _is_prime
from app.utils.tensor_ops import contract

logger = logging.getLogger(__name__)

S3_ELEMENTS = (
    ("e", (0, 1, 2)),
    ("(123)", (1, 2, 0)),
    ("(132)", (2, 0, 1)),
    ("(12)", (1, 0, 2)),
    ("(13)", (2, 1, 0)),
    ("(23)", (0, 2, 1)),
)

HOPF_NAMES = (
    [f"c{n}" for n in range(1, 7)]
    + ["s3"]
    + [f"dual-c{n}" for n in range(1, 7)]
    + ["dual-s3", "sweedler4", "taft-3-7-2"]
)
EVALUATION_TARGETS = ("c2", "c3", "c4", "s3", "sweedler4", "taft-3-7-2")
PAIRING_NAMES = [f"eval-{name}" for name in EVALUATION_TARGETS] + [
    "trivial-c2-c3",
    "sign-s3-c2",
    "quotient-c4-c2",
]
# 变异 PAMS：(配对, 变异, 预期失败的检查编号)
MUTANTS = {
    "mutant-zeta-bar-sweedler4": ("eval-sweedler4", "zeta-bar-swap", "6.convolution-identity"),
    "mutant-gamma-antipode-c3": ("eval-c3", "gamma-antipode", "consequence.pi-gamma"),
    "mutant-iota-trivial-c3": ("eval-c3", "iota-trivial", "2.coinvariants-image"),
}

_TAFT_NAME = re.compile(r"^taft-(\d+)-(\d+)-(\d+)$")
_CYCLIC_NAME = re.compile(r"^(dual-)?c(\d+)$")

Resolved = Union[HopfAlgebraData, HopfPairing, Pams]


class RegistryService:
    """示例注册表服务"""

    def __init__(self, functor_service: Optional[FunctorService] = None):
        self.hopf_service = HopfService()
        self.pairing_service = PairingService()
        self.partial_dual_service = PartialDualService()
        self.module_service = ModuleCategoryService()
        self.functor_service = functor_service or FunctorService()
        self._hopf_cache: Dict[ExampleKey, HopfAlgebraData] = {}
        self._pairing_cache: Dict[str, HopfPairing] = {}

    # ------------------------------------------------------------------
    # 名称
    # ------------------------------------------------------------------
    def list(self) -> Dict[str, List[str]]:
        """按类别列出注册表名称"""
        return {
            "hopf": list(HOPF_NAMES),
            "pairing": list(PAIRING_NAMES),
            "pams-fixture": list(MUTANTS),
        }

    def parse_key(self, name: str) -> ExampleKey:
        """
        Hopf 代数名称 -> ExampleKey

        Raises:
            UnknownExample: 名称无法识别
        """
        match = _CYCLIC_NAME.match(name)
        if match:
            family = "dual-group" if match.group(1) else "cyclic-group"
            return ExampleKey(family, (int(match.group(2)),))
        if name == "s3":
            return ExampleKey("symmetric-group-3")
        if name == "dual-s3":
            return ExampleKey("dual-group")
        if name == "sweedler4":
            return ExampleKey("sweedler4")
        match = _TAFT_NAME.match(name)
        if match:
            return ExampleKey("taft", tuple(int(x) for x in match.groups()))
        raise UnknownExample(f"Unknown example {name}")

    def resolve(self, name: str) -> Resolved:
        """
        按名称取出 Hopf 代数、配对或变异 PAMS

        Raises:
            UnknownExample: 名称不在注册表中
        """
        if name in MUTANTS:
            return self.build_mutant(name)
        if name in PAIRING_NAMES or name.startswith("eval-"):
            return self.build_pairing(name)
        return self.build_hopf(self.parse_key(name))

    # ------------------------------------------------------------------
    # Hopf 代数
    # ------------------------------------------------------------------
    def build_hopf(self, key: ExampleKey) -> HopfAlgebraData:
        """
        构造示例 Hopf 代数（同一个键总是得到逐位相同的结构常数）

        Raises:
            BadParams: 参数非法（阶数、非素数 p、非本原的 q）
            UnknownExample: 未知的族
        """
        if key.family not in FAMILIES:
            raise UnknownExample(f"Unknown family {key.family}")
        cached = self._hopf_cache.get(key)
        if cached is not None:
            return cached

        Q = FieldSpec.rationals()
        if key.family == "cyclic-group":
            n = self._order(key)
            h = self._group_algebra(f"c{n}", Q, list(range(n)), lambda a, b: (a + b) % n,
                                    lambda a: (-a) % n)
        elif key.family == "symmetric-group-3":
            h = self._symmetric_group_3(Q)
        elif key.family == "dual-group":
            base = self._symmetric_group_3(Q) if not key.params else self.build_hopf(
                ExampleKey("cyclic-group", key.params))
            h = dataclasses.replace(self.hopf_service.dual(base), name=f"dual-{base.name}")
        elif key.family == "sweedler4":
            if key.params:
                raise BadParams("sweedler4 takes no parameters")
            h = self._taft("sweedler4", Q, 2, -1)
        else:
            n, p, q = self._taft_params(key)
            h = self._taft(f"taft-{n}-{p}-{q}", FieldSpec.prime_field(p), n, q)

        self._hopf_cache[key] = h
        logger.debug("Registry built %s", h.name)
        return h

    def _order(self, key: ExampleKey) -> int:
        if len(key.params) != 1 or key.params[0] < 1:
            raise BadParams(f"{key.family} needs one positive order, got {key.params}")
        return key.params[0]

    def _taft_params(self, key: ExampleKey) -> Tuple[int, int, int]:
        if len(key.params) != 3:
            raise BadParams(f"taft needs (n, p, q), got {key.params}")
        n, p, q = key.params
        if n < 2:
            raise BadParams(f"Taft order {n} must be at least 2")
        if not _is_prime(p):
            raise BadParams(f"{p} is not prime")
        q %= p
        if pow(q, n, p) != 1 or any(pow(q, k, p) == 1 for k in range(1, n)):
            raise BadParams(f"{q} is not a primitive {n}-th root of unity in F{p}")
        return n, p, q

    def _group_algebra(self, name: str, F: FieldSpec, elements: Sequence, compose: Callable,
                       inverse: Callable) -> HopfAlgebraData:
        """群代数：基为群元，Δg = g⊗g，S(g) = g⁻¹；elements[0] 为单位元"""
        n = len(elements)
        index = {g: i for i, g in enumerate(elements)}
        mult = F.zeros((n, n, n))
        comult = F.zeros((n, n, n))
        antipode = F.zeros((n, n))
        for a, g in enumerate(elements):
            comult[a, a, a] = 1
            antipode[a, index[inverse(g)]] = 1
            for b, h in enumerate(elements):
                mult[a, b, index[compose(g, h)]] = 1
        unit = F.basis_vector(n, 0)
        counit = F.array([1] * n)
        return self.hopf_service.build(name, F, mult, unit, comult, counit, antipode)

    def _symmetric_group_3(self, F: FieldSpec) -> HopfAlgebraData:
        perms = [perm for _, perm in S3_ELEMENTS]

        def compose(a, b):
            return tuple(a[b[i]] for i in range(3))

        def inverse(a):
            out = [0, 0, 0]
            for i, image in enumerate(a):
                out[image] = i
            return tuple(out)

        return self._group_algebra("s3", F, perms, compose, inverse)

    def _taft(self, name: str, F: FieldSpec, n: int, q: int) -> HopfAlgebraData:
        """
        Taft 代数：gⁿ = 1，xⁿ = 0，xg = q·gx，Δg = g⊗g，Δx = x⊗1 + g⊗x

        余乘法与对极由生成元上的值按乘积展开
        """
        d = n * n
        mult = F.zeros((d, d, d))
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n - j):
                        # (g^i x^j)(g^k x^l) = q^{jk} g^{i+k} x^{j+l}
                        mult[i * n + j, k * n + l, ((i + k) % n) * n + j + l] = F.scalar(q ** (j * k))
        unit = F.basis_vector(d, 0)
        g = F.basis_vector(d, n)
        x = F.basis_vector(d, 1)

        def times(u, v):
            return contract(F, "a,b,abc->c", u, v, mult)

        def times2(u, v):
            return contract(F, "ab,cd,ace,bdf->ef", u, v, mult, mult)

        delta_g = F.outer(g, g)
        delta_x = F.add(F.outer(x, unit), F.outer(g, x))
        g_inv = unit
        for _ in range(n - 1):
            g_inv = times(g_inv, g)
        s_g = g_inv
        s_x = F.neg(times(g_inv, x))

        comult = F.zeros((d, d, d))
        antipode = F.zeros((d, d))
        counit = F.zeros(d)
        for i in range(n):
            for j in range(n):
                delta = F.outer(unit, unit)
                image = unit
                for _ in range(i):
                    delta = times2(delta, delta_g)
                for _ in range(j):
                    delta = times2(delta, delta_x)
                    image = times(image, s_x)
                for _ in range(i):
                    image = times(image, s_g)
                comult[i * n + j] = delta
                antipode[i * n + j] = image
                counit[i * n + j] = 1 if j == 0 else 0
        return self.hopf_service.build(name, F, mult, unit, comult, counit, antipode)

    # ------------------------------------------------------------------
    # 配对
    # ------------------------------------------------------------------
    def build_pairing(self, name: str) -> HopfPairing:
        """
        按名称构造并验证配对

        Raises:
            UnknownExample: 名称不在注册表中
        """
        cached = self._pairing_cache.get(name)
        if cached is not None:
            return cached
        ps = self.pairing_service
        if name.startswith("eval-"):
            h = self.build_hopf(self.parse_key(name[len("eval-"):]))
            pairing = ps.standard_pairing("evaluation", h, h, name=name)
        elif name == "trivial-c2-c3":
            pairing = ps.standard_pairing("trivial", self._named("c2"), self._named("c3"), name=name)
        elif name == "sign-s3-c2":
            s3 = self._named("s3")
            sign = [0 if perm in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else 1 for _, perm in S3_ELEMENTS]
            f = s3.field.zeros((6, 2))
            f[range(6), sign] = 1
            pairing = ps.standard_pairing("from_map", self._named("c2"), s3, f=f, name=name)
        elif name == "quotient-c4-c2":
            c4 = self._named("c4")
            f = c4.field.zeros((4, 2))
            f[range(4), [i % 2 for i in range(4)]] = 1
            pairing = ps.standard_pairing("from_map", self._named("c2"), c4, f=f, name=name)
        else:
            raise UnknownExample(f"Unknown pairing {name}")
        self._pairing_cache[name] = pairing
        return pairing

    def _named(self, name: str) -> HopfAlgebraData:
        return self.build_hopf(self.parse_key(name))

    def build_mutant(self, name: str) -> Pams:
        """变异 PAMS 夹具"""
        if name not in MUTANTS:
            raise UnknownExample(f"Unknown PAMS fixture {name}")
        pairing_name, mutation, _ = MUTANTS[name]
        s = self.partial_dual_service.mutate(self.build_pairing(pairing_name), mutation)
        return dataclasses.replace(s, name=name)

    def expected_failure(self, name: str) -> str:
        """变异 PAMS 预期失败的检查编号"""
        if name not in MUTANTS:
            raise UnknownExample(f"Unknown PAMS fixture {name}")
        return MUTANTS[name][2]

    # ------------------------------------------------------------------
    # 测试模
    # ------------------------------------------------------------------
    def build_test_modules(self, p: HopfPairing, max_dim: Optional[int] = None) -> List[YdModule]:
        """
        测试用 YD 模：平凡模、量子偶正则表示拉回的模、二者的张量积、
        由 e_0 生成的循环子表示、由 1⋈Λ（Λ 为 H 的左积分）生成的 dim K 维子表示及其与平凡模的张量积，
        以及在小作用上用线性求解器采样的模

        Args:
            max_dim: 只保留维数不超过它的模
        """
        F = p.field
        ms, fs = self.module_service, self.functor_service
        qd = fs.double_of(p)
        regular_rep = ms.regular_rep(qd)

        trivial = ms.yd_trivial(p)
        regular = dataclasses.replace(fs.rep_to_yd(regular_rep, p), label="regular")
        mixed = ms.yd_tensor(trivial, regular)
        cyclic_rep = ms.cyclic_submodule(regular_rep, F.basis_vector(qd.dim, 0), label="cyclic")
        cyclic = fs.rep_to_yd(cyclic_rep, p)
        integral = F.kron(p.k_alg.counit, self.hopf_service.left_integral(p.h_alg))
        induced = fs.rep_to_yd(ms.cyclic_submodule(regular_rep, integral, label="induced"), p)
        modules = [trivial, regular, mixed, cyclic, induced, ms.yd_tensor(trivial, induced)]

        for base in (trivial, cyclic):
            if base.dim > 4:
                continue
            samples = ms.sample_yd_modules(p, base.action, count=2, seed=settings.random_seed,
                                           base_coaction=base.coaction)
            modules.extend(
                dataclasses.replace(v, label=f"sample-{base.label}-{i}") for i, v in enumerate(samples)
            )
        if max_dim is not None:
            modules = [v for v in modules if v.dim <= max_dim]
        logger.info("Built %d test modules over %s", len(modules), p.name)
        return modules

    def build_test_reps(self, p: HopfPairing, max_dim: Optional[int] = None) -> List:
        """测试模在 yd_to_rep 下的像"""
        return [self.functor_service.yd_to_rep(v) for v in self.build_test_modules(p, max_dim)]

