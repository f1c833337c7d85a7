"""
Hopf 代数服务单元测试
"""
import dataclasses

import numpy as np
import pytest

from app.core.exceptions import NotConvolutionInvertible, ShapeMismatch, ValidationError
from app.services.double_service import DoubleService
from app.services.hopf_service import HopfService
from app.utils.exact_math import FieldSpec
from app.utils.tensor_ops import contract

HOPF_AXIOMS = [
    "associativity",
    "unit",
    "coassociativity",
    "counit",
    "comult-algebra-map",
    "counit-algebra-map",
    "antipode-left",
    "antipode-right",
]


class TestHopfService:
    """Hopf 代数服务测试"""

    def setup_method(self):
        self.hopf_service = HopfService()

    @pytest.mark.parametrize("name", [
        "c1", "c2", "c3", "c4", "c5", "c6", "s3",
        "dual-c3", "dual-c6", "dual-s3", "sweedler4", "taft-3-7-2",
    ])
    def test_registry_algebras_satisfy_axioms(self, registry, name):
        """测试注册表中的代数满足全部 Hopf 公理"""
        # Arrange
        h = registry.resolve(name)

        # Act
        report = self.hopf_service.verify_hopf(h)

        # Assert
        assert report.overall, report.failed_ids()
        assert [entry.check_id for entry in report.entries] == HOPF_AXIOMS

    def test_corrupted_antipode_fails_with_witness(self, registry):
        """测试错误的对极给出带见证的失败条目"""
        # Arrange
        h = registry.resolve("sweedler4")
        broken = dataclasses.replace(h, antipode=h.field.identity(4), antipode_inv=h.field.identity(4))

        # Act
        report = self.hopf_service.verify_hopf(broken)

        # Assert
        assert not report.overall
        assert report.first_failure().check_id == "antipode-left"
        assert report.first_failure().witness is not None

    def test_build_rejects_invalid_structure(self, registry):
        """测试构造时验证失败抛出 ValidationError"""
        # Arrange
        h = registry.resolve("sweedler4")
        F = h.field

        # Act & Assert
        with pytest.raises(ValidationError) as info:
            self.hopf_service.build("broken", F, h.mult, h.unit, h.comult, h.counit,
                                    F.identity(4), verify=True)
        assert "antipode-left" in info.value.report.failed_ids()

    def test_build_rejects_wrong_shapes(self, rationals):
        """测试结构常数形状不符"""
        with pytest.raises(ShapeMismatch):
            self.hopf_service.build(
                "bad", rationals, rationals.zeros((2, 2, 2)), rationals.array([1, 0]),
                rationals.zeros((2, 2)), rationals.array([1, 1]), rationals.identity(2),
            )

    def test_ground_field(self, f7):
        """测试一维 Hopf 代数 k"""
        k = self.hopf_service.ground_field_hopf(f7)
        assert k.dim == 1
        assert self.hopf_service.verify_hopf(k).overall

    def test_double_dual_is_identity(self, registry):
        """测试 H** = H"""
        # Arrange
        h = registry.resolve("sweedler4")

        # Act
        dual = self.hopf_service.dual(h)
        twice = self.hopf_service.dual(dual)

        # Assert
        assert self.hopf_service.verify_hopf(dual).overall
        assert twice.same_structure(h)
        assert twice.name == h.name

    @pytest.mark.parametrize("which", ["op", "cop", "op-cop"])
    def test_variants_satisfy_axioms(self, registry, which):
        """测试反向乘法 / 反向余乘法仍是 Hopf 代数"""
        for name in ("s3", "sweedler4"):
            h = self.hopf_service.variant(registry.resolve(name), which)
            assert self.hopf_service.verify_hopf(h).overall, (name, which)

    def test_unknown_variant(self, registry):
        with pytest.raises(ValueError):
            self.hopf_service.variant(registry.resolve("c2"), "co-op")

    def test_tensor_product_of_op_s3_and_c2(self, registry):
        """测试 kS₃^op ⊗ kC₂ 是 12 维 Hopf 代数"""
        # Arrange
        s3_op = self.hopf_service.variant(registry.resolve("s3"), "op")

        # Act
        product = self.hopf_service.tensor_product(s3_op, registry.resolve("c2"))

        # Assert
        assert product.dim == 12
        assert self.hopf_service.verify_hopf(product).overall

    def test_convolution_inverse_of_identity_is_antipode(self, registry):
        """测试 id 的卷积逆就是对极"""
        # Arrange
        h = registry.resolve("sweedler4")
        F = h.field

        # Act
        inverse = self.hopf_service.convolution_inverse(F.identity(4), h.coalgebra, h.algebra)

        # Assert
        assert F.equal(inverse, h.antipode)

    def test_zero_map_is_not_convolution_invertible(self, registry):
        h = registry.resolve("c3")
        with pytest.raises(NotConvolutionInvertible):
            self.hopf_service.convolution_inverse(h.field.zeros((3, 3)), h.coalgebra, h.algebra)

    def test_identity_is_hopf_map(self, registry):
        h = registry.resolve("taft-3-7-2")
        assert self.hopf_service.verify_hopf_map(h.field.identity(9), h, h).overall

    def test_non_multiplicative_map_fails(self, registry):
        """测试非乘法映射不是 Hopf 同态"""
        # Arrange
        h = registry.resolve("c2")
        F = h.field
        projection = F.array([[1, 0], [0, 0]])

        # Act
        report = self.hopf_service.verify_hopf_map(projection, h, h)

        # Assert
        assert "algebra-map" in report.failed_ids()

    @pytest.mark.parametrize("name,expected", [
        ("c2", [1, 1]),
        ("sweedler4", [0, 1, 0, 1]),
    ])
    def test_left_integral(self, registry, name, expected):
        """测试左积分：群代数为元素之和，Sweedler 代数为 x + gx"""
        # Arrange
        h = registry.resolve(name)
        F = h.field

        # Act
        integral = self.hopf_service.left_integral(h)

        # Assert
        assert F.equal(integral, F.array(expected))
        assert F.equal(contract(F, "j,ijc->ic", integral, h.mult), F.outer(h.counit, integral))

    def test_left_integral_over_prime_field(self, registry):
        h = registry.resolve("taft-3-7-2")
        F = h.field
        integral = self.hopf_service.left_integral(h)
        assert not F.is_zero(integral)
        assert F.equal(contract(F, "j,ijc->ic", integral, h.mult), F.outer(h.counit, integral))


class TestDoubleService:
    """量子偶服务测试"""

    def setup_method(self):
        self.double_service = DoubleService()

    def test_drinfeld_double_of_c2(self, registry):
        """测试 D(kC₂) 为 4 维 Hopf 代数"""
        d = self.double_service.drinfeld_double(registry.resolve("c2"), verify=True)
        assert d.dim == 4

    def test_quantum_double_of_sweedler(self, registry):
        """测试求值配对上 Sweedler 代数的量子偶为 16 维且满足公理"""
        # Arrange
        p = registry.resolve("eval-sweedler4")

        # Act
        d = self.double_service.quantum_double(p, verify=False)

        # Assert
        assert d.dim == 16
        assert d.name == "D(eval-sweedler4)"
        assert HopfService().verify_hopf(d).overall

    @pytest.mark.parametrize("name", ["eval-sweedler4", "trivial-c2-c3", "sign-s3-c2"])
    def test_cop_route_agrees(self, registry, name):
        """测试显式 K*cop 构造与翻转腿标号的构造逐项相同"""
        p = registry.resolve(name)
        assert self.double_service.quantum_double_cop_route(p).same_structure(
            self.double_service.quantum_double(p, verify=False)
        )

    def test_trivial_pairing_double_is_tensor_product(self, registry):
        """测试平凡配对的量子偶就是 K*cop ⊗ H"""
        # Arrange
        p = registry.resolve("trivial-c2-c3")
        hs = HopfService()
        expected = hs.tensor_product(hs.variant(hs.dual(p.k_alg), "cop"), p.h_alg)

        # Act
        d = self.double_service.quantum_double(p, verify=False)

        # Assert
        assert np.array_equal(d.mult, expected.mult)
        assert np.array_equal(d.comult, expected.comult)

    @pytest.mark.parametrize("name", ["c2", "sweedler4"])
    def test_drinfeld_double_is_evaluation_double(self, registry, name):
        """测试 Drinfeld 偶与求值配对上的量子偶逐项相同"""
        # Arrange
        h = registry.resolve(name)

        # Act
        drinfeld = self.double_service.drinfeld_double(h, verify=False)
        evaluation = self.double_service.quantum_double(registry.resolve(f"eval-{name}"), verify=False)

        # Assert
        assert drinfeld.same_structure(evaluation)

    def test_double_of_c2_is_commutative_and_cocommutative(self, registry):
        d = self.double_service.drinfeld_double(registry.resolve("c2"))
        assert np.array_equal(d.mult, d.mult.transpose(1, 0, 2))
        assert np.array_equal(d.comult, d.comult.transpose(0, 2, 1))
