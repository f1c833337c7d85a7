"""
模范畴服务单元测试
"""
import dataclasses

import pytest

from app.core.exceptions import CoactionNotClosed, FlavorMismatch, ValidationError
from app.models.modules import SIDE_K, SIDE_K_STAR, YD_LEFT_H, YD_RIGHT_H
from app.services.module_category_service import ModuleCategoryService
from app.utils.exact_math import Subspace


class TestModuleCategoryService:
    """模范畴服务测试"""

    def setup_method(self):
        self.module_service = ModuleCategoryService()

    @pytest.mark.parametrize("flavor", [YD_LEFT_H, YD_RIGHT_H])
    def test_trivial_yd_module(self, registry, flavor):
        """测试两种类型的平凡 YD 模都合法"""
        # Act
        v = self.module_service.yd_trivial(registry.resolve("trivial-c2-c3"), flavor)
        report = self.module_service.verify_object(v)

        # Assert
        assert v.dim == 1
        assert report.overall, report.failed_ids()

    def test_unknown_flavor(self, registry):
        with pytest.raises(FlavorMismatch):
            self.module_service.yd_trivial(registry.resolve("eval-c2"), "bimodule")

    def test_certify_rejects_broken_module(self, registry):
        """测试作用被放大两倍的模无法通过认证"""
        # Arrange
        v = self.module_service.yd_trivial(registry.resolve("eval-c2"))
        F = v.pairing.field
        broken = dataclasses.replace(v, action=F.scale(v.action, 2))

        # Act & Assert
        assert self.module_service.certify(v).value is v
        with pytest.raises(ValidationError):
            self.module_service.certify(broken)

    def test_yd_tensor(self, registry):
        """测试 YD 模张量积维数相乘且仍合法"""
        # Arrange
        p = registry.resolve("eval-c2")
        modules = {v.label: v for v in registry.build_test_modules(p)}

        # Act
        product = self.module_service.yd_tensor(modules["k"], modules["regular"])

        # Assert
        assert product.dim == 4
        assert product.label == "k⊗regular"
        assert self.module_service.verify_object(product).overall

    def test_yd_tensor_needs_same_flavor(self, registry):
        p = registry.resolve("eval-c2")
        with pytest.raises(FlavorMismatch):
            self.module_service.yd_tensor(
                self.module_service.yd_trivial(p, YD_LEFT_H), self.module_service.yd_trivial(p, YD_RIGHT_H)
            )

    def test_regular_rep_and_intertwiners(self, registry):
        """测试正则表示的自同态空间维数等于代数维数"""
        # Arrange
        c3 = registry.resolve("c3")
        regular = self.module_service.regular_rep(c3)
        trivial = self.module_service.rep_trivial(c3)

        # Act
        endo = self.module_service.intertwiners(regular, regular)
        invariants = self.module_service.intertwiners(trivial, regular)

        # Assert
        assert self.module_service.verify_object(regular).overall
        assert endo.shape == (3, 3, 3)
        assert invariants.shape == (1, 1, 3)

    def test_cyclic_submodule(self, registry):
        """测试循环子模：e_0 生成整个正则表示，Σg 生成一维子模"""
        # Arrange
        c3 = registry.resolve("c3")
        F = c3.field
        regular = self.module_service.regular_rep(c3)

        # Act
        whole = self.module_service.cyclic_submodule(regular, F.basis_vector(3, 0))
        line = self.module_service.cyclic_submodule(regular, F.array([1, 1, 1]), label="norm")

        # Assert
        assert whole.dim == 3
        assert line.dim == 1 and line.label == "norm"
        assert self.module_service.verify_object(line).overall

    def test_restrict_to_unstable_subspace(self, registry):
        """测试不封闭的子空间抛出 CoactionNotClosed"""
        # Arrange
        c3 = registry.resolve("c3")
        F = c3.field
        sub = Subspace.from_rows(F, F.array([[0, 1, 0]]), 3)

        # Act & Assert
        with pytest.raises(CoactionNotClosed):
            self.module_service.restrict_ops(sub, c3.mult)

    def test_cotensor_and_relative_tensor_of_regular(self, registry):
        """测试 K□_K K 与 K⊗_K K 都同构于 K"""
        # Arrange
        k = registry.resolve("sweedler4")
        F = k.field

        # Act
        sub = self.module_service.cotensor(F, k.comult, k.comult)
        quot = self.module_service.tensor_over_algebra(F, k.mult, k.mult)

        # Assert
        assert sub.dim == 4
        assert quot.dim == 4

    def test_coinvariants_and_augmentation_quotient(self, registry):
        """测试 K 在自身上的余不变量与 K/K·K⁺ 都是一维的"""
        # Arrange
        k = registry.resolve("sweedler4")
        F = k.field

        # Act
        coinvariants = self.module_service.coinvariants(F, k.comult, k.unit)
        quotient = self.module_service.augmentation_quotient(F, k.mult, k.counit)

        # Assert
        assert coinvariants.dim == 1
        assert coinvariants.contains(k.unit.reshape(1, -1))
        assert quotient.dim == 1

    @pytest.mark.parametrize("name", ["eval-c2", "trivial-c2-c3"])
    def test_unit_two_sided_objects(self, registry, name):
        """测试两侧的单位对象合法"""
        p = registry.resolve(name)
        for side in (SIDE_K, SIDE_K_STAR):
            unit = self.module_service.unit_two_sided(p, side)
            assert unit.dim == p.k_alg.dim
            assert self.module_service.verify_object(unit).overall, side

    def test_tensor_with_unit(self, registry):
        """测试与单位对象的余张量积维数不变"""
        # Arrange
        p = registry.resolve("eval-c2")
        unit = self.module_service.unit_two_sided(p, SIDE_K)

        # Act
        product = self.module_service.tensor_two_sided(unit, unit)

        # Assert
        assert product.dim == unit.dim
        assert self.module_service.verify_object(product).overall

    def test_tensor_two_sided_needs_same_side(self, registry):
        p = registry.resolve("eval-c2")
        with pytest.raises(FlavorMismatch):
            self.module_service.tensor_two_sided(
                self.module_service.unit_two_sided(p, SIDE_K),
                self.module_service.unit_two_sided(p, SIDE_K_STAR),
            )

    def test_sampled_modules_are_valid(self, registry):
        """测试随机采样的 YD 模全部通过验证"""
        # Arrange
        p = registry.resolve("eval-c2")
        trivial = self.module_service.yd_trivial(p)

        # Act
        samples = self.module_service.sample_yd_modules(p, trivial.action, count=2, seed=7,
                                                        base_coaction=trivial.coaction)

        # Assert
        assert len(samples) <= 2
        for v in samples:
            assert self.module_service.verify_object(v).overall

    def test_yd_morphisms_of_trivial_module(self, registry):
        p = registry.resolve("eval-c3")
        k = self.module_service.yd_trivial(p)
        assert self.module_service.yd_morphisms(k, k).shape == (1, 1, 1)
