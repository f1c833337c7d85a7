"""
对偶服务单元测试
"""
import numpy as np
import pytest

from app.core.exceptions import AlgebraMismatch, FlavorMismatch
from app.models.modules import SIDE_K, SIDE_K_STAR, YD_LEFT_H, YD_RIGHT_H
from app.services.duality_service import DualityService


class TestDualityService:
    """对偶服务测试"""

    @pytest.fixture(autouse=True)
    def _services(self, registry):
        self.duality_service = DualityService(registry.functor_service)
        self.module_service = registry.module_service

    def _modules(self, registry, name, max_dim=4):
        return registry.build_test_modules(registry.resolve(name), max_dim=max_dim)

    @pytest.mark.parametrize("name", ["eval-c2", "trivial-c2-c3"])
    def test_theorem_chain(self, registry, name):
        """测试 V ↦ V*⊗K ↦ 余不变量 给出 V*，且两条拟逆一致"""
        for v in self._modules(registry, name):
            report = self.duality_service.check_theorem_chain(v)
            assert report.overall, (v.label, report.failed_ids())

    def test_yd_dualize_is_involution(self, registry):
        # Arrange
        v = self.module_service.yd_trivial(registry.resolve("eval-c3"))

        # Act
        dual = self.duality_service.yd_dualize(v)
        twice = self.duality_service.yd_dualize(dual)

        # Assert
        assert dual.flavor == YD_RIGHT_H and dual.label == "k*"
        assert twice.flavor == YD_LEFT_H and twice.label == "k"

    def test_yd_duality(self, registry):
        """测试 (V⊗W)* 与 V*⊗W* 结构相同"""
        modules = {v.label: v for v in self._modules(registry, "eval-c2")}
        report = self.duality_service.check_yd_duality(modules["k"], modules["regular"])
        assert report.overall, report.failed_ids()

    def test_two_sided_dualize_swaps_sides(self, registry):
        """测试双边模的对偶交换侧别且为对合"""
        # Arrange
        unit = self.module_service.unit_two_sided(registry.resolve("eval-c2"), SIDE_K)

        # Act
        dual = self.duality_service.two_sided_dualize(unit)
        twice = self.duality_service.two_sided_dualize(dual)

        # Assert
        assert dual.side == SIDE_K_STAR
        assert twice.side == SIDE_K
        assert np.array_equal(twice.left_action, unit.left_action)
        assert np.array_equal(twice.right_coaction, unit.right_coaction)

    @pytest.mark.parametrize("name", ["eval-c2", "trivial-c2-c3"])
    def test_two_sided_duality_on_units(self, registry, name):
        """测试 J 在单位对象上良定、双射且保持结构"""
        # Arrange
        unit = self.module_service.unit_two_sided(registry.resolve(name), SIDE_K)

        # Act
        report = self.duality_service.check_two_sided_duality(unit, unit)

        # Assert
        assert report.overall, report.failed_ids()
        assert report.entry("j-bijective").passed

    def test_two_sided_duality_on_v_star_tensor_k(self, registry):
        # Arrange
        p = registry.resolve("eval-c2")
        k = self.module_service.yd_trivial(p)
        m = self.duality_service.v_star_tensor_k(k)
        unit = self.module_service.unit_two_sided(p, SIDE_K)

        # Act
        report = self.duality_service.check_two_sided_duality(m, unit)

        # Assert
        assert report.overall, report.failed_ids()

    def test_two_sided_duality_needs_k_side(self, registry):
        unit = self.module_service.unit_two_sided(registry.resolve("eval-c2"), SIDE_K_STAR)
        with pytest.raises(FlavorMismatch):
            self.duality_service.check_two_sided_duality(unit, unit)

    def test_coherence(self, registry):
        """测试 J 的结合相容性"""
        unit = self.module_service.unit_two_sided(registry.resolve("eval-c2"), SIDE_K)
        report = self.duality_service.check_coherence(unit, unit, unit)
        assert report.overall, report.failed_ids()

    @pytest.mark.parametrize("name", ["eval-c2", "eval-sweedler4"])
    def test_schauenburg(self, registry, name):
        """测试求值配对下余不变量上的作用公式"""
        p = registry.resolve(name)
        for v in self._modules(registry, name, max_dim=2):
            report = self.duality_service.check_schauenburg(v)
            assert report.overall, (p.name, v.label, report.failed_ids())

    def test_schauenburg_needs_evaluation_pairing(self, registry):
        v = self.module_service.yd_trivial(registry.resolve("trivial-c2-c3"))
        with pytest.raises(AlgebraMismatch):
            self.duality_service.check_schauenburg(v)

    @pytest.mark.parametrize("name", ["eval-c2", "trivial-c2-c3", "eval-sweedler4"])
    def test_unit_checks(self, registry, name):
        """测试单位对象在各函子下的像都是平凡对象"""
        report = self.duality_service.unit_checks(registry.resolve(name))
        assert report.overall, report.failed_ids()

    def test_bridge(self, registry):
        """测试 V⊗K* 经桥接恰为 psi(V)"""
        p = registry.resolve("eval-c2")
        for r in registry.build_test_reps(p, max_dim=4):
            report = self.duality_service.check_bridge(r, p)
            assert report.overall, (r.label, report.failed_ids())

    def test_q_star_check_needs_k_side(self, registry):
        unit = self.module_service.unit_two_sided(registry.resolve("eval-c2"), SIDE_K_STAR)
        with pytest.raises(FlavorMismatch):
            self.duality_service.q_star_check(unit)
