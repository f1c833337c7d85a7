"""
部分对偶服务单元测试
"""
import pytest

from app.services.partial_dual_service import PartialDualService
from app.services.registry_service import MUTANTS


class TestPartialDualService:
    """部分对偶服务测试"""

    def setup_method(self):
        self.partial_dual_service = PartialDualService()

    @pytest.mark.parametrize("name", ["eval-c2", "eval-c3", "trivial-c2-c3", "eval-sweedler4"])
    def test_canonical_pams_satisfies_all_conditions(self, registry, name):
        """测试标准 PAMS 满足全部条件"""
        # Arrange
        p = registry.resolve(name)

        # Act
        report = self.partial_dual_service.verify_pams(self.partial_dual_service.canonical_pams(p))

        # Assert
        assert report.overall, report.failed_ids()

    def test_canonical_pams_shapes(self, registry):
        """测试标准 PAMS 的各映射形状"""
        # Arrange
        p = registry.resolve("trivial-c2-c3")

        # Act
        s = self.partial_dual_service.canonical_pams(p)

        # Assert
        assert s.ambient.dim == 6
        assert s.iota.shape == (3, 6)
        assert s.zeta.shape == (6, 3)
        assert s.pi.shape == (6, 2)
        assert s.gamma.shape == (2, 6)

    @pytest.mark.parametrize("mutant", sorted(MUTANTS))
    def test_mutants_fail_their_condition(self, registry, mutant):
        """测试变异 PAMS 在预期的条件上失败"""
        # Arrange
        s = registry.build_mutant(mutant)

        # Act
        report = self.partial_dual_service.verify_pams(s)

        # Assert
        assert not report.overall
        assert registry.expected_failure(mutant) in report.failed_ids()
        assert s.name == mutant

    def test_unknown_mutation(self, registry):
        with pytest.raises(ValueError):
            self.partial_dual_service.mutate(registry.resolve("eval-c2"), "swap-everything")

    @pytest.mark.parametrize("name", ["eval-c2", "trivial-c2-c3", "eval-c3"])
    def test_partial_dual_is_quasi_hopf(self, registry, name):
        """测试部分对偶满足拟 Hopf 公理"""
        # Arrange
        pds = self.partial_dual_service
        p = registry.resolve(name)

        # Act
        q = pds.partial_dual(pds.canonical_pams(p))
        report = pds.verify_quasi_hopf(q)

        # Assert
        assert q.dim == p.k_alg.dim * p.h_alg.dim
        assert report.overall, report.failed_ids()

    @pytest.mark.parametrize("name", ["eval-c2", "trivial-c2-c3", "sign-s3-c2", "eval-sweedler4"])
    def test_partial_dual_realizes_quantum_double(self, registry, name):
        """测试标准 PAMS 的部分对偶就是量子偶（结合子平凡）"""
        # Act
        report = self.partial_dual_service.check_double_realization(registry.resolve(name))

        # Assert
        assert report.overall, report.failed_ids()
        assert report.entry("associator-trivial").passed

    def test_mutants_helper_lists_all_mutations(self, registry):
        mutants = self.partial_dual_service.mutants(registry.resolve("eval-c3"))
        assert set(mutants) == {"zeta-bar-swap", "gamma-antipode", "iota-trivial"}
