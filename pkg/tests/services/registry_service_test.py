"""
示例注册表服务单元测试
"""
import pytest

from app.core.exceptions import BadParams, UnknownExample
from app.models.example_key import ExampleKey
from app.models.hopf import HopfAlgebraData
from app.models.pairing import HopfPairing
from app.models.partial_dual import Pams
from app.services.registry_service import RegistryService


class TestRegistryService:
    """注册表测试"""

    def test_list_groups_names_by_kind(self, registry):
        """测试按类别列出名称"""
        # Act
        names = registry.list()

        # Assert
        assert set(names) == {"hopf", "pairing", "pams-fixture"}
        assert "sweedler4" in names["hopf"]
        assert "eval-c2" in names["pairing"]
        assert "mutant-zeta-bar-sweedler4" in names["pams-fixture"]

    @pytest.mark.parametrize("name,key", [
        ("c4", ExampleKey("cyclic-group", (4,))),
        ("dual-c3", ExampleKey("dual-group", (3,))),
        ("s3", ExampleKey("symmetric-group-3")),
        ("dual-s3", ExampleKey("dual-group")),
        ("sweedler4", ExampleKey("sweedler4")),
        ("taft-3-7-2", ExampleKey("taft", (3, 7, 2))),
    ])
    def test_parse_key(self, registry, name, key):
        assert registry.parse_key(name) == key

    def test_resolve_kinds(self, registry):
        """测试按名称解析出不同类型"""
        assert isinstance(registry.resolve("c2"), HopfAlgebraData)
        assert isinstance(registry.resolve("eval-c2"), HopfPairing)
        assert isinstance(registry.resolve("mutant-iota-trivial-c3"), Pams)

    def test_resolve_is_cached(self, registry):
        assert registry.resolve("sweedler4") is registry.resolve("sweedler4")

    @pytest.mark.parametrize("name", ["foo", "eval-foo", "mutant-unknown"])
    def test_unknown_names(self, registry, name):
        with pytest.raises(UnknownExample):
            registry.resolve(name)

    @pytest.mark.parametrize("name", ["taft-3-7-3", "taft-3-8-2", "taft-1-7-1", "c0"])
    def test_bad_parameters(self, registry, name):
        """测试非本原单位根、非素数特征与非法阶数"""
        with pytest.raises(BadParams):
            registry.resolve(name)

    def test_group_algebra_basis_order(self, registry):
        """测试 kS₃ 的基顺序：(12)·(123) = (23)"""
        s3 = registry.resolve("s3")
        assert s3.mult[3, 1, 5] == 1
        assert s3.mult[1, 2, 0] == 1

    def test_taft_algebra(self, registry):
        """测试 Taft(3, F7, 2) 的结构"""
        # Act
        h = registry.resolve("taft-3-7-2")

        # Assert
        assert h.dim == 9
        assert h.field.label == "F7"
        # x·g = q·g·x
        assert h.mult[1, 3, 4] == 2

    def test_sweedler_relations(self, registry):
        """测试 Sweedler 代数：x² = 0，xg = -gx，S(x) = -gx"""
        h = registry.resolve("sweedler4")
        assert not h.mult[1, 1].any()
        assert h.mult[1, 2, 3] == -1
        assert list(h.antipode[1]) == [0, 0, 0, -1]

    def test_duals_are_named_after_base(self, registry):
        assert registry.resolve("dual-c3").name == "dual-c3"
        assert registry.resolve("dual-s3").name == "dual-s3"

    def test_expected_failure(self, registry):
        assert registry.expected_failure("mutant-gamma-antipode-c3") == "consequence.pi-gamma"
        with pytest.raises(UnknownExample):
            registry.expected_failure("eval-c2")

    def test_test_modules_are_valid(self, registry):
        """测试测试模全部合法且标签互不相同"""
        # Arrange
        p = registry.resolve("eval-c2")

        # Act
        modules = registry.build_test_modules(p)

        # Assert
        labels = [v.label for v in modules]
        assert len(labels) == len(set(labels))
        assert {"k", "regular", "cyclic"} <= set(labels)
        for v in modules:
            report = registry.module_service.verify_object(v)
            assert report.overall, (v.label, report.failed_ids())

    def test_test_modules_respect_max_dim(self, registry):
        modules = registry.build_test_modules(registry.resolve("eval-c2"), max_dim=2)
        assert modules and all(v.dim <= 2 for v in modules)

    @pytest.mark.parametrize("name,dim", [
        ("eval-c3", 3),
        ("eval-sweedler4", 4),
        ("trivial-c2-c3", 2),
        ("sign-s3-c2", 2),
    ])
    def test_integral_fixtures_have_dimension_of_k(self, registry, name, dim):
        """测试由 H 的左积分生成的夹具维数为 dim K 且合法"""
        # Arrange
        p = registry.resolve(name)

        # Act
        modules = {v.label: v for v in registry.build_test_modules(p)}

        # Assert
        for label in ("induced", "k⊗induced"):
            assert modules[label].dim == dim
            report = registry.module_service.verify_object(modules[label])
            assert report.overall, (label, report.failed_ids())

    def test_sweedler_antipode_order(self, registry):
        """测试 Sweedler 代数的对极满足 S⁴ = id 而 S² ≠ id"""
        # Arrange
        h = registry.resolve("sweedler4")
        F = h.field
        s2 = F.matmul(h.antipode, h.antipode)

        # Act
        s4 = F.matmul(s2, s2)

        # Assert
        assert F.equal(s4, F.identity(4))
        assert not F.equal(s2, F.identity(4))

    def test_sign_pairing_is_surjective_not_injective(self, registry):
        p = registry.resolve("sign-s3-c2")
        assert p.sigma_r_matrix.shape == (6, 2)
        assert p.field.rank(p.sigma_r_matrix) == 2

    def test_builds_are_deterministic(self, registry):
        fresh = RegistryService()
        for name in ("s3", "dual-c4", "taft-3-7-2"):
            assert fresh.resolve(name).same_structure(registry.resolve(name))
