"""
验证报告模型单元测试
"""
import pytest

from app.models.report import ReportEntry, VerificationReport, Witness
from app.utils.exact_math import FieldSpec

Q = FieldSpec.rationals()


class TestReportEntry:
    """报告条目测试"""

    def test_compare_equal(self):
        """测试相等张量通过"""
        entry = ReportEntry.compare("same", Q, Q.identity(2), Q.identity(2))
        assert entry.passed
        assert entry.witness is None

    def test_compare_records_first_difference(self):
        """测试失败条目记录第一个差异"""
        # Arrange
        lhs = Q.array([[1, 0], ["1/2", 1]])
        rhs = Q.identity(2)

        # Act
        entry = ReportEntry.compare("lower", Q, lhs, rhs)

        # Assert
        assert not entry.passed
        assert entry.witness == Witness((1, 0), "1/2", "0")

    def test_compare_parts_prefixes_part_index(self):
        """测试多组比较时见证前缀为组号"""
        # Act
        entry = ReportEntry.compare_parts("parts", Q, [
            (Q.identity(2), Q.identity(2)),
            (Q.array([1, 2]), Q.array([1, 3])),
        ])

        # Assert
        assert entry.witness.indices == (1, 1)
        assert (entry.witness.lhs, entry.witness.rhs) == ("2", "3")

    def test_compare_shape_mismatch_fails(self):
        entry = ReportEntry.compare("shape", Q, Q.zeros(2), Q.zeros(3))
        assert not entry.passed
        assert "shape" in entry.witness.lhs

    def test_failing_entry_requires_witness(self):
        """测试失败条目必须带见证"""
        with pytest.raises(ValueError):
            ReportEntry("bad", False)

    def test_condition(self):
        """测试非张量条件"""
        entry = ReportEntry.condition("dimension", False, 3, 4)
        assert entry.witness == Witness((), "3", "4")
        assert ReportEntry.condition("dimension", True).passed


class TestVerificationReport:
    """验证报告测试"""

    def test_empty_report_passes(self):
        assert VerificationReport("empty").overall

    def test_overall_is_conjunction(self):
        """测试总体结果为所有条目的合取"""
        # Arrange
        report = VerificationReport("r")
        report.add(ReportEntry.condition("a", True))
        report.add(ReportEntry.condition("b", False, 1, 2))

        # Assert
        assert not report.overall
        assert report.failed_ids() == ["b"]
        assert report.first_failure().check_id == "b"

    def test_merge_with_prefix(self):
        """测试合并时加前缀"""
        # Arrange
        inner = VerificationReport("inner", [ReportEntry.condition("x", True)])

        # Act
        report = VerificationReport("outer").merge(inner, "K.")

        # Assert
        assert report.entry("K.x").passed
        with pytest.raises(KeyError):
            report.entry("x")

    def test_to_dict(self):
        report = VerificationReport("r", [ReportEntry.condition("b", False, 1, 2, indices=(0,))])
        assert report.to_dict() == {
            "subject": "r",
            "overall": False,
            "entries": [
                {"check": "b", "passed": False, "witness": {"indices": [0], "lhs": "1", "rhs": "2"}},
            ],
        }
