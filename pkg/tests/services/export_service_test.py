"""
报告导出服务单元测试
"""
import json
import os

import pytest

from app.core.exceptions import BadParams
from app.models.report import ReportEntry, VerificationReport, Witness
from app.services.export_service import ExportService


class TestExportService:
    """报告导出测试"""

    def setup_method(self):
        self.export_service = ExportService()

    def test_empty_report_is_header_only(self):
        """测试空报告只有表头且总体通过"""
        # Act
        text = self.export_service.emit_report(VerificationReport("nothing"))

        # Assert
        assert text == "report: nothing\noverall: PASS\n"

    def test_failing_entry_shows_witness(self):
        """测试失败条目包含见证下标与两侧标量"""
        # Arrange
        report = VerificationReport("r", [
            ReportEntry.condition("ok", True),
            ReportEntry("associativity", False, Witness((0, 1, 1, 0), "1/2", "0")),
        ])

        # Act
        text = self.export_service.emit_report(report)

        # Assert
        assert text.splitlines() == [
            "report: r",
            "overall: FAIL",
            "[PASS] ok",
            "[FAIL] associativity at (0, 1, 1, 0): lhs=1/2 rhs=0",
        ]

    def test_json_renders_integers_and_rationals(self):
        """测试 JSON 中整数标量为数字、有理数为 "p/q" 字符串"""
        # Arrange
        report = VerificationReport("r", [ReportEntry("x", False, Witness((2,), "1/3", "-4"))])

        # Act
        data = json.loads(self.export_service.emit_report(report, "json"))

        # Assert
        assert data == {
            "subject": "r",
            "overall": False,
            "entries": [{"check": "x", "passed": False,
                         "witness": {"indices": [2], "lhs": "1/3", "rhs": -4}}],
        }

    def test_output_is_deterministic(self):
        report = VerificationReport("r", [ReportEntry.condition("a", True)])
        first = self.export_service.emit_report(report, "json")
        assert first == self.export_service.emit_report(report, "json")
        assert first.endswith("\n")

    def test_unknown_format(self):
        with pytest.raises(BadParams):
            self.export_service.emit_report(VerificationReport("r"), "xml")

    def test_golden_axioms_report(self, suite_service, golden_dir):
        """测试 c2 公理套件报告与固定输出逐字节一致"""
        # Arrange
        with open(os.path.join(golden_dir, "axioms_c2.txt"), encoding="utf-8") as f:
            expected = f.read()

        # Act
        report = suite_service.run_suite("axioms", "c2")

        # Assert
        assert self.export_service.emit_report(report, "text") == expected
