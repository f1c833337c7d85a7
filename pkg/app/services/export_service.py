"""
报告导出服务
支持文本与 JSON 两种格式，同一份报告的输出逐字节确定
"""
import json
import re
from typing import Any, Dict

from app.core.exceptions import BadParams
from app.models.report import ReportEntry, VerificationReport

REPORT_FORMATS = ("text", "json")

_INTEGER = re.compile(r"^-?\d+$")


def _scalar(value: str) -> Any:
    # 𝔽_p 标量与整数有理数按整数输出，其余保持 "p/q"
    return int(value) if _INTEGER.match(value) else value


class ExportService:
    """报告导出服务"""

    def emit_report(self, report: VerificationReport, fmt: str = "text") -> str:
        """
        导出验证报告

        Args:
            report: 验证报告
            fmt: "text" 或 "json"

        Returns:
            报告文本（以换行结尾）

        Raises:
            BadParams: 未知格式
        """
        if fmt == "text":
            return self._emit_text(report)
        if fmt == "json":
            return self._emit_json(report)
        raise BadParams(f"Unknown report format {fmt}; expected one of {REPORT_FORMATS}")

    def _emit_text(self, report: VerificationReport) -> str:
        lines = [
            f"report: {report.subject}",
            f"overall: {'PASS' if report.overall else 'FAIL'}",
        ]
        lines.extend(self._entry_line(entry) for entry in report.entries)
        return "\n".join(lines) + "\n"

    @staticmethod
    def _entry_line(entry: ReportEntry) -> str:
        if entry.passed:
            return f"[PASS] {entry.check_id}"
        w = entry.witness
        indices = ", ".join(str(i) for i in w.indices)
        return f"[FAIL] {entry.check_id} at ({indices}): lhs={w.lhs} rhs={w.rhs}"

    def _emit_json(self, report: VerificationReport) -> str:
        data = report.to_dict()
        for entry in data["entries"]:
            witness: Dict[str, Any] = entry.get("witness")
            if witness is not None:
                witness["lhs"] = _scalar(witness["lhs"])
                witness["rhs"] = _scalar(witness["rhs"])
        return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
