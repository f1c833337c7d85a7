"""
验证报告数据模型
每条检查一个条目，失败条目必须带有见证
"""
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from app.utils.exact_math import FieldSpec


@dataclass(frozen=True)
class Witness:
    """失败见证：第一个不相等的基下标及两侧的值（已渲染）"""
    indices: Tuple[int, ...]
    lhs: str
    rhs: str

    def to_dict(self) -> Dict[str, Any]:
        return {"indices": list(self.indices), "lhs": self.lhs, "rhs": self.rhs}


@dataclass(frozen=True)
class ReportEntry:
    """报告条目"""
    check_id: str
    passed: bool
    witness: Optional[Witness] = None

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError(f"Failing check {self.check_id} must carry a witness")

    @classmethod
    def compare(cls, check_id: str, field_spec: FieldSpec, lhs, rhs) -> "ReportEntry":
        """
        比较两个同形张量

        Args:
            check_id: 检查编号
            field_spec: 标量域
            lhs: 左侧张量
            rhs: 右侧张量

        Returns:
            相等时通过，否则带第一个差异位置的失败条目
        """
        return cls.compare_parts(check_id, field_spec, [(lhs, rhs)])

    @classmethod
    def compare_parts(cls, check_id: str, field_spec: FieldSpec,
                      pairs: Sequence[Tuple[Any, Any]]) -> "ReportEntry":
        """多组比较合成一条，见证下标前缀为组号（只有一组时不加前缀）"""
        for part, (lhs, rhs) in enumerate(pairs):
            lhs = np.asarray(lhs)
            rhs = np.asarray(rhs)
            if lhs.shape != rhs.shape:
                return cls(check_id, False, Witness((part,), f"shape {lhs.shape}", f"shape {rhs.shape}"))
            index = field_spec.first_difference(lhs, rhs)
            if index is not None:
                prefix = (part,) if len(pairs) > 1 else ()
                witness = Witness(
                    prefix + index,
                    field_spec.render(lhs[index]),
                    field_spec.render(rhs[index]),
                )
                return cls(check_id, False, witness)
        return cls(check_id, True)

    @classmethod
    def condition(cls, check_id: str, passed: bool, lhs: Any = "", rhs: Any = "",
                  indices: Tuple[int, ...] = ()) -> "ReportEntry":
        """非张量条件（维数、秩等），失败时记录两侧的值"""
        if passed:
            return cls(check_id, True)
        return cls(check_id, False, Witness(tuple(indices), str(lhs), str(rhs)))

    def with_prefix(self, prefix: str) -> "ReportEntry":
        return ReportEntry(f"{prefix}{self.check_id}", self.passed, self.witness)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"check": self.check_id, "passed": self.passed}
        if self.witness is not None:
            data["witness"] = self.witness.to_dict()
        return data


@dataclass
class VerificationReport:
    """验证报告"""
    subject: str
    entries: List[ReportEntry] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(entry.passed for entry in self.entries)

    def add(self, entry: ReportEntry) -> "VerificationReport":
        self.entries.append(entry)
        return self

    def extend(self, entries: Iterable[ReportEntry], prefix: str = "") -> "VerificationReport":
        for entry in entries:
            self.entries.append(entry.with_prefix(prefix) if prefix else entry)
        return self

    def merge(self, other: "VerificationReport", prefix: str = "") -> "VerificationReport":
        return self.extend(other.entries, prefix)

    def first_failure(self) -> Optional[ReportEntry]:
        for entry in self.entries:
            if not entry.passed:
                return entry
        return None

    def entry(self, check_id: str) -> ReportEntry:
        for item in self.entries:
            if item.check_id == check_id:
                return item
        raise KeyError(check_id)

    def failed_ids(self) -> List[str]:
        return [entry.check_id for entry in self.entries if not entry.passed]

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        return {
            "subject": self.subject,
            "overall": self.overall,
            "entries": [entry.to_dict() for entry in self.entries],
        }
