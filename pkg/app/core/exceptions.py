"""
异常定义
所有领域错误都继承自 ValueError，以便沿用"非法输入抛 ValueError"的约定
"""
from typing import Optional


class HopfEngineError(ValueError):
    """引擎错误基类"""


class ShapeMismatch(HopfEngineError):
    """张量或矩阵形状不一致"""


class SingularMatrix(HopfEngineError):
    """矩阵不可逆"""


class NotSurjective(HopfEngineError):
    """映射不满（行秩不足）"""


class FieldMismatch(HopfEngineError):
    """参与运算的对象不在同一个域上"""


class NotConvolutionInvertible(HopfEngineError):
    """卷积逆不存在"""


class NotHopfMap(HopfEngineError):
    """线性映射不是 Hopf 代数同态"""


class AlgebraMismatch(HopfEngineError):
    """两个 Hopf 代数的结构常数不同"""


class AssociatorNotInvertible(HopfEngineError):
    """结合子在三重张量代数中不可逆"""


class FlavorMismatch(HopfEngineError):
    """YD 模的类型或配对不一致"""


class NotComodule(HopfEngineError):
    """恢复出的余作用不满足余模公理"""


class CoactionNotClosed(HopfEngineError):
    """作用不保持余不变子空间"""


class BadParams(HopfEngineError):
    """示例参数非法"""


class UnknownExample(HopfEngineError):
    """注册表中不存在的示例名称"""


class UnknownSuite(HopfEngineError):
    """未知的检查套件"""


class ComputationTooLarge(HopfEngineError):
    """稠密求解规模超过配置上限"""


class ParseError(HopfEngineError):
    """文档解析错误，带行列位置"""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ValidationError(HopfEngineError):
    """对象未通过验证，携带失败的报告"""

    def __init__(self, report, message: Optional[str] = None):
        failed = report.first_failure()
        detail = failed.check_id if failed is not None else "unknown check"
        super().__init__(message or f"{report.subject} failed validation at {detail}")
        self.report = report
