"""
工具类包
"""
from app.utils.check_runner import run_checks
from app.utils.exact_math import FieldSpec, Quotient, Subspace
from app.utils.tensor_ops import contract

__all__ = ["FieldSpec", "Subspace", "Quotient", "contract", "run_checks"]
