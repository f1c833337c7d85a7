"""
结构常数张量的精确缩并

contract(field, "abc,cd->abd", x, y) 与 einsum 记号一致：
从左到右两两缩并，只在后面不再需要的下标上求和，共享且仍需要的下标作为批量维。
中间结果超过 settings.max_intermediate_entries 时按输出的第一个下标分块；
分块到底仍超过 settings.max_contraction_entries 时报 ComputationTooLarge。

有理数运算数在入口处统一放大为整数（记录公分母），中间结果在界允许时保持 int64，
出口处再除回公分母，因此结果与逐项 Fraction 运算完全一致。
"""
import logging
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import ComputationTooLarge, ShapeMismatch
from app.utils.exact_math import FieldSpec, _canon_scalar, _scaled_ints

logger = logging.getLogger(__name__)

_FLOAT_EXACT_BOUND = 2 ** 53
_INT64_BOUND = 2 ** 62


def _parse(subscripts: str, count: int) -> Tuple[List[str], str]:
    if "->" not in subscripts:
        raise ShapeMismatch(f"Contraction '{subscripts}' needs an explicit output")
    inputs, output = subscripts.replace(" ", "").split("->")
    terms = inputs.split(",")
    if len(terms) != count:
        raise ShapeMismatch(f"Contraction '{subscripts}' expects {len(terms)} operands, got {count}")
    for term in terms + [output]:
        if len(set(term)) != len(term):
            raise ShapeMismatch(f"Repeated index in '{term}'")
    return terms, output


def _dims(terms: Sequence[str], operands: Sequence[np.ndarray]) -> Dict[str, int]:
    dims: Dict[str, int] = {}
    for term, op in zip(terms, operands):
        if op.ndim != len(term):
            raise ShapeMismatch(f"Operand of rank {op.ndim} does not match '{term}'")
        for idx, n in zip(term, op.shape):
            if dims.setdefault(idx, n) != n:
                raise ShapeMismatch(f"Index '{idx}' has sizes {dims[idx]} and {n}")
    return dims


# ----------------------------------------------------------------------
# 有理数的整数化表示
# ----------------------------------------------------------------------
def _max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(x) for x in a.flat)
    return int(np.abs(a).max())


def _narrow(a: np.ndarray) -> np.ndarray:
    """对象整数数组在不溢出时转为 int64"""
    if a.dtype == object and _max_abs(a) < _INT64_BOUND:
        return a.astype(np.int64)
    return a


def _lift(field: FieldSpec, op: np.ndarray) -> Tuple[np.ndarray, int]:
    if not field.is_rational:
        return op.astype(np.int64), 1
    ints, den = _scaled_ints(op.astype(object))
    return _narrow(ints), den


def _lower(field: FieldSpec, a: np.ndarray, den: int) -> np.ndarray:
    if not field.is_rational:
        return a
    out = a.astype(object)
    if den == 1:
        return out
    return np.asarray(
        np.frompyfunc(lambda x: _canon_scalar(Fraction(x, den)), 1, 1)(out), dtype=object
    ).reshape(out.shape)


def _int_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    inner = a.shape[-1]
    bound = _max_abs(a) * _max_abs(b) * inner
    if a.dtype != object and b.dtype != object:
        if bound < _FLOAT_EXACT_BOUND:
            return np.rint(np.matmul(a.astype(np.float64), b.astype(np.float64))).astype(np.int64)
        if bound < _INT64_BOUND:
            return np.matmul(a, b)
    return _narrow(np.matmul(a.astype(object), b.astype(object)))


def _int_sum(a: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    count = int(np.prod([a.shape[i] for i in axes], dtype=np.int64))
    if a.dtype != object and _max_abs(a) * count < _INT64_BOUND:
        return np.sum(a, axis=tuple(axes), dtype=np.int64)
    return _narrow(np.asarray(np.sum(a.astype(object), axis=tuple(axes)), dtype=object))


def _matmul(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[-1] == 0 or a.size == 0 or b.size == 0:
        shape = np.broadcast_shapes(a.shape[:-2], b.shape[:-2]) + (a.shape[-2], b.shape[-1])
        return np.zeros(shape, dtype=np.int64)
    if field.is_rational:
        return _int_matmul(a, b)
    return field.matmul(a, b)


def _sum(field: FieldSpec, a: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    if not axes:
        return a
    if a.size == 0:
        shape = tuple(n for i, n in enumerate(a.shape) if i not in set(axes))
        return np.zeros(shape, dtype=np.int64)
    if field.is_rational:
        return _int_sum(a, axes)
    return field.sum_axes(a, axes)


# ----------------------------------------------------------------------
# 缩并
# ----------------------------------------------------------------------
def _pair(field: FieldSpec, ta: str, a: np.ndarray, tb: str, b: np.ndarray,
          keep: set) -> Tuple[str, np.ndarray]:
    """缩并两个张量，返回 (结果下标, 结果)"""
    # 只出现在一侧且之后不再需要的下标先求和
    drop_a = [i for i, c in enumerate(ta) if c not in tb and c not in keep]
    if drop_a:
        a = _sum(field, a, drop_a)
        ta = "".join(c for c in ta if c in tb or c in keep)
    drop_b = [i for i, c in enumerate(tb) if c not in ta and c not in keep]
    if drop_b:
        b = _sum(field, b, drop_b)
        tb = "".join(c for c in tb if c in ta or c in keep)

    shared = [c for c in ta if c in tb]
    batch = [c for c in shared if c in keep]
    summed = [c for c in shared if c not in keep]
    free_a = [c for c in ta if c not in tb]
    free_b = [c for c in tb if c not in ta]

    a_t = np.transpose(a, [ta.index(c) for c in batch + free_a + summed])
    b_t = np.transpose(b, [tb.index(c) for c in batch + summed + free_b])
    nbatch = len(batch)
    batch_shape = tuple(a_t.shape[:nbatch])
    fa_shape = tuple(a_t.shape[nbatch: nbatch + len(free_a)])
    fb_shape = tuple(b_t.shape[nbatch + len(summed):])
    nb = int(np.prod(batch_shape, dtype=np.int64))
    k = int(np.prod(a_t.shape[nbatch + len(free_a):], dtype=np.int64))
    pa = int(np.prod(fa_shape, dtype=np.int64))
    pb = int(np.prod(fb_shape, dtype=np.int64))

    out = _matmul(field, a_t.reshape(nb, pa, k), b_t.reshape(nb, k, pb))
    out = out.reshape(batch_shape + fa_shape + fb_shape)
    return "".join(batch + free_a + free_b), out


def _largest_intermediate(terms: Sequence[str], output: str, dims: Dict[str, int]) -> int:
    current = terms[0]
    largest = int(np.prod([dims[c] for c in current], dtype=np.int64))
    for pos in range(1, len(terms)):
        keep = set(output).union(*terms[pos + 1:])
        nxt = terms[pos]
        merged = [c for c in current if c in keep] + \
                 [c for c in nxt if c not in current and c in keep]
        size = int(np.prod([dims[c] for c in merged], dtype=np.int64))
        largest = max(largest, size)
        current = "".join(merged)
    return largest


def contract(field: FieldSpec, subscripts: str, *operands: np.ndarray) -> np.ndarray:
    """
    精确张量缩并

    Args:
        field: 标量域
        subscripts: einsum 风格的显式记号，例如 "ab,bc->ac"
        operands: 参与缩并的张量

    Returns:
        按输出下标顺序排列的结果张量
    """
    operands = [np.asarray(op) for op in operands]
    terms, output = _parse(subscripts, len(operands))
    dims = _dims(terms, operands)
    for c in output:
        if c not in dims:
            raise ShapeMismatch(f"Output index '{c}' does not occur in the inputs")

    largest = _largest_intermediate(terms, output, dims)
    if largest > settings.max_intermediate_entries:
        if output and dims[output[0]] > 1:
            return _contract_chunked(field, terms, output, operands, dims)
        if largest > settings.max_contraction_entries:
            raise ComputationTooLarge(
                f"Contraction '{subscripts}' needs an intermediate of {largest} entries, "
                f"limit is {settings.max_contraction_entries}"
            )
    return _contract_direct(field, terms, output, operands)


def _contract_direct(field, terms, output, operands):
    lifted = [_lift(field, op) for op in operands]
    den = 1
    for _, d in lifted:
        den *= d
    current_t, current = terms[0], lifted[0][0]
    for pos in range(1, len(terms)):
        keep = set(output).union(*terms[pos + 1:])
        current_t, current = _pair(field, current_t, current, terms[pos], lifted[pos][0], keep)
    extra = [i for i, c in enumerate(current_t) if c not in output]
    if extra:
        current = _sum(field, current, extra)
        current_t = "".join(c for c in current_t if c in output)
    result = np.transpose(current, [current_t.index(c) for c in output])
    return _lower(field, np.ascontiguousarray(result).reshape(result.shape), den)


def _contract_chunked(field, terms, output, operands, dims):
    lead = output[0]
    size = dims[lead]
    step = max(1, size // 2)
    logger.debug("Chunking contraction over index '%s' (size %d, step %d)", lead, size, step)
    parts = []
    sub = ",".join(terms) + "->" + output
    for start in range(0, size, step):
        sliced = []
        for term, op in zip(terms, operands):
            if lead in term:
                index = [slice(None)] * op.ndim
                index[term.index(lead)] = slice(start, start + step)
                op = op[tuple(index)]
            sliced.append(op)
        parts.append(contract(field, sub, *sliced))
    return np.concatenate(parts, axis=0)
