"""
精确算术工具
有理数域 Q 与素域 F_p 上的标量运算和稠密线性代数

存储约定:
  Q  ：numpy object 数组，元素为 Python int 或最简 Fraction（分母为 1 时规约为 int）
  F_p：numpy int64 数组，元素取值于 [0, p)
线性映射统一采用"输入在前"的矩阵 (dim_in, dim_out)，先 f 后 g 记为 f @ g；
只有 rref / kernel_basis / solve_right_inverse_section 采用列约定（矩阵作用于列向量）。
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.core.exceptions import BadParams, NotSurjective, ShapeMismatch, SingularMatrix

logger = logging.getLogger(__name__)

ScalarLike = Union[int, Fraction, str]

_FLOAT_EXACT_BOUND = 2 ** 53
_INT64_BOUND = 2 ** 62
_MAX_PRIME = 2 ** 31


def _canon_scalar(x):
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, (bool, np.bool_)):
        raise BadParams("Boolean is not a field element")
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, str):
        return _canon_scalar(Fraction(x.strip()))
    raise BadParams(f"Unsupported scalar {x!r}")


_canon_array = np.frompyfunc(_canon_scalar, 1, 1)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _scaled_ints(a: np.ndarray) -> Tuple[np.ndarray, int]:
    """把有理数组放大为整数数组，返回 (整数数组, 公分母)"""
    denominators = {x.denominator for x in a.flat if type(x) is not int}
    if not denominators:
        return a, 1
    d = math.lcm(*denominators)
    return np.frompyfunc(lambda x: int(x * d), 1, 1)(a), d


def _max_abs(a: np.ndarray) -> int:
    return max((abs(x) for x in a.flat), default=0)


@dataclass(frozen=True)
class FieldSpec:
    """
    标量域

    kind 为 "Q" 或 "Fp"，characteristic 对 Q 为 0，对 F_p 为素数 p
    """
    kind: str
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "Q":
            if self.characteristic != 0:
                raise BadParams("Rationals have characteristic 0")
        elif self.kind == "Fp":
            p = self.characteristic
            if p >= _MAX_PRIME or not _is_prime(p):
                raise BadParams(f"Characteristic {p} is not a prime below 2^31")
        else:
            raise BadParams(f"Unknown field kind {self.kind}")

    # ------------------------------------------------------------------
    # 构造
    # ------------------------------------------------------------------
    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("Q", 0)

    @classmethod
    def prime_field(cls, p: int) -> "FieldSpec":
        return cls("Fp", int(p))

    @classmethod
    def parse(cls, label: str) -> "FieldSpec":
        """
        解析域标签

        Args:
            label: "Q"、"F7" 或 "Fp:7"
        """
        text = label.strip()
        if text == "Q":
            return cls.rationals()
        for prefix in ("Fp:", "F"):
            if text.startswith(prefix) and text[len(prefix):].isdigit():
                return cls.prime_field(int(text[len(prefix):]))
        raise BadParams(f"Unknown field label {label}")

    @property
    def is_rational(self) -> bool:
        return self.kind == "Q"

    @property
    def label(self) -> str:
        return "Q" if self.is_rational else f"F{self.characteristic}"

    @property
    def dtype(self):
        return object if self.is_rational else np.int64

    # ------------------------------------------------------------------
    # 标量
    # ------------------------------------------------------------------
    def scalar(self, value: ScalarLike):
        """把 int、Fraction 或 "p/q" 字符串转换为本域元素"""
        x = _canon_scalar(value)
        if self.is_rational:
            return x
        p = self.characteristic
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise BadParams(f"Denominator of {value} vanishes in F{p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return x % p

    def inv(self, x):
        if x == 0:
            raise SingularMatrix("Zero has no inverse")
        if self.is_rational:
            return _canon_scalar(Fraction(1) / x)
        return pow(int(x), -1, self.characteristic)

    def render(self, x) -> str:
        """渲染标量：有理数为 "p/q" 或整数，素域为代表元整数"""
        if self.is_rational:
            return str(_canon_scalar(x))
        return str(int(x) % self.characteristic)

    def to_json_scalar(self, x):
        if self.is_rational:
            x = _canon_scalar(x)
            return x if type(x) is int else str(x)
        return int(x) % self.characteristic

    # ------------------------------------------------------------------
    # 数组
    # ------------------------------------------------------------------
    def array(self, data) -> np.ndarray:
        """把嵌套列表或数组转换为本域上的规范数组"""
        if self.is_rational:
            raw = np.array(data, dtype=object)
            if raw.size == 0:
                return np.zeros(raw.shape, dtype=object)
            return np.asarray(_canon_array(raw), dtype=object).reshape(raw.shape)
        raw = np.array(data, dtype=object)
        if raw.size == 0:
            return np.zeros(raw.shape, dtype=np.int64)
        values = [self.scalar(x) for x in raw.flat]
        return np.array(values, dtype=np.int64).reshape(raw.shape)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=self.dtype)

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        out[range(n), range(n)] = 1
        return out

    def basis_vector(self, n: int, i: int) -> np.ndarray:
        out = self.zeros(n)
        out[i] = 1
        return out

    def _reduce(self, a) -> np.ndarray:
        if self.is_rational:
            a = np.asarray(a, dtype=object)
            if a.size == 0:
                return np.zeros(a.shape, dtype=object)
            return np.asarray(_canon_array(a), dtype=object).reshape(a.shape)
        return np.mod(a, self.characteristic).astype(np.int64)

    def add(self, a, b) -> np.ndarray:
        if self.is_rational:
            return self._reduce(np.asarray(a, dtype=object) + np.asarray(b, dtype=object))
        return self._reduce(np.asarray(a) + np.asarray(b))

    def sub(self, a, b) -> np.ndarray:
        if self.is_rational:
            return self._reduce(np.asarray(a, dtype=object) - np.asarray(b, dtype=object))
        return self._reduce(np.asarray(a) - np.asarray(b))

    def neg(self, a) -> np.ndarray:
        a = np.asarray(a)
        return self.sub(self.zeros(a.shape), a)

    def mul(self, a, b) -> np.ndarray:
        """逐元素乘法（广播）"""
        if self.is_rational:
            return self._reduce(np.asarray(a, dtype=object) * np.asarray(b, dtype=object))
        return self._reduce(np.asarray(a, dtype=np.int64) * np.asarray(b, dtype=np.int64))

    def scale(self, a, s) -> np.ndarray:
        return self.mul(a, self.scalar(s))

    def outer(self, u, v) -> np.ndarray:
        u = np.asarray(u)
        v = np.asarray(v)
        return self.mul(u.reshape(u.shape + (1,) * v.ndim), v.reshape((1,) * u.ndim + v.shape))

    def kron(self, a, b) -> np.ndarray:
        """
        Kronecker 积：((i·b.rows+i'),(j·b.cols+j')) 位置为 a[i,j]·b[i',j']

        向量按一维处理
        """
        a = np.asarray(a)
        b = np.asarray(b)
        if a.ndim == 1 and b.ndim == 1:
            return self.outer(a, b).reshape(-1)
        if a.ndim != 2 or b.ndim != 2:
            raise ShapeMismatch("kron expects two matrices or two vectors")
        out = self.mul(a[:, None, :, None], b[None, :, None, :])
        return out.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])

    def sum_axes(self, a: np.ndarray, axes: Sequence[int]) -> np.ndarray:
        if not axes:
            return a
        axes = tuple(axes)
        if a.size == 0:
            shape = tuple(n for i, n in enumerate(a.shape) if i not in axes)
            return self.zeros(shape)
        if self.is_rational:
            out = np.sum(a, axis=axes, dtype=object)
            return self._reduce(np.asarray(out, dtype=object))
        return self._reduce(np.sum(a, axis=axes, dtype=np.int64))

    def equal(self, a, b) -> bool:
        a = np.asarray(a)
        b = np.asarray(b)
        if a.shape != b.shape:
            return False
        return not np.any(np.asarray(a != b, dtype=bool))

    def is_zero(self, a) -> bool:
        return not np.any(np.asarray(np.asarray(a) != 0, dtype=bool))

    def first_difference(self, a, b) -> Optional[Tuple[int, ...]]:
        """返回行优先顺序下第一个不相等的下标，没有则返回 None"""
        a = np.asarray(a)
        b = np.asarray(b)
        if a.shape != b.shape:
            raise ShapeMismatch(f"Cannot compare shapes {a.shape} and {b.shape}")
        diff = np.argwhere(np.asarray(a != b, dtype=bool))
        if len(diff) == 0:
            return None
        return tuple(int(i) for i in diff[0])

    # ------------------------------------------------------------------
    # 矩阵乘法
    # ------------------------------------------------------------------
    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """
        精确矩阵乘法，支持向量、二维与批量三维

        整数数据在界允许时走 float64 / int64 快速通道，结果与对象运算逐位一致
        """
        a = np.asarray(a)
        b = np.asarray(b)
        if a.ndim == 1 or b.ndim == 1:
            left = a.reshape(1, -1) if a.ndim == 1 else a
            right = b.reshape(-1, 1) if b.ndim == 1 else b
            out = self.matmul(left, right)
            if a.ndim == 1:
                out = out[..., 0, :]
            if b.ndim == 1:
                out = out[..., 0]
            return out
        if a.shape[-1] != b.shape[-2]:
            raise ShapeMismatch(f"Cannot multiply {a.shape} by {b.shape}")
        out_shape = np.broadcast_shapes(a.shape[:-2], b.shape[:-2]) + (a.shape[-2], b.shape[-1])
        inner = a.shape[-1]
        if inner == 0 or 0 in out_shape:
            return self.zeros(out_shape)
        if self.is_rational:
            return self._matmul_rational(a.astype(object), b.astype(object), inner)
        return self._matmul_prime(a.astype(np.int64), b.astype(np.int64), inner)

    def _matmul_rational(self, a, b, inner):
        ia, da = _scaled_ints(a)
        ib, db = _scaled_ints(b)
        bound = _max_abs(ia) * _max_abs(ib) * inner
        if bound < _FLOAT_EXACT_BOUND:
            fa = ia.astype(np.float64)
            fb = ib.astype(np.float64)
            out = np.rint(np.matmul(fa, fb)).astype(np.int64).astype(object)
        elif bound < _INT64_BOUND:
            out = np.matmul(ia.astype(np.int64), ib.astype(np.int64)).astype(object)
        else:
            out = np.matmul(ia, ib)
        d = da * db
        if d != 1:
            return np.asarray(
                np.frompyfunc(lambda x: _canon_scalar(Fraction(x, d)), 1, 1)(out), dtype=object
            ).reshape(out.shape)
        return self._reduce(np.asarray(out, dtype=object))

    def _matmul_prime(self, a, b, inner):
        p = self.characteristic
        per_term = (p - 1) ** 2
        if per_term * inner < _FLOAT_EXACT_BOUND:
            out = np.rint(np.matmul(a.astype(np.float64), b.astype(np.float64)))
            return self._reduce(out.astype(np.int64))
        # 按内维分块，保证每块累加不溢出 int64
        step = max(1, _INT64_BOUND // max(per_term, 1))
        acc = None
        for start in range(0, inner, step):
            part = np.matmul(a[..., start:start + step], b[..., start:start + step, :]) % p
            acc = part if acc is None else (acc + part) % p
        return acc.astype(np.int64)

    # ------------------------------------------------------------------
    # 消元（列约定）
    # ------------------------------------------------------------------
    def rref(self, m) -> Tuple[np.ndarray, List[int]]:
        """
        简化行阶梯形

        选主元规则固定为当前列第一个非零行，返回 (R, 主元列列表)
        """
        R = self.array(m) if not isinstance(m, np.ndarray) else m.copy()
        if self.is_rational and R.dtype != object:
            R = self.array(R)
        if R.ndim != 2:
            raise ShapeMismatch("rref expects a matrix")
        rows, cols = R.shape
        pivots: List[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nonzero = np.nonzero(np.asarray(R[r:, c] != 0, dtype=bool))[0]
            if len(nonzero) == 0:
                continue
            p_row = r + int(nonzero[0])
            if p_row != r:
                R[[r, p_row]] = R[[p_row, r]]
            pivot_inv = self.inv(R[r, c])
            R[r, c:] = self.mul(R[r, c:], pivot_inv)
            others = np.nonzero(np.asarray(R[:, c] != 0, dtype=bool))[0]
            others = others[others != r]
            if len(others):
                update = self.outer(R[others, c], R[r, c:])
                R[np.ix_(others, np.arange(c, cols))] = self.sub(R[others, c:], update)
            pivots.append(c)
            r += 1
        return self._reduce(R), pivots

    def rank(self, m) -> int:
        m = np.asarray(m)
        if m.size == 0:
            return 0
        return len(self.rref(m)[1])

    def kernel_basis(self, m) -> np.ndarray:
        """
        零空间基 {v : m·v = 0}

        Returns:
            形状 (k, cols) 的数组，每行一个基向量，整体为简化阶梯形
        """
        m = np.asarray(m)
        cols = m.shape[1]
        if m.shape[0] == 0:
            return self.identity(cols)
        R, pivots = self.rref(m)
        free = [c for c in range(cols) if c not in set(pivots)]
        basis = self.zeros((len(free), cols))
        for k, f in enumerate(free):
            basis[k, f] = 1
            for i, pc in enumerate(pivots):
                basis[k, pc] = self.neg(R[i:i + 1, f])[0]
        if len(free) == 0:
            return basis
        return self.rref(basis)[0]

    def invert(self, m) -> np.ndarray:
        m = np.asarray(m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ShapeMismatch(f"Cannot invert shape {m.shape}")
        n = m.shape[0]
        aug = np.concatenate([self.array(m) if self.is_rational else m, self.identity(n)], axis=1)
        R, pivots = self.rref(aug)
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise SingularMatrix(f"Matrix of size {n} has rank {sum(1 for c in pivots if c < n)}")
        return R[:, n:]

    def solve(self, a, b) -> np.ndarray:
        """
        求解 a·x = b（列约定），返回自由变量取 0 的特解

        Raises:
            SingularMatrix: 方程组无解
        """
        a = np.asarray(a)
        b = np.asarray(b)
        vector = b.ndim == 1
        if vector:
            b = b.reshape(-1, 1)
        n = a.shape[1]
        R, pivots = self.rref(np.concatenate([a, b], axis=1))
        if any(c >= n for c in pivots):
            raise SingularMatrix("Linear system is inconsistent")
        x = self.zeros((n, b.shape[1]))
        for i, c in enumerate(pivots):
            x[c] = R[i, n:]
        return x.reshape(-1) if vector else x

    def solve_right_inverse_section(self, q) -> np.ndarray:
        """
        满射 q 的确定性右逆 s（q·s = I），s 的非零行落在 q 的阶梯主元列上
        """
        q = np.asarray(q)
        r = q.shape[0]
        _, pivots = self.rref(q)
        if len(pivots) < r:
            raise NotSurjective(f"Row rank {len(pivots)} is less than {r}")
        s = self.zeros((q.shape[1], r))
        s[pivots, :] = self.invert(q[:, pivots])
        return s


@dataclass(frozen=True)
class Subspace:
    """
    嵌入子空间

    basis 为 (k, n) 的简化阶梯形基，也是输入在前的包含映射
    """
    field: FieldSpec
    basis: np.ndarray
    pivots: Tuple[int, ...]

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: np.ndarray, ambient_dim: int) -> "Subspace":
        rows = np.asarray(rows)
        if rows.size == 0:
            return cls(field, field.zeros((0, ambient_dim)), ())
        R, pivots = field.rref(rows)
        return cls(field, R[: len(pivots)], tuple(pivots))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[1]

    def coordinates(self, vectors: np.ndarray) -> np.ndarray:
        """子空间中向量（按行）的坐标：取主元列上的分量"""
        vectors = np.asarray(vectors)
        return vectors[..., list(self.pivots)]

    def contains(self, vectors: np.ndarray) -> bool:
        vectors = np.atleast_2d(np.asarray(vectors))
        if self.dim == 0:
            return self.field.is_zero(vectors)
        rebuilt = self.field.matmul(self.coordinates(vectors), self.basis)
        return self.field.equal(rebuilt, vectors)

    def same_as(self, other: "Subspace") -> bool:
        return self.pivots == other.pivots and self.field.equal(self.basis, other.basis)


@dataclass(frozen=True)
class Quotient:
    """
    商空间

    projection 为 (n, r) 的投影，section 为 (r, n) 的确定性截面，section @ projection = I
    """
    field: FieldSpec
    projection: np.ndarray
    section: np.ndarray

    @classmethod
    def by_relations(cls, field: FieldSpec, relations: np.ndarray, ambient_dim: int) -> "Quotient":
        """用关系向量（按行）张成的子空间做商"""
        relations = np.asarray(relations)
        if relations.size == 0:
            ident = field.identity(ambient_dim)
            return cls(field, ident, ident)
        R, pivots = field.rref(relations)
        free = [c for c in range(ambient_dim) if c not in set(pivots)]
        projection = field.zeros((ambient_dim, len(free)))
        for j, f in enumerate(free):
            projection[f, j] = 1
            for i, pc in enumerate(pivots):
                projection[pc, j] = field.neg(R[i:i + 1, f])[0]
        if not free:
            return cls(field, projection, field.zeros((0, ambient_dim)))
        section = field.solve_right_inverse_section(projection.T).T
        return cls(field, projection, section)

    @property
    def dim(self) -> int:
        return self.projection.shape[1]

    def induce(self, operator: np.ndarray) -> np.ndarray:
        """把环境空间上的线性算子下推到商空间：section @ operator @ projection"""
        f = self.field
        return f.matmul(f.matmul(self.section, operator), self.projection)


def stack_rows(field: FieldSpec, blocks: Iterable[np.ndarray], width: int) -> np.ndarray:
    parts = [np.asarray(b).reshape(-1, width) for b in blocks]
    parts = [p for p in parts if p.size]
    if not parts:
        return field.zeros((0, width))
    return np.concatenate(parts, axis=0)
