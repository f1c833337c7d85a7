"""
张量缩并单元测试
"""

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

from app.core.exceptions import ComputationTooLarge, ShapeMismatch
from app.utils.exact_math import FieldSpec
from app.utils.tensor_ops import contract

Q = FieldSpec.rationals()
F7 = FieldSpec.prime_field(7)


def tensors(shape, low=-3, high=3):
    size = int(np.prod(shape))
    return st.lists(st.integers(low, high), min_size=size, max_size=size).map(
        lambda values: np.array(values, dtype=np.int64).reshape(shape)
    )


class TestContract:
    """缩并测试"""

    def test_matrix_product(self):
        """测试矩阵乘积"""
        # Arrange
        a = Q.array([[1, 2], [3, 4]])
        b = Q.array([[0, 1], [1, 0]])

        # Act
        result = contract(Q, "ab,bc->ac", a, b)

        # Assert
        assert Q.equal(result, Q.array([[2, 1], [4, 3]]))

    def test_fractions_are_exact(self):
        """测试有理数缩并精确"""
        # Arrange
        a = Q.array(["1/3", "1/3", "1/3"])

        # Act
        result = contract(Q, "a,a->", a, Q.array([1, 1, 1]))

        # Assert
        assert result == 1

    def test_full_sum_and_transpose(self):
        """测试只出现在一侧的下标被求和"""
        # Arrange
        a = Q.array([[1, 2], [3, 4]])

        # Act
        result = contract(Q, "ab->b", a)
        transposed = contract(Q, "ab->ba", a)

        # Assert
        assert Q.equal(result, Q.array([4, 6]))
        assert Q.equal(transposed, a.T)

    def test_unknown_output_index(self):
        """测试输出下标不在输入中"""
        with pytest.raises(ShapeMismatch):
            contract(Q, "ab->c", Q.identity(2))

    @hypothesis_settings(max_examples=40, deadline=None)
    @given(tensors((2, 3, 2)), tensors((2, 2)), tensors((3, 2, 2)))
    def test_matches_einsum_over_rationals(self, a, b, c):
        expected = np.einsum("xyz,zw,ywv->xv", a, b, c)
        result = contract(Q, "xyz,zw,ywv->xv", Q.array(a), Q.array(b), Q.array(c))
        assert Q.equal(result, Q.array(expected))

    @hypothesis_settings(max_examples=40, deadline=None)
    @given(tensors((2, 3, 2), 0, 6), tensors((2, 2), 0, 6), tensors((3, 2, 2), 0, 6))
    def test_matches_einsum_over_f7(self, a, b, c):
        expected = np.einsum("xyz,zw,ywv->xvy", a, b, c) % 7
        result = contract(F7, "xyz,zw,ywv->xvy", F7.array(a), F7.array(b), F7.array(c))
        assert F7.equal(result, F7.array(expected))

    def test_chunked_contraction_agrees(self, mocker):
        """测试超过中间规模阈值时分块计算结果不变"""
        # Arrange
        a = Q.array(np.arange(24).reshape(2, 3, 4).tolist())
        b = Q.array((np.arange(12).reshape(4, 3) - 5).tolist())
        direct = contract(Q, "xyz,zw->xyw", a, b)
        mocker.patch("app.utils.tensor_ops.settings.max_intermediate_entries", 1)

        # Act
        chunked = contract(Q, "xyz,zw->xyw", a, b)

        # Assert
        assert Q.equal(chunked, direct)

    @pytest.mark.parametrize("field", [Q, F7])
    def test_full_contraction_is_zero_dimensional(self, field):
        """测试全部下标都被求和时结果为零维数组"""
        # Arrange
        unit = field.array([1, 0])
        counit = field.array([1, 1])

        # Act
        result = contract(field, "u,u->", unit, counit)

        # Assert
        assert result.shape == ()
        assert field.equal(result, field.array(1))

    def test_oversized_contraction_raises(self, mocker):
        """测试分块到底仍超过上限时报错而不是分配内存"""
        # Arrange
        mocker.patch("app.utils.tensor_ops.settings.max_intermediate_entries", 1)
        mocker.patch("app.utils.tensor_ops.settings.max_contraction_entries", 10)
        x = Q.identity(3)

        # Act & Assert
        with pytest.raises(ComputationTooLarge):
            contract(Q, "ab,cd,ac,bd->a", x, x, x, x)
