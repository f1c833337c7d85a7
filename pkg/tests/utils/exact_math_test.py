"""
FieldSpec / Subspace / Quotient 单元测试
"""
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

from app.core.exceptions import BadParams, NotSurjective, SingularMatrix
from app.utils.exact_math import FieldSpec, Quotient, Subspace

Q = FieldSpec.rationals()
F7 = FieldSpec.prime_field(7)


def matrices(low, high, max_rows=4, max_cols=4):
    """固定列数的整数矩阵"""
    return st.integers(1, max_cols).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(low, high), min_size=cols, max_size=cols),
            min_size=1, max_size=max_rows,
        )
    )


def square_matrices(low, high, n=3):
    return st.lists(st.lists(st.integers(low, high), min_size=n, max_size=n), min_size=n, max_size=n)


class TestFieldSpec:
    """标量域测试"""

    def test_parse_labels(self):
        """测试域标签解析"""
        # Act & Assert
        assert FieldSpec.parse("Q") == Q
        assert FieldSpec.parse("F7") == F7
        assert FieldSpec.parse("Fp:7") == F7

    def test_parse_unknown_label(self):
        """测试未知域标签"""
        with pytest.raises(BadParams):
            FieldSpec.parse("R")

    def test_non_prime_characteristic_rejected(self):
        """测试非素数特征"""
        with pytest.raises(BadParams):
            FieldSpec.prime_field(4)

    def test_rational_scalars_are_canonical(self):
        """测试有理数标量规范化"""
        # Act
        half = Q.scalar("2/4")
        whole = Q.scalar("6/3")

        # Assert
        assert half == Fraction(1, 2)
        assert type(whole) is int and whole == 2
        assert Q.render(half) == "1/2"
        assert Q.to_json_scalar(half) == "1/2"
        assert Q.to_json_scalar(whole) == 2

    def test_prime_field_scalars(self):
        """测试素域标量"""
        # Act & Assert
        assert F7.scalar("1/2") == 4
        assert F7.scalar(-1) == 6
        assert F7.inv(3) == 5
        assert F7.render(10) == "3"

    def test_denominator_vanishing_in_prime_field(self):
        """测试分母在素域中为零"""
        with pytest.raises(BadParams):
            F7.scalar("1/7")

    def test_zero_has_no_inverse(self):
        """测试零不可逆"""
        with pytest.raises(SingularMatrix):
            Q.inv(0)

    def test_matmul_with_fractions(self):
        """测试有理矩阵乘法"""
        # Arrange
        a = Q.array([["1/2", 0], [0, 3]])
        b = Q.array([[2, 0], [0, "1/3"]])

        # Act
        result = Q.matmul(a, b)

        # Assert
        assert Q.equal(result, Q.identity(2))

    def test_matmul_vector(self):
        """测试向量乘矩阵"""
        # Act
        result = F7.matmul(F7.array([1, 2]), F7.array([[3, 4], [5, 6]]))

        # Assert
        assert F7.equal(result, F7.array([13 % 7, 16 % 7]))

    def test_first_difference(self):
        """测试第一个差异位置"""
        # Arrange
        a = Q.array([[1, 2], [3, 4]])
        b = Q.array([[1, 2], [3, 5]])

        # Act & Assert
        assert Q.first_difference(a, b) == (1, 1)
        assert Q.first_difference(a, a) is None

    def test_invert_singular(self):
        """测试奇异矩阵求逆"""
        with pytest.raises(SingularMatrix):
            Q.invert(Q.array([[1, 2], [2, 4]]))

    def test_solve(self):
        """测试线性方程组求解"""
        # Arrange
        a = Q.array([[2, 1], [1, 3]])
        b = Q.array([3, 5])

        # Act
        x = Q.solve(a, b)

        # Assert
        assert Q.equal(Q.matmul(a, x), b)
        assert x[0] == Fraction(4, 5) and x[1] == Fraction(7, 5)

    def test_solve_inconsistent(self):
        """测试无解方程组"""
        with pytest.raises(SingularMatrix):
            Q.solve(Q.array([[1, 1], [1, 1]]), Q.array([1, 2]))

    def test_right_inverse_section(self):
        """测试满射的右逆"""
        # Arrange
        q = Q.array([[1, 1, 0], [0, 1, 1]])

        # Act
        s = Q.solve_right_inverse_section(q)

        # Assert
        assert Q.equal(Q.matmul(q, s), Q.identity(2))

    def test_right_inverse_needs_surjection(self):
        """测试非满射"""
        with pytest.raises(NotSurjective):
            Q.solve_right_inverse_section(Q.array([[1, 1], [2, 2]]))

    def test_neg_of_scalar(self):
        """测试标量取负返回零维数组"""
        assert Q.equal(Q.neg(Fraction(1, 2)), Q.array("-1/2"))
        assert F7.equal(F7.neg(3), F7.array(4))

    def test_kernel_with_free_column_over_rationals(self):
        """测试有主元列也有自由列的有理矩阵"""
        # Act
        kernel = Q.kernel_basis(Q.array([[1, 1], [2, 2]]))

        # Assert
        assert Q.equal(kernel, Q.array([[1, -1]]))

    def test_kernel_with_interleaved_pivots(self):
        """测试主元列与自由列交错时的核"""
        # Arrange
        m = Q.array([[1, 2, 0, 3], [0, 0, 1, 4]])

        # Act
        kernel = Q.kernel_basis(m)

        # Assert
        assert Q.equal(kernel, Q.array([[1, 0, "4/3", "-1/3"], [0, 1, "8/3", "-2/3"]]))
        assert Q.is_zero(Q.matmul(m, kernel.T))


class TestLinearAlgebraProperties:
    """线性代数恒等式的性质测试"""

    @hypothesis_settings(max_examples=60, deadline=None)
    @given(matrices(-5, 5))
    def test_rank_nullity_over_rationals(self, rows):
        """秩 + 零度 = 列数，且核向量被矩阵零化"""
        m = Q.array(rows)
        kernel = Q.kernel_basis(m)
        assert Q.rank(m) + kernel.shape[0] == m.shape[1]
        assert Q.is_zero(Q.matmul(m, kernel.T))

    @hypothesis_settings(max_examples=60, deadline=None)
    @given(matrices(0, 6))
    def test_rank_nullity_over_f7(self, rows):
        m = F7.array(rows)
        kernel = F7.kernel_basis(m)
        assert F7.rank(m) + kernel.shape[0] == m.shape[1]
        assert F7.is_zero(F7.matmul(m, kernel.T))

    @hypothesis_settings(max_examples=60, deadline=None)
    @given(square_matrices(-4, 4))
    def test_inverse_is_two_sided(self, rows):
        """可逆矩阵的逆两侧都给出单位阵"""
        m = Q.array(rows)
        if Q.rank(m) < 3:
            with pytest.raises(SingularMatrix):
                Q.invert(m)
            return
        inverse = Q.invert(m)
        assert Q.equal(Q.matmul(m, inverse), Q.identity(3))
        assert Q.equal(Q.matmul(inverse, m), Q.identity(3))

    @hypothesis_settings(max_examples=40, deadline=None)
    @given(square_matrices(0, 6, 2), square_matrices(0, 6, 2), square_matrices(0, 6, 2))
    def test_kron_is_associative(self, a, b, c):
        a, b, c = F7.array(a), F7.array(b), F7.array(c)
        assert F7.equal(F7.kron(F7.kron(a, b), c), F7.kron(a, F7.kron(b, c)))

    @hypothesis_settings(max_examples=40, deadline=None)
    @given(square_matrices(-3, 3, 2), square_matrices(-3, 3, 2), square_matrices(-3, 3, 2),
           square_matrices(-3, 3, 2))
    def test_kron_mixed_product(self, a, b, c, d):
        """(A⊗B)(C⊗D) = AC⊗BD"""
        a, b, c, d = (Q.array(x) for x in (a, b, c, d))
        lhs = Q.matmul(Q.kron(a, b), Q.kron(c, d))
        rhs = Q.kron(Q.matmul(a, c), Q.matmul(b, d))
        assert Q.equal(lhs, rhs)

    @hypothesis_settings(max_examples=60, deadline=None)
    @given(st.integers(1, 6), st.integers(-20, 20), st.integers(1, 20))
    def test_prime_field_inverse(self, x, numerator, denominator):
        assert F7.scalar(x) * F7.inv(F7.scalar(x)) % 7 == 1
        if denominator % 7:
            value = F7.scalar(f"{numerator}/{denominator}")
            assert value * denominator % 7 == numerator % 7


class TestSubspaceAndQuotient:
    """子空间与商空间测试"""

    def test_subspace_membership(self):
        """测试子空间包含关系"""
        # Arrange
        sub = Subspace.from_rows(Q, Q.array([[1, 1, 0], [2, 2, 0]]), 3)

        # Act & Assert
        assert sub.dim == 1
        assert sub.contains(Q.array([3, 3, 0]))
        assert not sub.contains(Q.array([1, 0, 0]))

    def test_empty_subspace(self):
        """测试零子空间"""
        sub = Subspace.from_rows(Q, Q.zeros((0, 2)), 2)
        assert sub.dim == 0
        assert sub.contains(Q.zeros(2))

    def test_quotient_section_splits_projection(self):
        """测试截面是投影的右逆"""
        # Arrange
        quot = Quotient.by_relations(Q, Q.array([[1, -1, 0]]), 3)

        # Act
        product = Q.matmul(quot.section, quot.projection)

        # Assert
        assert quot.projection.shape == (3, 2)
        assert Q.equal(product, Q.identity(2))
        assert Q.is_zero(Q.matmul(Q.array([[1, -1, 0]]), quot.projection))

    def test_trivial_quotient(self):
        quot = Quotient.by_relations(Q, Q.zeros((0, 2)), 2)
        assert Q.equal(quot.projection, Q.identity(2))

    def test_quotient_by_rational_relation(self):
        """测试有理关系的商：投影取自由列，截面落在主元列"""
        # Act
        quot = Quotient.by_relations(Q, Q.array([[1, 1]]), 2)

        # Assert
        assert Q.equal(quot.projection, Q.array([[-1], [1]]))
        assert Q.equal(quot.section, Q.array([[-1, 0]]))
        assert Q.equal(Q.matmul(quot.section, quot.projection), Q.identity(1))
