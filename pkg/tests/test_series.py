import math
from fractions import Fraction as F

import pytest

from ellformal import (
    BiSeries,
    CompositionDomainError,
    LaurentSeries,
    NonUnitDivisorError,
    OrderMismatchError,
    ReversionDomainError,
    UniSeries,
    bi_substitute,
    divided_difference,
)
from conftest import random_rational, random_unit_series


class TestRingOps:
    def test_monomial_product(self):
        t = UniSeries.identity(4)
        assert t * t == UniSeries(4, (0, 0, 1))

    def test_difference_of_squares(self):
        one = UniSeries.one(4)
        t = UniSeries.identity(4)
        assert (one + t) * (one - t) == UniSeries(4, (1, 0, -1))

    def test_geometric_square(self):
        # (sum T^k)^2 has coefficient k+1 at T^k
        s = UniSeries(3, (1, 1, 1, 1))
        assert s * s == UniSeries(3, (1, 2, 3, 4))

    def test_order_mismatch_rejected(self):
        with pytest.raises(OrderMismatchError):
            UniSeries.one(3) + UniSeries.one(4)
        with pytest.raises(OrderMismatchError):
            UniSeries.one(3) * UniSeries.one(4)

    def test_scalar_multiply(self):
        t = UniSeries.identity(3)
        assert 2 * t == UniSeries(3, (0, 2))
        assert t * F(1, 2) == UniSeries(3, (0, F(1, 2)))

    def test_truncation_window_is_strict(self):
        s = UniSeries(2, (1, 2, 3))
        with pytest.raises(IndexError):
            s[3]
        with pytest.raises(ValueError):
            UniSeries(1, (1, 2, 3))

    def test_immutability(self):
        s = UniSeries(2, (1, 2, 3))
        with pytest.raises(AttributeError):
            s.order = 5


class TestDivision:
    def test_geometric_series(self):
        assert UniSeries.one(3) / UniSeries(3, (1, -1)) == UniSeries(3, (1, 1, 1, 1))

    def test_one_plus_t_over_one_plus_t_squared(self):
        q = UniSeries(4, (1, 1)) / UniSeries(4, (1, 0, 1))
        assert q == UniSeries(4, (1, 1, -1, -1, 1))

    def test_non_unit_divisor_rejected(self):
        with pytest.raises(NonUnitDivisorError):
            UniSeries.one(3) / UniSeries.identity(3)

    def test_mul_div_roundtrip_randomized(self, rng):
        for _ in range(25):
            n = rng.randint(1, 12)
            a = UniSeries(n, [random_rational(rng) for _ in range(n + 1)])
            b = UniSeries(n, [random_rational(rng) for _ in range(n + 1)])
            if b.coeffs[0] == 0:
                continue
            assert (a * b) / b == a


class TestCompose:
    def test_square_of_inner(self):
        outer = UniSeries(4, (0, 0, 1))
        inner = UniSeries(4, (0, 1, 1))
        assert outer.compose(inner) == UniSeries(4, (0, 0, 1, 2, 1))

    def test_identity_inner(self):
        f = UniSeries(5, (3, 1, 4, 1, 5, 9))
        assert f.compose(UniSeries.identity(5)) == f

    def test_geometric_composed_with_square(self):
        geo = UniSeries.one(6) / UniSeries(6, (1, -1))
        assert geo.compose(UniSeries.monomial(6, 2)) == UniSeries(
            6, (1, 0, 1, 0, 1, 0, 1)
        )

    def test_nonzero_constant_inner_rejected(self):
        with pytest.raises(CompositionDomainError):
            UniSeries.identity(3).compose(UniSeries.one(3))


class TestReverse:
    def test_identity(self):
        assert UniSeries.identity(5).reverse() == UniSeries.identity(5)

    def test_t_plus_t_squared(self):
        # inverse coefficients are signed Catalan numbers 1, -1, 2, -5
        assert UniSeries(4, (0, 1, 1)).reverse() == UniSeries(4, (0, 1, -1, 2, -5))

    def test_exp_minus_one_reverts_to_log(self):
        f = UniSeries(6, [0] + [F(1, math.factorial(k)) for k in range(1, 7)])
        expected = UniSeries(6, [0] + [F((-1) ** (k - 1), k) for k in range(1, 7)])
        assert f.reverse() == expected

    def test_domain_errors(self):
        with pytest.raises(ReversionDomainError):
            UniSeries(3, (1, 1)).reverse()
        with pytest.raises(ReversionDomainError):
            UniSeries(3, (0, 2)).reverse()

    def test_roundtrip_randomized(self, rng):
        for _ in range(15):
            n = rng.randint(2, 14)
            f = random_unit_series(rng, n)
            g = f.reverse()
            t = UniSeries.identity(n)
            assert f.compose(g) == t
            assert g.compose(f) == t
            assert g.reverse() == f

    def test_odd_fast_path_matches_general(self, rng):
        for _ in range(8):
            n = 2 * rng.randint(1, 6) + 1  # odd, so n + 1 below is an even index
            coeffs = [F(0)] * (n + 1)
            coeffs[1] = F(1)
            for k in range(3, n + 1, 2):
                coeffs[k] = random_rational(rng)
            odd = UniSeries(n, coeffs)
            # the twin's nonzero even-index tail coefficient forces the
            # general path; reversion through T^n only sees coeffs up to T^n
            padded = UniSeries(n + 1, list(coeffs) + [F(1)])
            got = odd.reverse()
            assert got == padded.reverse().truncate(n)
            assert all(got.coeffs[k] == 0 for k in range(0, n + 1, 2))

    def test_determinism(self, rng):
        f = random_unit_series(rng, 10)
        assert f.reverse() == f.reverse()


class TestDifferentiate:
    def test_cube(self):
        assert UniSeries.monomial(4, 3).differentiate() == UniSeries(3, (0, 0, 3))

    def test_laurent_pole(self):
        d = LaurentSeries(-2, UniSeries(4, (1,))).differentiate()
        assert d.valuation == -3
        assert d.coefficient(-3) == -2

    def test_log_derivative(self):
        f = UniSeries(5, [0] + [F(1, k) for k in range(1, 6)])
        assert f.differentiate() == UniSeries(4, (1, 1, 1, 1, 1))

    def test_order_zero(self):
        assert UniSeries(0, (7,)).differentiate() == UniSeries(0)


class TestLaurent:
    def test_normalization_strips_leading_zeros(self):
        s = LaurentSeries(-3, UniSeries(4, (0, 0, 5, 6, 7)))
        assert s.valuation == -1
        assert s.body.coeffs == (F(5), F(6), F(7))
        assert s.top_exponent == 1

    def test_zero_normalizes_to_zero_valuation(self):
        s = LaurentSeries(-4, UniSeries(3))
        assert s.is_zero() and s.valuation == 0

    def test_coefficient_window(self):
        s = LaurentSeries(-2, UniSeries(3, (1, 0, 2)))
        assert s.coefficient(-5) == 0
        assert s.coefficient(-2) == 1
        assert s.coefficient(0) == 2
        with pytest.raises(IndexError):
            s.coefficient(2)


class TestBiSeries:
    def test_triangular_storage(self):
        b = BiSeries(3, ((1,),))
        assert b.get(0, 0) == 1
        with pytest.raises(IndexError):
            b.get(2, 2)

    def test_mul_truncates_total_degree(self):
        t1 = BiSeries.variable(2, 1)
        t2 = BiSeries.variable(2, 2)
        p = (t1 + t2) * (t1 + t2)
        assert p.get(2, 0) == 1 and p.get(1, 1) == 2 and p.get(0, 2) == 1

    def test_reciprocal(self, rng):
        for _ in range(8):
            n = rng.randint(1, 8)
            rows = [
                [random_rational(rng) for _ in range(n - i + 1)] for i in range(n + 1)
            ]
            rows[0][0] = random_rational(rng) or F(1)
            d = BiSeries(n, rows)
            assert d * d.reciprocal() == BiSeries.constant(n, 1)

    def test_reciprocal_needs_unit(self):
        with pytest.raises(NonUnitDivisorError):
            BiSeries.variable(3, 1).reciprocal()

    def test_swap_and_slice(self):
        b = BiSeries(2, ((0, 1, 2), (3, 4), (5,)))
        sw = b.swap()
        assert sw.get(1, 0) == 1 and sw.get(0, 1) == 3 and sw.get(2, 0) == 2
        assert b.at_t2_zero() == UniSeries(2, (0, 3, 5))


class TestDividedDifference:
    def test_square(self):
        d = divided_difference(UniSeries.monomial(3, 2))
        assert d.order == 2
        assert d.get(1, 0) == 1 and d.get(0, 1) == 1
        assert d.get(0, 0) == 0 and d.get(2, 0) == 0

    def test_cube(self):
        d = divided_difference(UniSeries.monomial(4, 3))
        assert all(d.get(i, 2 - i) == 1 for i in range(3))

    def test_cube_plus_seventh(self):
        d = divided_difference(UniSeries(8, (0, 0, 0, 1, 0, 0, 0, 1)))
        for i in range(7):
            assert d.get(i, 6 - i) == 1
        for i in range(3):
            assert d.get(i, 2 - i) == 1
        assert d.get(3, 1) == 0

    def test_t2_zero_slice_matches_difference_quotient(self, rng):
        for _ in range(10):
            n = rng.randint(1, 10)
            f = UniSeries(n, [random_rational(rng) for _ in range(n + 1)])
            d = divided_difference(f)
            # (f(t1) - f(0)) / t1 read coefficient-wise
            for i in range(d.order + 1):
                assert d.get(i, 0) == f.coeffs[i + 1]

    def test_symmetry(self, rng):
        f = UniSeries(9, [random_rational(rng) for _ in range(10)])
        d = divided_difference(f)
        assert d == d.swap()


class TestBiSubstitute:
    def test_linear(self):
        lin = BiSeries.variable(3, 1) + BiSeries.variable(3, 2)
        assert bi_substitute(UniSeries.identity(3), lin) == lin

    def test_square_binomial(self):
        lin = BiSeries.variable(3, 1) + BiSeries.variable(3, 2)
        sq = bi_substitute(UniSeries.monomial(3, 2), lin)
        assert sq.get(2, 0) == 1 and sq.get(1, 1) == 2 and sq.get(0, 2) == 1

    def test_cubic_multinomial(self):
        lin = BiSeries.variable(3, 1) + BiSeries.variable(3, 2)
        got = bi_substitute(UniSeries(3, (0, 1, 0, 1)), lin)
        expected = lin + lin * lin * lin
        assert got == expected

    def test_rejects_nonzero_constant(self):
        with pytest.raises(CompositionDomainError):
            bi_substitute(UniSeries.identity(2), BiSeries.constant(2, 1))
