import math
from fractions import Fraction

import pytest

from src.domain.models.series import HbarSeries, ResidueSeries


def test_binary_operations_truncate_to_shorter_operand() -> None:
    long = HbarSeries([1, 2, 3, 4])
    short = HbarSeries([1, 1])
    assert (long + short).order == 1
    assert (long * short).order == 1
    assert (long * short).to_list() == [1, 3]


def test_prefactors_add_under_multiplication() -> None:
    a = HbarSeries([1, 1], Fraction(-1))
    b = HbarSeries([2, 0], Fraction(1))
    product = a * b
    assert product.nu == 0
    assert product.coefficient(0) == 2
    assert product.coefficient(1) == 2


def test_coefficient_below_range_is_zero_and_above_raises() -> None:
    series = HbarSeries([1, 2], Fraction(1))
    assert series.coefficient(0) == 0
    assert series.coefficient(2) == 2
    with pytest.raises(IndexError):
        series.coefficient(3)


def test_exp_and_log_are_inverse() -> None:
    x = HbarSeries([0.0, 0.3, -0.1, 0.05, 0.02])
    assert x.exp().log().allclose(x, atol=1e-12)


def test_inverse_of_geometric_series() -> None:
    geometric = HbarSeries([1.0] * 6)
    assert (geometric.inverse()).allclose(HbarSeries([1, -1, 0, 0, 0, 0]), atol=1e-14)


def test_integer_power_and_rescale() -> None:
    x = HbarSeries([1, 1, 0, 0])
    assert (x**3).allclose(HbarSeries([1, 3, 3, 1]))
    assert x.rescale(2.0).allclose(HbarSeries([1, 2, 0, 0]))
    with pytest.raises(TypeError):
        x ** 0.5


def test_evaluation_includes_prefactor() -> None:
    series = HbarSeries([1.0, 2.0], Fraction(-1))
    assert series(0.5) == pytest.approx((1.0 + 2.0 * 0.5) / 0.5)


def test_smallest_term_of_factorial_series() -> None:
    series = HbarSeries([float(math.factorial(k)) for k in range(20)])
    assert series.smallest_term_order(0.2) in (4, 5)


def test_real_detection() -> None:
    assert HbarSeries([1.0, -2.5]).is_real
    assert not HbarSeries([1.0, 1j]).is_real


def test_residue_series_evaluates_polynomials() -> None:
    residue = ResidueSeries(1, ((Fraction(0), Fraction(-1)), (Fraction(-1, 64), Fraction(0), Fraction(-1, 16))))
    assert residue.max_order == 1
    assert list(residue.coefficient_values(0.5)) == pytest.approx([-0.5, -1 / 32])
    assert residue(0.5, 0.1) == pytest.approx(-0.5 - 0.1 / 32)
    assert residue.truncated(0).max_order == 0
    with pytest.raises(ValueError):
        residue.truncated(3)
