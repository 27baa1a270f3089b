import cmath
import math

import pytest

from src.domain.enums import Side
from src.domain.exceptions import ConfigError, UnsupportedCaseError
from src.domain.models.algebra import CycleSymbolExpr


def test_stokes_automorphism_acts_on_a_only(algebra) -> None:
    s, t = CycleSymbolExpr.symbol("s"), CycleSymbolExpr.symbol("t")
    assert algebra.stokes_automorphism(s**2) == s**2 * (1 + t**2) ** 2
    assert algebra.stokes_automorphism(t) == t
    assert algebra.stokes_automorphism(CycleSymbolExpr.symbol("c")) == CycleSymbolExpr.symbol("c")


@pytest.mark.parametrize("N", range(1, 9))
def test_ddp_holds_for_every_sector(algebra, N: int) -> None:
    report = algebra.ddp_check(N)
    assert report.holds, report.witness
    assert all(report.details[f"p={p}"] for p in range(N))
    assert report.summary == f"PASS {report.total}/{report.total} sectors"


def test_ddp_rejects_out_of_range_n(algebra) -> None:
    with pytest.raises(ConfigError):
        algebra.ddp_check(0)
    with pytest.raises(UnsupportedCaseError):
        algebra.ddp_check(9)


def test_single_well_condition_maps_to_lower_side(algebra) -> None:
    upper = algebra.single_well_condition(+1)
    lower = algebra.single_well_condition(-1)
    assert algebra.stokes_automorphism(upper) == lower
    assert not upper == lower


@pytest.mark.parametrize("N", [1, 2, 3, 4, 6])
def test_factorization_generic_theta(algebra, N: int) -> None:
    report = algebra.factorization_check(N, spot_checks=20, seed=3)
    assert report.holds, report.witness
    assert report.details["radical_eliminated"]
    assert report.details["spot_residual"] < 1e-10


def test_factorization_at_theta_pi_pairs_factors(algebra) -> None:
    report = algebra.factorization_check(2, side=Side.LOWER, theta_pi=1)
    assert report.holds
    assert report.details["pairs"] == [(0, 1)]
    assert report.details["singlets"] == []
    assert report.details["perfect_square"]


def test_factorization_at_theta_zero_even_n(algebra) -> None:
    report = algebra.factorization_check(4, theta_pi=0)
    assert report.holds
    assert report.details["pairs"] == [(1, 3)]
    assert report.details["singlets"] == [0, 2]
    assert "perfect_square" not in report.details


def test_gutzwiller_split_is_exact(algebra) -> None:
    for side in (Side.UPPER, Side.LOWER):
        series = algebra.gutzwiller_expansion(side, n_max=3, m_max=2)
        assert series.identity_holds
        assert len(series.orbits) == 8
        assert series.orbits[0] == ("B A^0", 1)


def test_sector_index_validation(algebra) -> None:
    with pytest.raises(ConfigError):
        algebra.sector_coefficient(0, 0, 0, 2, Side.UPPER)
    with pytest.raises(ConfigError):
        algebra.sector_coefficient(2, 1, 0, 2, Side.UPPER)
    with pytest.raises(ConfigError):
        algebra.sector_coefficient(0, 1, 0, 2, Side.MEDIAN)


def test_sector_coefficients_reproduce_log_expansion(algebra) -> None:
    for side in (Side.UPPER, Side.LOWER):
        report = algebra.sector_expansion_check(order=6, side=side)
        assert report.holds, report.witness


def test_sector_sum_matches_closed_bracket(algebra) -> None:
    A, B, theta, N = 0.3 + 0.05j, 0.01, 0.4, 2
    for p in range(N):
        total = 0j
        for degree in range(1, 31):
            for Q in range(-degree, degree + 1):
                if (degree - abs(Q)) % 2 == 0:
                    total += algebra.sector_value(p, Q, (degree - abs(Q)) // 2, N, Side.UPPER, A, B, theta)
        assert total == pytest.approx(algebra.sector_bracket(p, N, Side.UPPER, A, B, theta), rel=1e-10, abs=1e-14)


def test_symbolic_and_numeric_sectors_agree(algebra) -> None:
    A, B, theta, N, p, Q, K = 0.7, 0.02, 0.3, 3, 1, 2, 1
    symbolic = algebra.sector_coefficient(p, Q, K, N, Side.UPPER)
    z = cmath.exp(1j * math.pi / N)
    value = algebra.numeric(symbolic)(cmath.sqrt(A), cmath.sqrt(B), 0.0, 1.0, z, 0.0, 0.0)
    expected = algebra.sector_value(p, Q, K, N, Side.UPPER, A, B, theta) / cmath.exp(1j * theta * Q / N)
    assert value == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_grand_expansion_keeps_only_multiples_of_n(algebra, N: int) -> None:
    report = algebra.grand_expansion_check(N, order=6)
    assert report.holds, report.witness
    assert all(Q % N == 0 for Q in report.details["surviving"])
    assert all(Q % N != 0 for Q in report.details["killed"])


def test_grand_expansion_order_range(algebra) -> None:
    with pytest.raises(ConfigError):
        algebra.grand_expansion_check(2, order=9)


@pytest.mark.parametrize("N,p,Q", [(1, 0, 1), (2, 1, -2), (3, 2, 1)])
def test_triangle_closes_for_nonzero_charge(algebra, N: int, p: int, Q: int) -> None:
    report = algebra.triangle_closure(N, p, Q, order=5)
    assert report.details["sector_closed"], report.witness
    assert report.details["holomorphic_remainder"] is None


def test_triangle_zero_charge_leaves_holomorphic_remainder(algebra) -> None:
    report = algebra.triangle_closure(2, 0, 0, order=4)
    assert report.details["sector_closed"], report.witness
    assert report.details["holomorphic_remainder"] is not None


def test_triangle_rejects_charge_beyond_order(algebra) -> None:
    with pytest.raises(ConfigError):
        algebra.triangle_closure(2, 0, 5, order=4)


@pytest.mark.parametrize("N,K", [(3, 1), (5, 2)])
def test_odd_n_at_theta_pi_leaves_the_middle_sector_alone(algebra, N: int, K: int) -> None:
    report = algebra.factorization_check(N, theta_pi=1)
    assert report.holds, report.witness
    assert report.details["singlets"] == [K]
    assert report.details["pairs"] == [(p, N - 1 - p) for p in range(K)]


@pytest.mark.slow
@pytest.mark.parametrize("N", [7, 8])
def test_factorization_of_large_n(algebra, N: int) -> None:
    report = algebra.factorization_check(N, spot_checks=100, seed=5)
    assert report.holds, report.witness
    assert report.details["spot_residual"] < 1e-10


def test_numeric_evaluation_of_field_elements(algebra) -> None:
    s, t = CycleSymbolExpr.symbol("s"), CycleSymbolExpr.symbol("t")
    value = algebra.numeric((s**2 + 1) / (2 * t))(1j, 0.5, 0.0, 1.0, 1.0, 0.0, 0.0)
    assert value == pytest.approx(0.0)
    assert algebra.numeric(s / t)(3.0, 2.0, 0.0, 1.0, 1.0, 0.0, 0.0) == pytest.approx(1.5)


@pytest.mark.slow
def test_grand_expansion_to_highest_order(algebra) -> None:
    report = algebra.grand_expansion_check(2, order=8)
    assert report.holds, report.witness
    assert report.details["order"] == 8


def test_single_terms_are_not_invariant_on_their_own(algebra) -> None:
    report = algebra.triangle_closure(1, 0, 2, order=8)
    assert report.details["sector_closed"], report.witness
    assert report.details["single_terms_invariant"]
    assert not any(report.details["single_terms_invariant"].values())
