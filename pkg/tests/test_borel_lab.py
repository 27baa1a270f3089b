import math
from fractions import Fraction

import mpmath
import pytest

from src.application.services.borel_lab import BorelLab
from src.domain.exceptions import ConfigError, InsufficientOrderError
from src.domain.models.borel import BorelSummable
from src.domain.models.series import HbarSeries


def _series(coefficient, count: int = 24) -> HbarSeries:
    return HbarSeries([coefficient(k) for k in range(count)])


def _pole_plus_cut(k: int) -> float:
    # B(zeta) = 1/(1 - zeta) + log(1 + zeta)/zeta
    return math.factorial(k) * (1.0 + (-1) ** k / (k + 1))


def test_ground_state_series_matches_mathieu_asymptotics(borel_lab) -> None:
    series = borel_lab.perturbative_energy_series(1, 0, 3)
    assert series.nu == 1
    assert series.coefficients.real[:3] == pytest.approx([0.5, -1 / 32, -1 / 512])


def test_first_excited_and_larger_n(borel_lab) -> None:
    excited = borel_lab.perturbative_energy_series(1, 1, 2)
    assert excited.coefficients.real == pytest.approx([1.5, -5 / 32, -9 / 512])
    two_wells = borel_lab.perturbative_energy_series(2, 0, 1)
    assert two_wells.coefficients.real == pytest.approx([1.0, -1 / 8])


def test_series_needs_enough_residue_orders(borel_lab, wkb_series) -> None:
    short = wkb_series.residue_polynomials(1, 3)
    with pytest.raises(InsufficientOrderError):
        borel_lab.perturbative_energy_series(1, 0, 6, residue=short)
    with pytest.raises(ConfigError):
        borel_lab.perturbative_energy_series(1, -1, 6)


def test_borel_transform_round_trip() -> None:
    series = HbarSeries([math.factorial(k) * 0.3**k for k in range(15)], Fraction(1))
    borel = BorelSummable.from_series(series)
    assert borel.pade_degree == (7, 7)
    assert borel.nu == 1
    assert borel.inverse().allclose(series, rtol=1e-14)


def test_pade_degrees_must_fit_the_coefficients() -> None:
    with pytest.raises(ValueError):
        BorelSummable.from_series(_series(lambda k: 1.0, 10), pade_degree=(6, 6))


def test_convergent_series_is_summed_on_any_ray(borel_lab) -> None:
    series = _series(lambda k: 1.0 / math.factorial(k))
    for angle in (0.0, 0.4, -0.7):
        result = borel_lab.borel_pade_sum(series, 0.5, ray_angle=angle)
        assert result.value == pytest.approx(math.exp(0.5), rel=1e-9)
        assert not result.principal_value


def test_convergent_series_has_no_discontinuity(borel_lab) -> None:
    result = borel_lab.lateral_discontinuity(_series(lambda k: 1.0 / math.factorial(k)), 0.5)
    assert abs(result.discontinuity) < 1e-12
    assert result.residue_estimate == 0.0
    assert result.predicted is None


def test_euler_series_sum(borel_lab) -> None:
    series = _series(lambda k: (-1) ** k * math.factorial(k))
    result = borel_lab.borel_pade_sum(series, 0.1)
    with mpmath.workdps(30):
        expected = float(10 * mpmath.exp(10) * mpmath.e1(10))
    assert result.value.real == pytest.approx(expected, rel=1e-10)
    assert abs(result.value.imag) < 1e-14
    # B = 1/(1 + zeta): tout denominateur de degre >= 2 est singulier
    assert result.pade_degree == (22, 1)


def test_log_borel_transform_sum(borel_lab) -> None:
    series = _series(lambda k: (-1) ** k * math.factorial(k) / (k + 1))
    hbar = 0.2
    result = borel_lab.borel_pade_sum(series, hbar)
    with mpmath.workdps(30):
        expected = mpmath.quad(lambda u: mpmath.exp(-u) * mpmath.log(1 + hbar * u) / (hbar * u), [0, 10, mpmath.inf])
    assert result.value.real == pytest.approx(float(expected), rel=1e-8)


def test_lateral_sums_of_real_series_are_conjugate(borel_lab) -> None:
    series = _series(_pole_plus_cut)
    upper = borel_lab.borel_pade_sum(series, 0.2, ray_angle=0.2)
    lower = borel_lab.borel_pade_sum(series, 0.2, ray_angle=-0.2)
    assert upper.value == pytest.approx(lower.value.conjugate(), rel=1e-10)


def test_pole_on_the_ray_uses_principal_value(borel_lab) -> None:
    result = borel_lab.borel_pade_sum(_series(_pole_plus_cut), 0.2, ray_angle=0.0)
    assert result.principal_value
    assert any(abs(z - 1) < 1e-6 for z in result.poles_on_ray)
    assert abs(result.value.imag) < 1e-10


def test_discontinuity_of_a_simple_pole(borel_lab) -> None:
    hbar = 0.2
    result = borel_lab.lateral_discontinuity(_series(_pole_plus_cut), hbar, ray_angle=0.1)
    expected = math.pi * math.exp(-1 / hbar) / hbar
    assert result.discontinuity == pytest.approx(expected, rel=1e-6)
    assert result.residue_estimate == pytest.approx(expected, rel=1e-6)
    assert not result.upper_bound


def test_discontinuity_sweep_keeps_grid_order(borel_lab) -> None:
    results = borel_lab.discontinuity_sweep(_series(_pole_plus_cut), [0.25, 0.15, 0.2], ray_angle=0.1)
    assert [r.hbar for r in results] == [0.25, 0.15, 0.2]
    values = [r.discontinuity for r in results]
    assert values[1] < values[2] < values[0]


def test_invalid_summation_requests(borel_lab) -> None:
    with pytest.raises(InsufficientOrderError):
        borel_lab.borel_pade_sum(_series(lambda k: 1.0, 6), 0.5)
    with pytest.raises(ConfigError):
        borel_lab.borel_pade_sum(_series(lambda k: 1.0 / math.factorial(k)), 0.5, ray_angle=math.pi / 2)
    with pytest.raises(ConfigError):
        borel_lab.lateral_discontinuity(_series(lambda k: 1j / math.factorial(k)), 0.5)


def test_alternating_factorial_singularity(borel_lab) -> None:
    singularities = borel_lab.borel_singularities(_series(lambda k: (-1) ** k * math.factorial(k)))
    assert any(abs(z + 1) < 1e-3 for z, _ in singularities.clusters)
    assert singularities.leading_action is None
    assert not singularities.conclusive


def test_singularities_need_enough_coefficients(borel_lab) -> None:
    with pytest.raises(InsufficientOrderError):
        borel_lab.borel_singularities(_series(lambda k: 1.0, 12))


def test_coefficient_ratios_of_pure_factorial_growth() -> None:
    action = 16.0
    series = _series(lambda k: math.factorial(k) / action**k, 20)
    ratios = BorelLab.coefficient_ratios(series, action)
    assert ratios.ratios == pytest.approx([1.0] * 18)
    assert ratios.trend_ok
    assert not BorelLab.coefficient_ratios(series, 8.0).trend_ok


@pytest.mark.slow
@pytest.mark.parametrize("N", [1, 2])
def test_leading_borel_singularity_sits_at_bion_action(borel_lab, N: int) -> None:
    series = borel_lab.perturbative_energy_series(N, 0, 24)
    singularities = borel_lab.borel_singularities(series)
    assert singularities.conclusive
    assert singularities.leading_action == pytest.approx(16.0 / N, rel=0.05)


def test_singular_pade_systems_lower_the_denominator_degree(borel_lab) -> None:
    series = _series(lambda k: (-1) ** k * math.factorial(k))
    assert borel_lab.borel_pade_sum(series, 0.1, pade_degree=(4, 6)).pade_degree == (9, 1)
    exact = HbarSeries(series.coefficients, Fraction(0), tuple(Fraction((-1) ** k * math.factorial(k)) for k in range(24)))
    result = borel_lab.borel_pade_sum(exact, 0.1)
    assert result.pade_degree == (22, 1)
    assert result.value == pytest.approx(borel_lab.borel_pade_sum(series, 0.1).value, rel=1e-12)


def test_perturbative_series_keeps_exact_coefficients(borel_lab) -> None:
    series = borel_lab.perturbative_energy_series(1, 0, 6)
    assert series.exact[:3] == (Fraction(1, 2), Fraction(-1, 32), Fraction(-1, 512))
    assert series.truncate(3).exact == series.exact[:4]
    borel = BorelSummable.from_series(series)
    assert borel.exact_coefficients[2] == Fraction(-1, 1024)
    assert borel.with_degree((3, 3)).exact_coefficients == borel.exact_coefficients


def test_exact_coefficients_must_match_the_series() -> None:
    with pytest.raises(ValueError):
        HbarSeries([1.0, 2.0], Fraction(0), (Fraction(1),))


@pytest.mark.slow
def test_discontinuity_of_the_ground_state_matches_the_bion_term(borel_lab) -> None:
    series = borel_lab.perturbative_energy_series(1, 0, 24)
    coarse = borel_lab.lateral_discontinuity(series, 0.3, N=1)
    fine = borel_lab.lateral_discontinuity(series, 0.2, N=1)
    assert 0.8 <= coarse.ratio <= 1.2
    assert coarse.cancels
    assert not coarse.upper_bound
    assert not fine.upper_bound
    assert abs(fine.ratio - 1) < abs(coarse.ratio - 1)
