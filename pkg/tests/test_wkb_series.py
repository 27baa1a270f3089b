import numpy as np
import pytest
from scipy import integrate

from src.domain.enums import Branch, CycleKind, EnergyMode
from src.domain.exceptions import ConfigError, InvalidPotentialError, MissingDataError, UnsupportedCaseError


def _action(function, a: float, b: float) -> float:
    value, _ = integrate.quad(function, a, b, epsabs=1e-13, epsrel=1e-12, limit=200)
    return 2.0 * value


def test_a_cycle_leading_term_is_the_well_action(potential_core, wkb_series) -> None:
    potential = potential_core.build_potential(1, EnergyMode.FIXED, 1.0)
    symbol = wkb_series.voros_symbol(potential, 1.0, CycleKind.A, max_order=2)
    expected = _action(lambda x: np.sqrt(max(2.0 * (1.0 - 1.0 + np.cos(x)), 0.0)), -np.pi / 2, np.pi / 2)
    leading = symbol.log_value.coefficients[0]
    assert symbol.log_value.nu == -1
    assert abs(leading.real) < 1e-9
    assert abs(leading) == pytest.approx(expected, rel=1e-8)


def test_b_cycle_leading_term_is_minus_the_barrier_action(potential_core, wkb_series) -> None:
    potential = potential_core.build_potential(1, EnergyMode.FIXED, 1.0)
    symbol = wkb_series.voros_symbol(potential, 1.0, CycleKind.B, max_order=2)
    expected = _action(lambda x: np.sqrt(max(-2.0 * np.cos(x), 0.0)), np.pi / 2, 3 * np.pi / 2)
    leading = symbol.log_value.coefficients[0]
    assert leading.real == pytest.approx(-expected, rel=1e-8)
    assert abs(leading.imag) < 1e-9
    assert symbol.wells == (0, 0)


def test_voros_series_has_only_odd_orders(potential_core, wkb_series) -> None:
    potential = potential_core.build_potential(2, EnergyMode.FIXED, 0.8)
    symbol = wkb_series.voros_symbol(potential, 0.8, CycleKind.A, max_order=3)
    coefficients = symbol.log_value.coefficients
    assert len(coefficients) == 5
    assert np.all(coefficients[1::2] == 0)
    assert abs(coefficients[2]) > 0


def test_a_cycles_agree_between_wells(potential_core, wkb_series) -> None:
    potential = potential_core.build_potential(2, EnergyMode.FIXED, 0.6)
    first = wkb_series.voros_symbol(potential, 0.6, CycleKind.A, well=0, max_order=3)
    second = wkb_series.voros_symbol(potential, 0.6, CycleKind.A, well=1, max_order=3)
    assert first.log_value.allclose(second.log_value, rtol=1e-8, atol=1e-10)


def test_numeric_residue_matches_exact_polynomials(wkb_series) -> None:
    for N, energy in ((1, 0.3), (2, 0.45 + 0.1j)):
        potential = wkb_series.rescaled_potential(N)
        numeric = wkb_series.residue_F(potential, energy, 4)
        exact = wkb_series.residue_polynomials(N, 4).at(energy)
        assert numeric.coefficients[0] == pytest.approx(-energy / N, rel=1e-9)
        assert numeric.allclose(exact, rtol=1e-7, atol=1e-10)


def test_residue_needs_rescaled_mode(potential_core, wkb_series) -> None:
    with pytest.raises(InvalidPotentialError):
        wkb_series.residue_F(potential_core.build_potential(1, EnergyMode.FIXED, 0.5), 0.5, 2)


def test_voros_symbols_need_fixed_mode(wkb_series) -> None:
    with pytest.raises(InvalidPotentialError):
        wkb_series.voros_symbol(wkb_series.rescaled_potential(1), 0.5, CycleKind.A)


def test_point_contour_radius_must_stay_local(wkb_series) -> None:
    potential = wkb_series.rescaled_potential(2)
    with pytest.raises(InvalidPotentialError):
        wkb_series.point_contour(potential, radius=np.pi + 0.1)
    with pytest.raises(InvalidPotentialError):
        wkb_series.point_contour(potential, radius=0.0)


def test_riccati_order_cap(wkb_series) -> None:
    potential = wkb_series.rescaled_potential(1)
    contour = wkb_series.point_contour(potential)
    with pytest.raises(ConfigError):
        wkb_series.riccati_orders(potential, 0.5, contour, 11)


def test_local_map_needs_a_branch(wkb_series) -> None:
    with pytest.raises(MissingDataError):
        wkb_series.local_map_coefficients(wkb_series.rescaled_potential(1), 3, None)


def test_local_map_leading_coefficient(wkb_series) -> None:
    local = wkb_series.local_map_coefficients(wkb_series.rescaled_potential(2), 3, Branch.PLUS)
    # sqrt(32/N) sin(N x / 4) ~ sqrt(32/N) (N/4) x
    assert complex(local.y0[1]) == pytest.approx(np.sqrt(16.0) / 2.0)
    assert complex(local.y0[0]) == 0


def test_normalization_constants_are_reciprocal(wkb_series) -> None:
    potential = wkb_series.rescaled_potential(1)
    c_plus, c_minus = wkb_series.normalization_constants(potential, 0.7, Branch.MINUS)
    assert c_plus * c_minus == pytest.approx(1.0)
    with pytest.raises(UnsupportedCaseError):
        wkb_series.normalization_constants(potential, 0.7, order=1)
