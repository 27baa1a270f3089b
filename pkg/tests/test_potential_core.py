import numpy as np
import pytest

from src.domain.enums import EnergyMode
from src.domain.exceptions import InvalidPotentialError
from src.domain.models.potential import PotentialSpec


def test_potential_rejects_non_positive_n(potential_core) -> None:
    with pytest.raises(InvalidPotentialError):
        potential_core.build_potential(0, EnergyMode.FIXED, 1.0)


def test_rescaled_symbol_splits_into_orders() -> None:
    potential = PotentialSpec(2, EnergyMode.RESCALED, 0.75)
    x = np.array([0.3, 1.1 + 0.2j])
    assert np.allclose(potential.q0(x), 2 * (1 - np.cos(2 * x)))
    assert np.allclose(potential.q1(x), -1.5)
    assert np.allclose(potential.Q(x, 0.1), potential.q0(x) + 0.1 * potential.q1(x))


@pytest.mark.parametrize("N", [1, 2, 3, 5])
def test_fixed_energy_inside_well_gives_two_simple_points_per_period(potential_core, N: int) -> None:
    potential = potential_core.build_potential(N, EnergyMode.FIXED, 1.0)
    points = potential_core.turning_points(potential)
    assert len(points) == 2 * N
    assert all(p.multiplicity == 1 for p in points)
    for p in points:
        assert abs(potential.Q(p.location)) < 1e-12
        assert abs(p.location.imag) < 1e-12


def test_energy_above_barrier_moves_points_off_axis(potential_core) -> None:
    potential = potential_core.build_potential(1, EnergyMode.FIXED, 2.5)
    points = potential_core.turning_points(potential)
    assert len(points) == 2
    assert all(abs(p.location.imag) > 0.1 for p in points)
    assert points[0].location == pytest.approx(np.conj(points[1].location), abs=1e-12)


def test_degenerate_energy_merges_points_at_minima(potential_core) -> None:
    potential = potential_core.build_potential(3, EnergyMode.FIXED, 0.0)
    assert potential.is_degenerate
    points = potential_core.turning_points(potential)
    assert [p.multiplicity for p in points] == [2, 2, 2]
    assert [p.location.real for p in points] == pytest.approx([0.0, 2 * np.pi / 3, 4 * np.pi / 3], abs=1e-9)


def test_rescaled_points_collapse_as_hbar_vanishes(potential_core) -> None:
    potential = potential_core.build_potential(1, EnergyMode.RESCALED, 0.5)
    far = potential_core.turning_points(potential, window=(-np.pi, np.pi), hbar=1e-2)
    near = potential_core.turning_points(potential, window=(-np.pi, np.pi), hbar=1e-6)
    assert max(abs(p.location) for p in near) < max(abs(p.location) for p in far)
    assert max(abs(p.location) for p in near) < 1e-2


def test_turning_points_reject_empty_or_huge_window(potential_core) -> None:
    potential = potential_core.build_potential(1, EnergyMode.FIXED, 1.0)
    with pytest.raises(InvalidPotentialError):
        potential_core.turning_points(potential, window=(1.0, 1.0))
    with pytest.raises(InvalidPotentialError):
        potential_core.turning_points(potential, window=(0.0, 40 * np.pi))


@pytest.mark.parametrize("N", [1, 2, 4])
def test_classical_data_matches_closed_forms(potential_core, N: int) -> None:
    data = potential_core.classical_data(potential_core.build_potential(N, EnergyMode.RESCALED))
    assert data.bion_action == pytest.approx(16.0 / N)
    assert data.instanton_action == pytest.approx(8.0 / N)
    assert data.quadrature_bion_action == pytest.approx(16.0 / N, rel=1e-10)
    assert data.harmonic_frequency == pytest.approx(N)
    assert len(data.well_minima) == N
