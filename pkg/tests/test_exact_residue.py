from fractions import Fraction

import pytest


def test_leading_residue_is_linear_in_energy(exact_residue) -> None:
    for N in (1, 2, 5):
        residue = exact_residue.residue_polynomials(N, 0)
        assert residue.polynomials[0] == (Fraction(0), Fraction(-1, N))


def test_first_correction_closed_form(exact_residue) -> None:
    for N in (1, 3):
        F1 = exact_residue.residue_polynomials(N, 1).polynomials[1]
        # -(N/16)(E^2/N^2 + 1/4)
        assert F1 == (Fraction(-N, 64), Fraction(0), Fraction(-1, 16 * N))


def test_residue_scales_with_n(exact_residue) -> None:
    unit = exact_residue.residue_polynomials(1, 5)
    scaled = exact_residue.residue_polynomials(3, 5)
    for energy in (0.2, 1.7, -0.9):
        for k in range(6):
            expected = 3**k * unit.coefficient_values(energy / 3)[k]
            assert scaled.coefficient_values(energy)[k] == pytest.approx(expected, rel=1e-12, abs=1e-15)


def test_residue_parity_in_energy(exact_residue) -> None:
    residue = exact_residue.residue_polynomials(1, 8)
    for k, poly in enumerate(residue.polynomials):
        for degree, coefficient in enumerate(poly):
            if coefficient:
                assert (degree + k) % 2 == 1


def test_invalid_arguments(exact_residue) -> None:
    with pytest.raises(ValueError):
        exact_residue.residue_polynomials(0, 3)
    with pytest.raises(ValueError):
        exact_residue.residue_polynomials(1, -1)
