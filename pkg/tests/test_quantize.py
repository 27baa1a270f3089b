import math

import numpy as np
import pytest
import sympy as sp

from src.application.services.quantize import QuantizeService
from src.domain.enums import ConditionKind, Side, TranslateDirection
from src.domain.exceptions import ConfigError, MissingDataError, UnsupportedCaseError
from src.domain.models.oracle import BlochProblem
from src.domain.models.spectral import CycleData


def test_side_pairing_is_validated(wkb_series) -> None:
    with pytest.raises(ConfigError):
        QuantizeService(wkb_series, side_pairing="crossed")


@pytest.mark.parametrize("side", [Side.UPPER, Side.LOWER])
def test_airy_monodromy_is_unimodular(quantize, side: Side) -> None:
    numeric = quantize.airy_monodromy(0.3 + 0.1j, 2.0, side)
    assert numeric.det() == pytest.approx(1.0)
    assert len(numeric.provenance) == 6

    A, B = sp.symbols("A B", positive=True)
    symbolic = quantize.airy_monodromy(A, B, side)
    assert symbolic.is_symbolic
    assert sp.simplify(symbolic.det() - 1) == 0


def test_airy_monodromy_needs_a_lateral_side(quantize) -> None:
    with pytest.raises(ConfigError):
        quantize.airy_monodromy(1.0, 1.0, Side.MEDIAN)


@pytest.mark.parametrize("N", [1, 2, 3, 5])
def test_airy_condition_factorizes_over_bloch_sectors(quantize, N: int) -> None:
    condition = quantize.condition_airy(0.4 + 0.2j, 0.05, theta=0.7, N=N, side=Side.UPPER, hbar=0.3)
    for energy in (0.1, 0.35 + 0.02j):
        assert condition.evaluator(energy) == pytest.approx(condition.factor_product(energy), rel=1e-9, abs=1e-12)
    assert condition.kind is ConditionKind.AIRY
    assert len(condition.factors) == N


def test_dw_condition_rejects_non_positive_hbar(quantize, wkb_series) -> None:
    residue = wkb_series.residue_polynomials(1, 4)
    with pytest.raises(ConfigError):
        quantize.condition_dw(residue, 0.0, 0.0, 1, Side.MEDIAN)


def test_dw_median_factor_is_real_on_the_real_axis(quantize) -> None:
    condition = quantize.default_dw_condition(2, 0.4, 0.5, Side.MEDIAN)
    for energy in (0.3, 0.9, 1.6):
        for factor in condition.factors:
            assert abs(factor(energy).imag) < 1e-12 * max(1.0, abs(factor(energy)))


@pytest.mark.parametrize("N,hbar,theta", [(1, 0.3, 0.0), (1, 0.4, np.pi), (2, 0.2, np.pi / 3)])
def test_dw_ground_states_agree_with_oracle(quantize, oracle, N: int, hbar: float, theta: float) -> None:
    condition = quantize.default_dw_condition(N, hbar, theta, Side.MEDIAN)
    records = quantize.solve_spectrum(condition, bands=1)
    assert sorted(r.p for r in records) == list(range(N))
    problem = BlochProblem(N, hbar, theta)
    for record in records:
        reference = oracle.sector_spectrum(problem, record.p, 1)[0]
        assert record.energy_re == pytest.approx(reference, rel=1e-6)
        assert record.energy_im == 0.0
        assert record.converged


def test_lateral_roots_acquire_conjugate_imaginary_parts(quantize) -> None:
    upper = quantize.solve_spectrum(quantize.default_dw_condition(1, 1.0, 0.0, Side.UPPER), bands=1)[0]
    lower = quantize.solve_spectrum(quantize.default_dw_condition(1, 1.0, 0.0, Side.LOWER), bands=1)[0]
    assert upper.energy_re == pytest.approx(lower.energy_re, rel=1e-8)
    assert upper.energy_im == pytest.approx(-lower.energy_im, rel=1e-3)
    assert 1e-9 < abs(upper.energy_im) < 1e-3


@pytest.mark.parametrize(
    "N,theta,singlets,pairs",
    [
        (2, 0.0, [0, 1], []),
        (2, np.pi, [], [(0, 1)]),
        (3, 0.0, [0], [(1, 2)]),
        (4, 0.0, [0, 2], [(1, 3)]),
    ],
)
def test_bloch_pairing(N: int, theta: float, singlets: list[int], pairs: list[tuple[int, int]]) -> None:
    structure = QuantizeService.bloch_pairing(N, theta)
    assert structure["singlets"] == singlets
    assert structure["pairs"] == pairs


def test_bloch_pairing_generic_theta_has_no_pairs() -> None:
    assert QuantizeService.bloch_pairing(3, 0.37)["pairs"] == []


def test_splitting_estimate_structure(quantize) -> None:
    median = quantize.splitting_estimate(1, 0.5, 0.0, 0, Side.MEDIAN)
    upper = quantize.splitting_estimate(1, 0.5, 0.0, 0, Side.UPPER)
    lower = quantize.splitting_estimate(1, 0.5, 0.0, 0, Side.LOWER)
    assert median.bion_imag == 0.0
    assert upper.bion_imag == pytest.approx(-lower.bion_imag)
    assert upper.bion_imag > 0
    assert median.instanton < 0
    assert median.rescaled_energy.real == pytest.approx(0.5 + median.instanton + median.bion_real)


def test_splitting_estimate_supports_only_small_n(quantize) -> None:
    with pytest.raises(UnsupportedCaseError):
        quantize.splitting_estimate(3, 0.5, 0.0, 0, Side.MEDIAN)
    with pytest.raises(ConfigError):
        quantize.splitting_estimate(2, 0.5, 0.0, 2, Side.MEDIAN)


def test_leading_splitting_matches_oracle_gap(quantize, oracle) -> None:
    hbar = 0.5
    estimate = quantize.splitting_estimate(1, hbar, 0.0, 0, Side.MEDIAN)
    gap = oracle.band_splitting(BlochProblem(1, hbar, 0.0))
    ratio = gap.reduced_gap / (2 * abs(estimate.instanton))
    assert 0.85 < ratio < 1.15


def test_partition_estimate_sums_sectors(quantize) -> None:
    records = quantize.splitting_records(2, 0.5, 0.3)
    expected = sum(math.exp(-2.0 * r.energy_re) for r in records)
    assert quantize.partition_estimate(2, 0.5, 2.0, 0.3) == pytest.approx(expected)


def test_dictionary_recovers_airy_data(quantize) -> None:
    airy = quantize.cycles_from_residue(1, 0.48, 0.4)
    dw = quantize.dictionary_translate(TranslateDirection.AIRY_TO_DW, airy)
    back = quantize.dictionary_translate(TranslateDirection.DW_TO_AIRY, dw)
    assert back.kind is ConditionKind.AIRY
    assert back.ratio == pytest.approx(airy.ratio, rel=1e-10)
    assert back.c_ratio_sq == pytest.approx(airy.c_ratio_sq, rel=1e-8)


def test_dictionary_needs_b_normalization(quantize) -> None:
    cycles = CycleData(kind=ConditionKind.AIRY, N=1, energy=0.5, hbar=0.4, ratio=-0.5)
    with pytest.raises(MissingDataError):
        quantize.dictionary_translate(TranslateDirection.AIRY_TO_DW, cycles)


def _median_errors(quantize, oracle, hbar: float, theta: float) -> list[float]:
    records = quantize.solve_spectrum(quantize.default_dw_condition(1, hbar, theta, Side.MEDIAN), bands=2)
    reference = oracle.sector_spectrum(BlochProblem(1, hbar, theta), 0, 2)
    assert [r.n for r in records] == [0, 1]
    return [abs(r.energy_re - reference[r.n]) / abs(reference[r.n]) for r in records]


@pytest.mark.slow
@pytest.mark.parametrize("theta", [0.0, np.pi / 2, np.pi])
def test_two_lowest_median_roots_converge_to_the_oracle(quantize, oracle, theta: float) -> None:
    worst = [max(_median_errors(quantize, oracle, hbar, theta)) for hbar in (1.0, 0.5, 0.25)]
    assert worst[1] < 1e-2
    assert worst[0] > worst[1] > worst[2]


def test_kramers_doubling_at_theta_pi(quantize, oracle) -> None:
    hbar = 0.5
    levels = [r.energy_re for r in oracle.band_spectrum(BlochProblem(2, hbar, np.pi), 4)]
    assert levels[1] - levels[0] == pytest.approx(0.0, abs=1e-10)
    assert levels[3] - levels[2] == pytest.approx(0.0, abs=1e-10)
    records = quantize.solve_spectrum(quantize.default_dw_condition(2, hbar, np.pi, Side.MEDIAN), bands=2)
    for n in (0, 1):
        first, second = (r.energy_re for r in records if r.n == n)
        assert first == pytest.approx(second, rel=1e-8)


@pytest.mark.slow
@pytest.mark.parametrize("N", [1, 2])
def test_band_splitting_ratio_approaches_one(oracle, N: int) -> None:
    ratios = []
    for hbar in (0.7, 0.55, 0.4):
        gap = oracle.band_splitting(BlochProblem(N, hbar, 0.0))
        amplitude = (64.0 if N == 1 else 32.0) * math.exp(-16.0 / (N * hbar)) / (math.pi * hbar)
        ratios.append(gap.reduced_gap / (2 * math.sqrt(amplitude)))
    assert 0.85 <= ratios[-1] <= 1.15
    assert ratios[0] < ratios[1] < ratios[2]


def test_refine_spectrum_keeps_labels(quantize) -> None:
    condition = quantize.default_dw_condition(2, 0.4, 0.3, Side.MEDIAN)
    seeds = quantize.solve_spectrum(condition, bands=1)
    refined = quantize.refine_spectrum(condition, seeds)
    assert [(r.p, r.n) for r in refined] == [(r.p, r.n) for r in seeds]
    assert [r.energy_re for r in refined] == pytest.approx([r.energy_re for r in seeds], rel=1e-10)
    assert all(r.energy_im == 0.0 for r in refined)


@pytest.mark.slow
@pytest.mark.parametrize("theta", [0.0, np.pi / 2])
def test_airy_roots_from_voros_symbols_agree_with_oracle(quantize, oracle, theta: float) -> None:
    hbar = 0.3
    seeds = quantize.solve_spectrum(quantize.default_dw_condition(1, hbar, theta, Side.MEDIAN), bands=2)
    log_a, log_b = quantize.airy_cycles(1, hbar)
    airy = quantize.condition_airy(log_a, log_b, theta, 1, Side.MEDIAN, hbar=hbar, logarithmic=True)
    records = quantize.refine_spectrum(airy, seeds)
    reference = oracle.sector_spectrum(BlochProblem(1, hbar, theta), 0, 2)
    assert all(r.method.value == "AiryWKB" and r.converged for r in records)
    for record in records:
        assert record.energy_re == pytest.approx(reference[record.n], rel=1e-4)
