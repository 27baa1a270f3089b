"""Fixtures partagees: services construits directement, sans container."""

import numpy as np
import pytest

from src.application.services.borel_lab import BorelLab
from src.application.services.exact_residue import ExactResidueSolver
from src.application.services.potential_core import PotentialCore
from src.application.services.quantize import QuantizeService
from src.application.services.resurgence_algebra import ResurgenceAlgebra
from src.application.services.spectral_oracle import SpectralOracle
from src.application.services.stokes_graph import StokesGraphService
from src.application.services.sweep_runner import SweepRunner
from src.application.services.wkb_series import WkbSeriesService


@pytest.fixture(scope="session")
def sweep_runner() -> SweepRunner:
    return SweepRunner(max_workers=1)


@pytest.fixture(scope="session")
def potential_core() -> PotentialCore:
    return PotentialCore()


@pytest.fixture(scope="session")
def exact_residue() -> ExactResidueSolver:
    return ExactResidueSolver()


@pytest.fixture(scope="session")
def wkb_series(potential_core, exact_residue) -> WkbSeriesService:
    return WkbSeriesService(potential_core, exact_residue)


@pytest.fixture(scope="session")
def quantize(wkb_series) -> QuantizeService:
    return QuantizeService(wkb_series, max_workers=1)


@pytest.fixture(scope="session")
def oracle() -> SpectralOracle:
    return SpectralOracle()


@pytest.fixture(scope="session")
def algebra() -> ResurgenceAlgebra:
    return ResurgenceAlgebra()


@pytest.fixture(scope="session")
def borel_lab(wkb_series, quantize, sweep_runner) -> BorelLab:
    return BorelLab(wkb_series, quantize, sweep_runner)


@pytest.fixture(scope="session")
def stokes_graph(potential_core, sweep_runner) -> StokesGraphService:
    return StokesGraphService(potential_core, sweep_runner)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)
