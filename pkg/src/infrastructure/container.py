"""
Container DI declaratif avec dependency-injector.

Documentation: https://python-dependency-injector.ets-labs.org/
"""

import logging

from dependency_injector import containers, providers

from src.config import settings
from src.application.services.borel_lab import BorelLab
from src.application.services.exact_residue import ExactResidueSolver
from src.application.services.potential_core import PotentialCore
from src.application.services.quantize import QuantizeService
from src.application.services.resurgence_algebra import ResurgenceAlgebra
from src.application.services.spectral_oracle import SpectralOracle
from src.application.services.stokes_graph import StokesGraphService
from src.application.services.sweep_runner import SweepRunner
from src.application.services.wkb_series import WkbSeriesService
from src.infrastructure.adapters.csv_artifact_writer import CsvArtifactWriter
from src.infrastructure.adapters.html_artifact_writer import HtmlArtifactWriter
from src.infrastructure.adapters.json_artifact_writer import JsonArtifactWriter
from src.infrastructure.adapters.svg_artifact_writer import SvgArtifactWriter

logger = logging.getLogger(__name__)


class Container(containers.DeclarativeContainer):
    """
    Container DI declaratif.

    Usage Production:
        container = Container()
        container.config.format.from_value("csv")
        writer = container.artifact_writer()

    Usage Tests (override sans modifier le code):
        with container.spectral_oracle.override(fake_oracle):
            ExperimentRunner().run(config)
    """

    wiring_config = containers.WiringConfiguration(
        modules=["src.application.experiment_runner"]
    )

    config = providers.Configuration()
    """Configuration dynamique pour les selecteurs."""

    # =========================================================================
    # EXECUTION
    # =========================================================================

    sweep_runner = providers.Singleton(
        SweepRunner,
        max_workers=settings.EWKB_THREADS,
    )
    """Balayages paralleles (EWKB_THREADS workers), fusion dans l'ordre de la grille."""

    # =========================================================================
    # SERIES ET POTENTIEL
    # =========================================================================

    potential_core = providers.Singleton(PotentialCore)

    exact_residue = providers.Singleton(ExactResidueSolver)
    """Polynomes F_k(E) exacts au point double."""

    wkb_series = providers.Singleton(
        WkbSeriesService,
        potential_core=potential_core,
        exact_residue=exact_residue,
    )

    stokes_graph = providers.Singleton(
        StokesGraphService,
        potential_core=potential_core,
        sweep_runner=sweep_runner,
    )

    # =========================================================================
    # QUANTIFICATION ET RESURGENCE
    # =========================================================================

    quantize = providers.Singleton(
        QuantizeService,
        wkb_series=wkb_series,
    )

    resurgence_algebra = providers.Singleton(ResurgenceAlgebra)
    """Verifications exactes (DDP, factorisation, secteurs)."""

    borel_lab = providers.Singleton(
        BorelLab,
        wkb_series=wkb_series,
        quantize=quantize,
        sweep_runner=sweep_runner,
    )

    spectral_oracle = providers.Singleton(SpectralOracle)
    """Diagonalisation de reference, independante du WKB."""

    # =========================================================================
    # ARTEFACTS
    # =========================================================================

    csv_writer = providers.Singleton(CsvArtifactWriter)
    json_writer = providers.Singleton(JsonArtifactWriter)
    svg_writer = providers.Singleton(SvgArtifactWriter)
    html_writer = providers.Singleton(HtmlArtifactWriter)

    artifact_writer = providers.Selector(
        config.format,
        csv=csv_writer,
        json=json_writer,
        svg=svg_writer,
        html=html_writer,
    )
    """
    Selecteur ArtifactWriter base sur la configuration.
    Le format est choisi par RunConfig.format (--format).
    """
