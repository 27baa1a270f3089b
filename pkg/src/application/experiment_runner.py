"""
Orchestrateur des commandes CLI.

Ce service :
1. Recoit une RunConfig validee
2. Appelle les services du container (injectes via @inject)
3. Parallelise les grilles (hbar, theta) avec le SweepRunner
4. Ecrit les artefacts en serie, avec l'en-tete de provenance
"""

import itertools
import logging
import math

import numpy as np
import pandas as pd
from dependency_injector.wiring import inject, Provide

from src.domain.enums import Command, EnergyMode, Side
from src.domain.exceptions import EwkbError, InsufficientOrderError, NumericalError
from src.domain.models.oracle import BlochProblem
from src.domain.models.run_config import RunConfig, RunResult
from src.domain.ports.artifact_writer_port import ArtifactWriter
from src.application.services.borel_lab import BorelLab
from src.application.services.potential_core import PotentialCore
from src.application.services.quantize import QuantizeService
from src.application.services.resurgence_algebra import ResurgenceAlgebra
from src.application.services.spectral_oracle import SpectralOracle
from src.application.services.stokes_graph import StokesGraphService
from src.application.services.sweep_runner import SweepRunner
from src.infrastructure.container import Container

logger = logging.getLogger(__name__)


def _lateral(side: Side) -> Side:
    """Les verifications exactes demandent un cote; la mediane est lue du cote superieur."""
    return side if side in (Side.UPPER, Side.LOWER) else Side.UPPER


class ExperimentRunner:
    """Execute une commande et ecrit ses artefacts."""

    @inject
    def run(
        self,
        config: RunConfig,
        writer: ArtifactWriter = Provide[Container.artifact_writer],
        sweep_runner: SweepRunner = Provide[Container.sweep_runner],
        potential_core: PotentialCore = Provide[Container.potential_core],
        quantize: QuantizeService = Provide[Container.quantize],
        stokes_graph: StokesGraphService = Provide[Container.stokes_graph],
        algebra: ResurgenceAlgebra = Provide[Container.resurgence_algebra],
        borel_lab: BorelLab = Provide[Container.borel_lab],
        oracle: SpectralOracle = Provide[Container.spectral_oracle],
    ) -> RunResult:
        self._writer = writer
        self._sweep_runner = sweep_runner
        self._potential_core = potential_core
        self._quantize = quantize
        self._stokes_graph = stokes_graph
        self._algebra = algebra
        self._borel_lab = borel_lab
        self._oracle = oracle

        handlers = {
            Command.SPECTRUM: self._spectrum,
            Command.SPLIT: self._split,
            Command.STOKES_GRAPH: self._stokes,
            Command.DDP_CHECK: self._ddp_check,
            Command.FACTORIZE: self._factorize,
            Command.BOREL: self._borel,
            Command.SECTORS: self._sectors,
            Command.ORACLE: self._oracle_fixtures,
        }
        logger.info(f"[RUN:{config.command}] N={config.N} format={config.format}")
        try:
            result = handlers[config.command](config)
        except EwkbError:
            raise
        except (ArithmeticError, RecursionError, ValueError, TypeError, np.linalg.LinAlgError) as e:
            # echec des bibliotheques numeriques: code de sortie 3 comme les NumericalError
            logger.error(f"[RUN:{config.command}] echec numerique {type(e).__name__}: {e}")
            raise NumericalError(f"{config.command}: {type(e).__name__}: {e}") from e
        logger.info(f"[RUN:{config.command}] {len(result.artifacts)} artefact(s) ecrit(s)")
        return result

    def _grid(self, config: RunConfig) -> list[tuple[float, float]]:
        return list(itertools.product(config.hbars, config.thetas))

    # =========================================================================
    # SPECTRES
    # =========================================================================

    def _airy_frame(self, config: RunConfig, hbar: float, theta: float, seeds: list) -> pd.DataFrame:
        """Racines Airy (symboles de Voros tronques) au voisinage des racines DW."""
        log_a, log_b = self._quantize.airy_cycles(config.N, hbar)
        condition = self._quantize.condition_airy(log_a, log_b, theta, config.N, config.side, hbar=hbar, logarithmic=True)
        records = self._quantize.refine_spectrum(condition, seeds)
        frame = pd.DataFrame([r.row() for r in records], columns=["p", "n", "E_re", "converged"])
        return frame.rename(columns={"E_re": "E_airy", "converged": "airy_converged"})

    def _spectrum_frame(self, config: RunConfig, hbar: float, theta: float) -> pd.DataFrame:
        """Racines DW (et Airy si demande) et valeurs propres oracle cote a cote, par (p, n)."""
        condition = self._quantize.default_dw_condition(config.N, hbar, theta, config.side, order=config.orders)
        records = self._quantize.solve_spectrum(condition, config.bands)
        wkb = pd.DataFrame([r.row() for r in records])
        decomposition = self._oracle.bloch_decompose(BlochProblem(config.N, hbar, theta), config.bands)
        oracle = pd.DataFrame([r.row() for r in decomposition.records])[["p", "n", "E_re", "E_over_hbar_re"]]
        oracle = oracle.rename(columns={"E_re": "E_oracle", "E_over_hbar_re": "E_oracle_over_hbar"})
        if wkb.empty:
            frame = oracle.assign(N=config.N, hbar=hbar, theta=theta)
        else:
            frame = wkb.merge(oracle, on=["p", "n"], how="outer")
            frame["rel_error"] = (frame["E_re"] - frame["E_oracle"]).abs() / frame["E_oracle"].abs()
            if config.airy:
                frame = frame.merge(self._airy_frame(config, hbar, theta, records), on=["p", "n"], how="left")
                frame["airy_rel_error"] = (frame["E_airy"] - frame["E_oracle"]).abs() / frame["E_oracle"].abs()
        frame["oracle_p_spread"] = frame.groupby("n")["E_oracle"].transform(lambda e: e.max() - e.min())
        return frame.sort_values(["p", "n"]).reset_index(drop=True)

    def _spectrum(self, config: RunConfig) -> RunResult:
        frames = self._sweep_runner.map(lambda point: self._spectrum_frame(config, *point), self._grid(config))
        frame = pd.concat(frames, ignore_index=True)
        path = self._writer.write_table(frame, config.artifact_path("spectrum"), config.header())
        worst = frame["rel_error"].max() if "rel_error" in frame else float("nan")
        return RunResult([path], [f"{len(frame)} niveau(x), ecart relatif max WKB/oracle {worst:.3e}"])

    def _split(self, config: RunConfig) -> RunResult:
        """Formules de splitting par p et ecart de bande de l'oracle, pour chaque hbar."""
        side = config.side

        def rows_for(hbar: float) -> list[dict]:
            gap = self._oracle.band_splitting(BlochProblem(config.N, hbar, 0.0), band=0)
            rows = []
            for p in range(config.N):
                estimate = self._quantize.splitting_estimate(config.N, hbar, config.theta, p, side)
                b0 = math.exp(-16.0 / (config.N * hbar))
                amplitude = (64.0 if config.N == 1 else 32.0) * b0 / (math.pi * hbar)
                predicted = 2 * math.sqrt(amplitude)
                energy = estimate.energy
                rows.append(
                    {
                        "N": config.N,
                        "hbar": hbar,
                        "theta": config.theta,
                        "p": p,
                        "side": side.value,
                        "B0": b0,
                        "instanton": estimate.instanton,
                        "bion_real": estimate.bion_real,
                        "bion_imag": estimate.bion_imag,
                        "E_re": energy.real,
                        "E_im": energy.imag,
                        "E_over_hbar_re": estimate.rescaled_energy.real,
                        "E_over_hbar_im": estimate.rescaled_energy.imag,
                        "oracle_reduced_gap": gap.reduced_gap,
                        "predicted_reduced_gap": predicted,
                        "gap_ratio": gap.reduced_gap / predicted,
                    }
                )
            return rows

        rows = [row for rows in self._sweep_runner.map(rows_for, config.hbars) for row in rows]
        frame = pd.DataFrame(rows)
        path = self._writer.write_table(frame, config.artifact_path("split"), config.header())
        ratios = frame.drop_duplicates("hbar")["gap_ratio"].round(4).tolist()
        return RunResult([path], [f"ecart oracle / formule dominante: {ratios}"])

    def _oracle_fixtures(self, config: RunConfig) -> RunResult:
        def records_for(point: tuple[float, float]) -> list[dict]:
            hbar, theta = point
            decomposition = self._oracle.bloch_decompose(BlochProblem(config.N, hbar, theta), config.bands)
            if not decomposition.matches_full:
                logger.warning(f"[RUN:oracle] secteurs et matrice pleine en desaccord (hbar={hbar}, theta={theta})")
            return [
                {key: r.row()[key] for key in ("N", "hbar", "theta", "p", "n", "E_re", "E_over_hbar_re")}
                for r in decomposition.records
            ]

        rows = [row for rows in self._sweep_runner.map(records_for, self._grid(config)) for row in rows]
        frame = pd.DataFrame(rows).rename(columns={"E_re": "E", "E_over_hbar_re": "E_over_hbar"})
        path = self._writer.write_table(frame, config.artifact_path("oracle"), config.header())
        return RunResult([path], [f"{len(frame)} valeur(s) propre(s) de reference"])

    # =========================================================================
    # GRAPHE DE STOKES
    # =========================================================================

    def _stokes(self, config: RunConfig) -> RunResult:
        potential = self._potential_core.build_potential(config.N, EnergyMode.FIXED, config.energy)
        window = (0.0, 2 * math.pi * config.window_periods)
        graph = self._stokes_graph.trace_graph(potential, config.arg_hbar, window)
        header = config.header()
        header["signature"] = str(graph.signature())
        path = self._writer.write_graph(graph, config.artifact_path("stokes_graph"), header)
        distance = self._stokes_graph.equivariance_distance(graph)
        return RunResult(
            [path],
            [
                f"{len(graph.turning_points)} point(s) tournant(s), {len(graph.curves)} courbe(s), "
                f"{len(graph.saddle_connections)} connexion(s) de selle, equivariance {distance:.1e}"
            ],
        )

    # =========================================================================
    # VERIFICATIONS EXACTES
    # =========================================================================

    def _ddp_check(self, config: RunConfig) -> RunResult:
        report = self._algebra.ddp_check(config.N)
        path = self._writer.write_report(report, config.artifact_path("ddp_check"), config.header())
        sectors = sum(1 for key, ok in report.details.items() if key.startswith("p=") and ok)
        status = "PASS" if report.holds else "FAIL"
        return RunResult([path], [f"{status} {sectors}/{config.N} sectors"])

    def _factorize(self, config: RunConfig) -> RunResult:
        ratio = config.theta / math.pi
        theta_pi = int(round(ratio)) if abs(ratio - round(ratio)) < 1e-12 else None
        report = self._algebra.factorization_check(
            config.N,
            side=_lateral(config.side),
            theta_pi=theta_pi,
            spot_checks=config.spot_checks,
            seed=config.seed,
        )
        path = self._writer.write_report(report, config.artifact_path("factorize"), config.header())
        return RunResult([path], [report.summary])

    def _sectors(self, config: RunConfig) -> RunResult:
        side = _lateral(config.side)
        order = config.sector_order
        rows = []
        for p in range(config.N):
            for Q in range(-order, order + 1):
                for K in range((order - abs(Q)) // 2 + 1):
                    if abs(Q) + K == 0:
                        continue
                    coefficient = self._algebra.sector_coefficient(p, Q, K, config.N, side)
                    rows.append(
                        {"p": p, "Q": Q, "K": K, "t_degree": abs(Q) + 2 * K, "coefficient": coefficient.canonical()}
                    )
        frame = pd.DataFrame(rows)
        path = self._writer.write_table(frame, config.artifact_path("sectors"), config.header())
        report = self._algebra.sector_expansion_check(order=order, side=side)
        return RunResult([path], [f"{len(frame)} secteur(s); forme close vs log: {report.summary}"])

    # =========================================================================
    # BOREL
    # =========================================================================

    def _borel(self, config: RunConfig) -> RunResult:
        series = self._borel_lab.perturbative_energy_series(config.N, config.level, config.max_order)
        header = config.header()
        try:
            singularities = self._borel_lab.borel_singularities(series)
            header["leading_action"] = singularities.leading_action
        except InsufficientOrderError as exc:
            logger.warning(f"[RUN:borel] plan de Borel non analyse: {exc}")
            header["leading_action"] = None

        prediction_N = config.N if config.N in (1, 2) else None
        discontinuities = self._borel_lab.discontinuity_sweep(series, config.hbars, config.ray_angle, prediction_N)
        rows = []
        for d in discontinuities:
            row = d.row()
            row["upper_over_hbar_re"] = d.upper.real / d.hbar
            row["lower_over_hbar_re"] = d.lower.real / d.hbar
            rows.append(row)
        table = self._writer.write_table(pd.DataFrame(rows), config.artifact_path("borel"), header)

        coefficients = series.coefficients.real
        action = header["leading_action"] or 16.0 / config.N
        ratios = self._borel_lab.coefficient_ratios(series, action)
        series_frame = pd.DataFrame(
            {
                "k": np.arange(len(coefficients)),
                "c_k": coefficients,
                "ratio": [np.nan] + ratios.ratios + [np.nan] * (len(coefficients) - 1 - len(ratios.ratios)),
            }
        )
        coefficients_path = self._writer.write_table(series_frame, config.artifact_path("borel_series"), header)
        summary = [f"action dominante {header['leading_action']}", f"tendance des rapports: {ratios.trend_ok}"]
        summary += [f"hbar={d.hbar}: disc={d.discontinuity:.4e} rapport={d.ratio}" for d in discontinuities]
        return RunResult([table, coefficients_path], summary)
