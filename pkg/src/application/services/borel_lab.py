"""
Laboratoire de Borel: serie perturbative des energies, sommes de Borel-Pade
laterales, discontinuite et singularites du plan de Borel.

La serie perturbative vient de la condition -F(E/hbar, hbar) = n + 1/2 avec
les polynomes exacts F_k du point double, inversee en arithmetique rationnelle.
Le Pade et l'integrale de Laplace sont faits en precision mpmath (BOREL_DPS):
la discontinuite laterale est exponentiellement petite devant la somme.
"""
import logging
import math
from fractions import Fraction
from typing import Optional

import mpmath
import numpy as np

from src.config import settings
from src.domain.enums import Side
from src.domain.exceptions import ConfigError, ConvergenceError, InsufficientOrderError, UnsupportedCaseError
from src.domain.models.borel import (
    BorelSingularities,
    BorelSum,
    BorelSummable,
    CoefficientRatios,
    LateralDiscontinuity,
)
from src.domain.models.series import HbarSeries, ResidueSeries
from src.application.services.quantize import QuantizeService
from src.application.services.sweep_runner import SweepRunner
from src.application.services.wkb_series import WkbSeriesService

logger = logging.getLogger(__name__)


def _truncated_product(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                out[i + j] += x * y
    return out


class BorelLab:
    """Verifications cote serie de la structure resurgente."""

    def __init__(
        self,
        wkb_series: WkbSeriesService,
        quantize: QuantizeService,
        sweep_runner: SweepRunner,
        dps: int = settings.BOREL_DPS,
        min_coefficients: int = 10,
        pv_angle: float = 0.05,
        cluster_rtol: float = 0.05,
    ):
        self._wkb_series = wkb_series
        self._quantize = quantize
        self._sweep_runner = sweep_runner
        self._dps = dps
        self._min_coefficients = min_coefficients
        self._pv_angle = pv_angle
        self._cluster_rtol = cluster_rtol

    # =========================================================================
    # SERIE PERTURBATIVE
    # =========================================================================

    def perturbative_energy_series(
        self, N: int, level: int, max_order: int, residue: Optional[ResidueSeries] = None
    ) -> HbarSeries:
        """
        E_n(hbar) = hbar sum_m e_m hbar^m, en unites physiques (prefacteur hbar^1).

        e_0 = N(n + 1/2); e_m s'obtient a l'ordre hbar^m de
        sum_k F_k(eps(hbar)) hbar^k = -(n + 1/2), F_0 etant lineaire.

        Raises:
            InsufficientOrderError: Si le residu fourni est plus court que max_order
        """
        if level < 0 or max_order < 0:
            raise ConfigError(f"niveau et ordre doivent etre >= 0 (recu {level}, {max_order})")
        if residue is None:
            residue = self._wkb_series.residue_polynomials(N, max_order)
        if residue.max_order < max_order:
            raise InsufficientOrderError(residue.max_order, max_order)

        eps = [Fraction(N) * (level + Fraction(1, 2))] + [Fraction(0)] * max_order
        for m in range(1, max_order + 1):
            total = Fraction(0)
            for k in range(1, m + 1):
                # F_k(eps) hbar^k ne touche hbar^m qu'a travers eps_{<= m-k}
                value = [Fraction(0)] * (m - k + 1)
                for c in reversed(residue.polynomials[k]):
                    value = _truncated_product(value, eps, m - k)
                    value[0] += c
                total += value[m - k]
            eps[m] = N * total
        logger.info(f"[BOREL:serie N={N} n={level}] {max_order + 1} coefficients, e_1 = {eps[1] if max_order else 0}")
        return HbarSeries([complex(float(e)) for e in eps], Fraction(1), tuple(eps))

    # =========================================================================
    # PADE ET LAPLACE
    # =========================================================================

    def _pade(self, borel: BorelSummable) -> tuple[list, list, tuple[int, int]]:
        """
        Pade de B a degres (L, M); si le systeme est singulier, M baisse et L monte.

        Raises:
            ConvergenceError: Si meme le degre M = 0 echoue
        """
        if borel.exact_coefficients is not None:
            coefficients = [mpmath.mpf(b.numerator) / b.denominator for b in borel.exact_coefficients]
        else:
            coefficients = [mpmath.mpc(b) for b in borel.borel_coefficients]
        L, M = borel.pade_degree
        while True:
            try:
                p, q = mpmath.pade(coefficients[: L + M + 1], L, M)
                return p, q, (L, M)
            # systeme de Toeplitz singulier: mpmath 1.3 leve TypeError (pivot None) ou ZeroDivisionError
            except (ZeroDivisionError, TypeError) as e:
                if M == 0:
                    raise ConvergenceError(f"Pade de Borel {borel.pade_degree}", float("inf")) from e
                logger.debug(f"[BOREL:pade] ({L}, {M}) singulier, essai ({L + 1}, {M - 1})")
                L, M = L + 1, M - 1

    @staticmethod
    def _rational(p: list, q: list):
        numerator, denominator = p[::-1], q[::-1]
        return lambda zeta: mpmath.polyval(numerator, zeta) / mpmath.polyval(denominator, zeta)

    @staticmethod
    def _poles(q: list) -> list:
        coefficients = q[::-1]
        while len(coefficients) > 1 and coefficients[0] == 0:
            coefficients = coefficients[1:]
        if len(coefficients) < 2:
            return []
        return list(mpmath.polyroots(coefficients, maxsteps=200, extraprec=2 * mpmath.mp.prec))

    def _laplace(self, B, hbar: float, angle: float, poles: list) -> mpmath.mpc:
        """integrale_0^inf e^{-u} B(hbar u) du le long de u = r e^{i angle}."""
        direction = mpmath.expj(angle)
        samples = [abs(B(hbar * r * direction)) for r in mpmath.linspace(0, 200, 401)]
        peak = max(max(samples), mpmath.mpf(1))
        horizon = (mpmath.log(peak) + (self._dps - 10) * mpmath.log(10)) / mpmath.cos(angle)
        breaks = [mpmath.mpf(0)] + [mpmath.mpf(x) for x in (1, 2, 5, 10, 20, 40, 80) if x < horizon]
        for pole in poles:
            along = mpmath.re(pole / (hbar * direction))
            if 0 < along < horizon:
                breaks.append(along)
        breaks = sorted(set(breaks)) + [horizon]

        def integrand(r):
            u = r * direction
            return mpmath.exp(-u) * B(hbar * u) * direction

        return mpmath.quad(integrand, breaks)

    def _sum_with(self, borel: BorelSummable, hbar: float, angle: float) -> tuple[mpmath.mpc, list, bool, tuple]:
        p, q, degree = self._pade(borel)
        B = self._rational(p, q)
        poles = self._poles(q)
        rotation = mpmath.expj(-angle)
        # pole sur le rayon: tourne sur l'axe reel positif
        on_ray = [
            z for z in poles if mpmath.re(z * rotation) > 0 and abs(mpmath.im(z * rotation)) < 1e-8 * abs(z)
        ]
        if on_ray:
            upper = self._laplace(B, hbar, angle + self._pv_angle, poles)
            lower = self._laplace(B, hbar, angle - self._pv_angle, poles)
            value = (upper + lower) / 2
        else:
            value = self._laplace(B, hbar, angle, poles)
        scale = mpmath.mpf(hbar) ** float(borel.nu) if borel.nu != 0 else 1
        return value * scale, on_ray, bool(on_ray), degree

    def _check_request(self, series: HbarSeries, ray_angle: float) -> None:
        if len(series.coefficients) < self._min_coefficients:
            raise InsufficientOrderError(len(series.coefficients), self._min_coefficients)
        if abs(ray_angle) >= math.pi / 2:
            raise ConfigError(f"angle de rayon hors de (-pi/2, pi/2): {ray_angle}")

    @staticmethod
    def _neighbours(degree: tuple[int, int]) -> list[tuple[int, int]]:
        L, M = degree
        return [d for d in ((L - 1, M), (L, M - 1)) if min(d) >= 0]

    def borel_pade_sum(
        self,
        series: HbarSeries,
        hbar: float,
        ray_angle: float = 0.0,
        pade_degree: Optional[tuple[int, int]] = None,
    ) -> BorelSum:
        """
        Somme de Borel-Pade le long du rayon d'angle ray_angle.

        L'erreur est l'ecart maximal avec les degres (L-1, M) et (L, M-1).
        Un pole de Pade sur le rayon donne la valeur principale (moyenne des
        rayons ray_angle +/- pv_angle), signalee dans le resultat.
        """
        self._check_request(series, ray_angle)
        borel = BorelSummable.from_series(series, pade_degree, ray_angle)
        with mpmath.workdps(self._dps):
            value, on_ray, principal, degree = self._sum_with(borel, hbar, ray_angle)
            error = mpmath.mpf(0)
            for neighbour in self._neighbours(degree):
                try:
                    alternative, *_ = self._sum_with(borel.with_degree(neighbour), hbar, ray_angle)
                except ConvergenceError:
                    continue
                error = max(error, abs(alternative - value))
            result = BorelSum(
                value=complex(value),
                error=float(error),
                hbar=hbar,
                ray_angle=ray_angle,
                pade_degree=degree,
                poles_on_ray=[complex(z) for z in on_ray],
                principal_value=principal,
            )
        logger.info(
            f"[BOREL:somme hbar={hbar} arg={ray_angle}] {result.value:.12g} +/- {result.error:.1e} "
            f"Pade {degree}{' (valeur principale)' if principal else ''}"
        )
        return result

    # =========================================================================
    # DISCONTINUITE LATERALE
    # =========================================================================

    def _wedge_residues(self, series: HbarSeries, hbar: float, angle: float) -> mpmath.mpf:
        """-(pi/hbar) sum Res[e^{-zeta/hbar} B(zeta)] sur les poles du coin |arg| < angle."""
        borel = BorelSummable.from_series(series)
        p, q, _ = self._pade(borel)
        numerator, denominator = p[::-1], q[::-1]
        derivative = [c * (len(denominator) - 1 - i) for i, c in enumerate(denominator[:-1])]
        total = mpmath.mpc(0)
        for z in self._poles(q):
            if mpmath.re(z) > 0 and abs(mpmath.arg(z)) < angle:
                residue = mpmath.polyval(numerator, z) / mpmath.polyval(derivative, z)
                total += residue * mpmath.exp(-z / hbar)
        scale = mpmath.mpf(hbar) ** float(borel.nu) if borel.nu != 0 else 1
        return -mpmath.pi / hbar * mpmath.re(total) * scale

    def _lateral_pair(self, borel: BorelSummable, hbar: float, angle: float) -> tuple[mpmath.mpc, mpmath.mpc, tuple]:
        upper, _, _, degree = self._sum_with(borel, hbar, +angle)
        lower, *_ = self._sum_with(borel.with_degree(degree), hbar, -angle)
        return upper, lower, degree

    def lateral_discontinuity(
        self,
        series: HbarSeries,
        hbar: float,
        ray_angle: float = 0.1,
        N: Optional[int] = None,
        theta: float = 0.0,
    ) -> LateralDiscontinuity:
        """
        (S_+ - S_-)/2i de la serie, compare au terme imaginaire bion.

        L'erreur est l'ecart de la discontinuite elle-meme entre les degres
        (L, M), (L-1, M) et (L, M-1).
        Si N est donne (1 ou 2), la prediction est hbar N * Im delta^+ de
        splitting_estimate (meme unites que la serie physique E_n).
        """
        if not series.is_real:
            raise ConfigError("la discontinuite laterale exige une serie a coefficients reels")
        self._check_request(series, ray_angle)
        borel = BorelSummable.from_series(series)
        with mpmath.workdps(self._dps):
            upper, lower, degree = self._lateral_pair(borel, hbar, ray_angle)
            jump = mpmath.re((upper - lower) / 2j)
            error = mpmath.mpf(0)
            for neighbour in self._neighbours(degree):
                try:
                    u, l, _ = self._lateral_pair(borel.with_degree(neighbour), hbar, ray_angle)
                except ConvergenceError:
                    continue
                error = max(error, abs(mpmath.re((u - l) / 2j) - jump))
            residue_estimate = float(self._wedge_residues(series, hbar, ray_angle))
            discontinuity, error = float(jump), float(error)
            upper, lower = complex(upper), complex(lower)

        predicted, cancels = None, None
        if N is not None:
            try:
                estimate = self._quantize.splitting_estimate(N, hbar, theta, 0, Side.UPPER)
            except UnsupportedCaseError:
                logger.warning(f"[BOREL:disc N={N}] pas de prediction bion pour ce N")
            else:
                predicted = hbar * N * estimate.bion_imag
                cancels = bool(np.sign(upper.imag) == -np.sign(predicted))

        bound = abs(discontinuity) < 10 * error
        if bound:
            logger.warning(f"[BOREL:disc hbar={hbar}] |disc| = {abs(discontinuity):.2e} sous 10x l'erreur: borne superieure")
        result = LateralDiscontinuity(
            hbar=hbar,
            ray_angle=ray_angle,
            upper=upper,
            lower=lower,
            discontinuity=discontinuity,
            error=error,
            residue_estimate=residue_estimate,
            predicted=predicted,
            cancels=cancels,
            upper_bound=bound,
        )
        logger.info(
            f"[BOREL:disc hbar={hbar} Pade {degree}] disc={discontinuity:.6e} +/- {error:.1e} "
            f"residus={residue_estimate:.6e} prediction={predicted} rapport={result.ratio}"
        )
        return result

    def discontinuity_sweep(
        self, series: HbarSeries, hbars: list[float], ray_angle: float = 0.1, N: Optional[int] = None
    ) -> list[LateralDiscontinuity]:
        """Discontinuites sur une grille de hbar, dans l'ordre de la grille."""
        return self._sweep_runner.map(lambda h: self.lateral_discontinuity(series, h, ray_angle, N), hbars)

    # =========================================================================
    # PLAN DE BOREL
    # =========================================================================

    def borel_singularities(self, series: HbarSeries, min_coefficients: int = 20) -> BorelSingularities:
        """
        Poles de Pade de B(zeta) stables d'un degre a l'autre.

        Un amas est retenu s'il apparait (a cluster_rtol pres) pour au moins
        deux des trois degres quasi diagonaux; le plus proche amas reel
        positif donne l'action dominante.
        """
        available = len(series.coefficients)
        if available < min_coefficients:
            raise InsufficientOrderError(available, min_coefficients)
        top = available - 1
        degrees = [(top // 2 + shift, top - top // 2 - shift) for shift in (-1, 0, 1)]
        pole_sets: list[list[complex]] = []
        with mpmath.workdps(self._dps):
            base = BorelSummable.from_series(series)
            for degree in degrees:
                try:
                    _, q, _ = self._pade(base.with_degree(degree))
                except ConvergenceError:
                    continue
                pole_sets.append([complex(z) for z in self._poles(q)])
        if not pole_sets:
            raise ConvergenceError("approximants de Pade du plan de Borel", float("inf"))

        reference = min(pole_sets, key=len)
        clusters: list[tuple[complex, int]] = []
        for pole in reference:
            hits = [
                min(others, key=lambda z: abs(z - pole))
                for others in pole_sets
                if others and abs(min(others, key=lambda z: abs(z - pole)) - pole) <= self._cluster_rtol * abs(pole)
            ]
            if len(hits) >= 2:
                clusters.append((complex(np.mean(hits)), len(hits)))

        positive = [z for z, _ in clusters if z.real > 0 and abs(z.imag) <= 0.1 * z.real]
        leading = min(positive, key=abs).real if positive else None
        all_poles = sorted({z for poles in pole_sets for z in poles}, key=abs)
        result = BorelSingularities(
            poles=all_poles,
            clusters=sorted(clusters, key=lambda c: abs(c[0])),
            leading_action=leading,
            conclusive=leading is not None,
        )
        if leading is None:
            logger.warning("[BOREL:plan] aucun amas reel positif stable: resultat non concluant")
        else:
            logger.info(f"[BOREL:plan] action dominante {leading:.6g} ({len(clusters)} amas)")
        return result

    @staticmethod
    def coefficient_ratios(series: HbarSeries, action: float, window: int = 5, tolerance: float = 0.1) -> CoefficientRatios:
        """c_{k+1} S / ((k + 1) c_k) pour k >= 1."""
        c = series.coefficients.real
        ratios = [float(c[k + 1] * action / ((k + 1) * c[k])) for k in range(1, len(c) - 1) if c[k] != 0]
        return CoefficientRatios(action=action, ratios=ratios, tolerance=tolerance, window=window)
