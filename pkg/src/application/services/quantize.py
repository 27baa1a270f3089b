"""
Service de quantification exacte: monodromies Airy, conditions Airy et DW,
factorisation en secteurs de Bloch, resolution des spectres, formules de
splitting et dictionnaire des cycles Airy <-> DW.

Convention: le facteur p porte l'angle (theta + 2 pi p) / N; c'est aussi le
secteur de l'oracle dont la translation de 2 pi / N vaut e^{i(theta + 2 pi p)/N}.
"""
import concurrent.futures as cf
import functools
import logging
import math
from typing import Callable, Optional, Union

import numpy as np
import sympy as sp
from scipy import optimize, special

from src.config import settings
from src.domain.enums import Branch, ConditionKind, CycleKind, EnergyMode, Method, Side, TranslateDirection
from src.domain.exceptions import ConfigError, MissingDataError, UnsupportedCaseError
from src.domain.models.series import ResidueSeries
from src.domain.models.spectral import (
    CycleData,
    Monodromy2x2,
    QuantizationCondition,
    SpectralRecord,
    SplittingEstimate,
    side_sign,
)
from src.application.services.wkb_series import WkbSeriesService

logger = logging.getLogger(__name__)

CycleInput = Union[complex, float, Callable[[complex], complex]]

_UPPER_PRODUCT = ("M+", "T", "N12", "M-", "N23", "M-")
_LOWER_PRODUCT = ("M+", "T", "N12", "M-", "M+", "N23")


def _as_function(value: CycleInput) -> Callable[[complex], complex]:
    if callable(value):
        return value
    constant = complex(value)
    return lambda energy: constant


class QuantizeService:
    """Conditions de quantification exactes et leurs racines par secteur de Bloch."""

    def __init__(
        self,
        wkb_series: WkbSeriesService,
        scan_points: int = settings.QUANTIZE_SCAN_POINTS,
        rect_height: float = settings.QUANTIZE_RECT_HEIGHT,
        dw_order: int = settings.QUANTIZE_DW_ORDER,
        polish_tol: float = settings.QUANTIZE_POLISH_TOL,
        side_pairing: str = settings.SIDE_PAIRING,
        max_workers: int = settings.EWKB_THREADS,
    ):
        if side_pairing not in ("direct", "swapped"):
            raise ConfigError(f"SIDE_PAIRING doit valoir 'direct' ou 'swapped' (recu {side_pairing!r})")
        self._wkb_series = wkb_series
        self._scan_points = scan_points
        self._rect_height = rect_height
        self._dw_order = dw_order
        self._polish_tol = polish_tol
        self._side_pairing = side_pairing
        self._max_workers = max(1, max_workers)

    def side_sign(self, side: Side) -> int:
        return side_sign(side, self._side_pairing)

    @staticmethod
    def bloch_angles(N: int, theta: float) -> np.ndarray:
        return (theta + 2 * np.pi * np.arange(N)) / N

    # =========================================================================
    # MONODROMIES AIRY
    # =========================================================================

    def airy_monodromy(self, A, B, side: Side) -> Monodromy2x2:
        """
        Produit M+ T N12 M- N23 M- (cote superieur) ou M+ T N12 M- M+ N23.

        A et B peuvent etre des nombres ou des expressions sympy.
        """
        sign = self.side_sign(side)
        if sign == 0:
            raise ConfigError("la monodromie n'est definie que pour les cotes upper/lower")
        symbolic = isinstance(A, sp.Basic) or isinstance(B, sp.Basic)
        if symbolic:
            s, t, unit = sp.sqrt(A), sp.sqrt(B), sp.I

            def matrix(rows):
                return sp.Matrix(rows)
        else:
            s, t, unit = np.sqrt(complex(A)), np.sqrt(complex(B)), 1j

            def matrix(rows):
                return np.array(rows, dtype=complex)

        elementary = {
            "M+": matrix([[1, unit], [0, 1]]),
            "M-": matrix([[1, 0], [unit, 1]]),
            "T": matrix([[0, -unit], [-unit, 0]]),
            "N12": matrix([[s, 0], [0, 1 / s]]),
            "N23": matrix([[1 / t, 0], [0, t]]),
        }
        order = _UPPER_PRODUCT if sign > 0 else _LOWER_PRODUCT
        result = Monodromy2x2(elementary[order[0]], (order[0],))
        for name in order[1:]:
            result = result @ Monodromy2x2(elementary[name], (name,))
        return result

    # =========================================================================
    # CONDITIONS
    # =========================================================================

    def condition_airy(
        self,
        A: CycleInput,
        B: CycleInput,
        theta: float,
        N: int,
        side: Side,
        hbar: Optional[float] = None,
        logarithmic: bool = False,
    ) -> QuantizationCondition:
        """
        D(E) de type Airy, forme globale alpha^N + alpha^-N - 2 cos(theta) et facteurs D_p.

        Args:
            A, B: valeurs (ou fonctions de E) des symboles de Voros
            logarithmic: A et B sont log A et log B; sqrt(A) = exp(log A / 2)
                reste alors continu le long de la fenetre en E
        """
        if N < 1:
            raise ConfigError(f"N doit etre >= 1 (recu {N})")
        side = Side(side)
        a_of, b_of = _as_function(A), _as_function(B)

        def roots(energy: complex) -> tuple[complex, complex]:
            a, b = complex(a_of(energy)), complex(b_of(energy))
            if logarithmic:
                return np.exp(0.5 * a), np.exp(0.5 * b)
            return np.sqrt(a), np.sqrt(b)

        def xi(energy: complex, sign: int) -> complex:
            s, t = roots(energy)
            if sign > 0:
                return (1 + s * s + t * t) / (2 * s * t)
            return (1 + s * s + s * s * t * t) / (2 * s * t)

        cosines = np.cos(self.bloch_angles(N, theta))
        side_factors = self._side_factors(
            lambda sign, c: (lambda energy: 2 * xi(energy, sign) - 2 * c), cosines
        )

        sign = self.side_sign(side)
        if sign == 0:
            factors = side_factors[Side.MEDIAN]

            def evaluator(energy: complex) -> complex:
                return complex(np.prod([f(energy) for f in factors]))
        else:
            factors = side_factors[side]

            def evaluator(energy: complex) -> complex:
                x = xi(energy, sign)
                alpha = x + np.emath.sqrt(x * x - 1)
                return complex(alpha**N + alpha ** (-N) - 2 * np.cos(theta))

        logger.debug(f"[QUANTIZE:Airy] N={N} theta={theta:.4f} side={side}")
        return QuantizationCondition(
            N=N,
            theta=theta,
            side=side,
            kind=ConditionKind.AIRY,
            evaluator=evaluator,
            factors=factors,
            hbar=hbar,
            side_factors=side_factors,
        )

    def _side_factors(self, build, cosines) -> dict[Side, list[Callable[[complex], complex]]]:
        """Facteurs D_p des deux cotes et leur mediane, par facteur."""
        by_sign = {sign: [build(sign, c) for c in cosines] for sign in (1, -1)}
        upper = by_sign[self.side_sign(Side.UPPER)]
        lower = by_sign[self.side_sign(Side.LOWER)]
        median = [
            (lambda energy, fu=fu, fl=fl: 0.5 * (fu(energy) + fl(energy))) for fu, fl in zip(upper, lower)
        ]
        return {Side.UPPER: upper, Side.LOWER: lower, Side.MEDIAN: median}

    def residue_function(
        self, F: Union[ResidueSeries, Callable[[complex], complex]], hbar: float, order: Optional[int] = None
    ) -> Callable[[complex], complex]:
        """F(E/hbar, hbar) tronque, evaluable en E/hbar complexe."""
        if callable(F) and not isinstance(F, ResidueSeries):
            return F
        order = min(self._dw_order if order is None else order, F.max_order)
        polynomials = [np.array([float(c) for c in poly])[::-1] for poly in F.polynomials[: order + 1]]
        powers = hbar ** np.arange(order + 1)

        def residue(energy: complex) -> complex:
            return complex(sum(w * np.polyval(poly, energy) for w, poly in zip(powers, polynomials)))

        return residue

    def log_constant_ratio(
        self,
        N: int,
        branch: Branch = Branch.MINUS,
        constants: Optional[Callable[[complex], tuple[complex, complex]]] = None,
    ) -> Callable[[complex], complex]:
        """log(C+/C-)(E), lineaire en E a l'ordre dominant."""
        if constants is not None:

            def from_constants(energy: complex) -> complex:
                c_plus, c_minus = constants(energy)
                return complex(np.log(c_plus / c_minus))

            return from_constants
        potential = self._wkb_series.rescaled_potential(N)
        c_plus, c_minus = self._wkb_series.normalization_constants(potential, 1.0, Branch(branch))
        slope = complex(np.log(c_plus / c_minus))
        return lambda energy: slope * energy

    def dw_symbols(
        self,
        F: Union[ResidueSeries, Callable[[complex], complex]],
        energy: complex,
        hbar: float,
        N: int,
        branch: Branch = Branch.MINUS,
        order: Optional[int] = None,
    ) -> tuple[complex, complex]:
        """(cal A, cal B) = (e^{2 pi i F}, (C-/C+)^2 2 pi B0 hbar^{2F} / Gamma(1/2 - F)^2)."""
        f = self.residue_function(F, hbar, order)(energy)
        log_ratio = self.log_constant_ratio(N, branch)(energy)
        cal_a = np.exp(2j * np.pi * f)
        cal_b = (
            2 * np.pi
            * np.exp(-2 * log_ratio - 16.0 / (N * hbar) + 2 * f * np.log(hbar))
            * special.rgamma(0.5 - f) ** 2
        )
        return complex(cal_a), complex(cal_b)

    def condition_dw(
        self,
        F: Union[ResidueSeries, Callable[[complex], complex]],
        hbar: float,
        theta: float,
        N: int,
        side: Side,
        branch: Branch = Branch.MINUS,
        constants: Optional[Callable[[complex], tuple[complex, complex]]] = None,
        order: Optional[int] = None,
    ) -> QuantizationCondition:
        """
        D^(N)(E) de type DW en l'energie E/hbar.

        Chaque facteur s'ecrit 2 cos(pi F)/sqrt(B) + e^{-+ i pi F} sqrt(B) - 2 c_p,
        avec 2 cos(pi F) Gamma(1/2 - F) = 2 pi / Gamma(1/2 + F): seules des
        fonctions entieres (1/Gamma) apparaissent, sans division par un pole.
        """
        if hbar <= 0:
            raise ConfigError(f"hbar doit etre > 0 (recu {hbar})")
        side = Side(side)
        residue = self.residue_function(F, hbar, order)
        log_ratio = self.log_constant_ratio(N, branch, constants)
        log_hbar = math.log(hbar)
        half_log_b0 = -8.0 / (N * hbar)
        root_two_pi = math.sqrt(2 * math.pi)

        def terms(energy: complex) -> tuple[complex, complex, complex]:
            f = residue(energy)
            lr = log_ratio(energy)
            first = root_two_pi * special.rgamma(0.5 + f) * np.exp(-f * log_hbar + lr - half_log_b0)
            sqrt_b = root_two_pi * special.rgamma(0.5 - f) * np.exp(f * log_hbar - lr + half_log_b0)
            return f, first, sqrt_b

        def build(sign: int, c: float) -> Callable[[complex], complex]:
            def factor(energy: complex) -> complex:
                f, first, sqrt_b = terms(energy)
                return complex(first + np.exp(-sign * 1j * np.pi * f) * sqrt_b - 2 * c)

            return factor

        cosines = np.cos(self.bloch_angles(N, theta))
        side_factors = self._side_factors(build, cosines)

        def median_factor(c: float) -> Callable[[complex], complex]:
            def factor(energy: complex) -> complex:
                f, first, sqrt_b = terms(energy)
                return complex(first + np.cos(np.pi * f) * sqrt_b - 2 * c)

            return factor

        side_factors[Side.MEDIAN] = [median_factor(c) for c in cosines]
        factors = side_factors[Side.MEDIAN if self.side_sign(side) == 0 else side]

        def evaluator(energy: complex) -> complex:
            return complex(np.prod([f(energy) for f in factors]))

        logger.debug(f"[QUANTIZE:DW] N={N} hbar={hbar} theta={theta:.4f} side={side}")
        return QuantizationCondition(
            N=N,
            theta=theta,
            side=side,
            kind=ConditionKind.DW,
            evaluator=evaluator,
            factors=factors,
            hbar=hbar,
            side_factors=side_factors,
        )

    def default_dw_condition(
        self, N: int, hbar: float, theta: float, side: Side, order: Optional[int] = None
    ) -> QuantizationCondition:
        """Condition DW avec les F_k exacts et les constantes C+-,0 de la branche -sqrt(Q0)."""
        order = self._dw_order if order is None else order
        residue = self._wkb_series.residue_polynomials(N, order)
        return self.condition_dw(residue, hbar, theta, N, side, order=order)

    # =========================================================================
    # RESOLUTION
    # =========================================================================

    def solve_spectrum(
        self,
        condition: QuantizationCondition,
        bands: int,
        window: Optional[tuple[float, float]] = None,
    ) -> list[SpectralRecord]:
        """
        Racines par facteur p, etiquetees (n, p) et triees par (p, n).

        Les racines reelles sont isolees sur la mediane (reelle sur l'axe reel)
        puis confirmees par le principe de l'argument; pour un cote lateral
        elles sont ensuite polies dans le plan complexe.
        """
        if condition.hbar is None:
            raise ConfigError("hbar est requis pour etiqueter les racines")
        if bands < 1:
            return []
        lo, hi = window if window is not None else self._default_window(condition, bands)
        if hi <= lo:
            raise ConfigError(f"fenetre vide [{lo}, {hi}]")

        def solve_factor(p: int) -> list[SpectralRecord]:
            roots = self._real_roots(condition.side_factors[Side.MEDIAN][p], lo, hi)[:bands]
            records = []
            for n, root in enumerate(roots):
                value, converged = complex(root), True
                if self.side_sign(condition.side) != 0:
                    value, converged = self._polish(condition.side_factors[condition.side][p], root)
                records.append(self._record(condition, p, n, value, converged))
            return records

        with cf.ThreadPoolExecutor(max_workers=self._max_workers) as ex:
            per_factor = list(ex.map(solve_factor, range(condition.N)))
        records = sorted((r for rs in per_factor for r in rs), key=lambda r: (r.p, r.n))
        logger.info(
            f"[QUANTIZE:{condition.kind}] N={condition.N} theta={condition.theta:.4f} "
            f"{len(records)} racine(s) dans [{lo:.4g}, {hi:.4g}]"
        )
        return records

    @staticmethod
    def _record(condition: QuantizationCondition, p: int, n: int, value: complex, converged: bool) -> SpectralRecord:
        energy = condition.hbar * value if condition.rescaled else value
        return SpectralRecord(
            N=condition.N,
            hbar=condition.hbar,
            theta=condition.theta,
            p=p,
            n=n,
            energy_re=energy.real,
            energy_im=energy.imag,
            method=condition.method,
            side=condition.side,
            converged=converged,
        )

    def refine_spectrum(self, condition: QuantizationCondition, seeds: list[SpectralRecord]) -> list[SpectralRecord]:
        """
        Racines de `condition` pres de racines deja etiquetees (meme p, meme n).

        Sert aux conditions couteuses a evaluer (Airy a symboles de Voros):
        une secante par racine au lieu d'un balayage de la fenetre.
        """
        if condition.hbar is None:
            raise ConfigError("hbar est requis pour etiqueter les racines")
        factors = condition.side_factors[condition.side]
        records = []
        for seed in seeds:
            guess = seed.energy_re / condition.hbar if condition.rescaled else seed.energy_re
            value, converged = self._polish(factors[seed.p], guess)
            if self.side_sign(condition.side) == 0:
                value = complex(value.real)
            records.append(self._record(condition, seed.p, seed.n, value, converged))
        logger.info(f"[QUANTIZE:{condition.kind}] N={condition.N} {len(records)} racine(s) raffinee(s)")
        return records

    @staticmethod
    def _default_window(condition: QuantizationCondition, bands: int) -> tuple[float, float]:
        if condition.kind is ConditionKind.DW:
            return 1e-6, float(condition.N * bands)
        upper = min(2.0 - 1e-6, condition.hbar * condition.N * bands)
        return 1e-6, upper

    def _real_roots(self, f: Callable[[complex], complex], lo: float, hi: float, depth: int = 0) -> list[float]:
        grid = np.linspace(lo, hi, self._scan_points if depth == 0 else 64)
        values = np.array([f(x).real for x in grid])
        roots: list[float] = []
        for i in range(len(grid) - 1):
            a, b = grid[i], grid[i + 1]
            if values[i] == 0.0:
                roots.append(float(a))
                continue
            if values[i] * values[i + 1] < 0:
                if self._winding(f, a, b) < 1:
                    logger.debug(f"[QUANTIZE] changement de signe sans zero dans [{a:.6g}, {b:.6g}] (pole)")
                    continue
                roots.append(optimize.brentq(lambda x: f(x).real, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps))
            elif 0 < i < len(grid) - 1 and depth < 3:
                # paire de zeros proches invisible sur la grille
                if abs(values[i]) <= abs(values[i - 1]) and abs(values[i]) <= abs(values[i + 1]):
                    if self._winding(f, grid[i - 1], grid[i + 1]) >= 2:
                        roots.extend(
                            r for r in self._real_roots(f, grid[i - 1], grid[i + 1], depth + 1)
                            if all(abs(r - q) > 1e-12 for q in roots)
                        )
        return sorted(roots)

    def _winding(self, f: Callable[[complex], complex], a: float, b: float) -> int:
        """Nombre de zeros moins nombre de poles dans [a, b] x [-h, h]."""
        h = self._rect_height
        corners = [complex(a, -h), complex(b, -h), complex(b, h), complex(a, h), complex(a, -h)]
        samples = 32
        while True:
            path = np.concatenate(
                [np.linspace(z0, z1, samples, endpoint=False) for z0, z1 in zip(corners[:-1], corners[1:])]
                + [np.array([corners[-1]])]
            )
            values = np.array([f(z) for z in path])
            steps = np.angle(values[1:] / values[:-1])
            if np.max(np.abs(steps)) < np.pi / 2 or samples >= 2048:
                return int(round(np.sum(steps) / (2 * np.pi)))
            samples *= 2

    def _polish(self, f: Callable[[complex], complex], guess: float) -> tuple[complex, bool]:
        """Secante complexe depuis la racine mediane."""
        root, info = optimize.newton(
            f,
            complex(guess),
            x1=complex(guess) + 1e-6 * (1 + abs(guess)),
            tol=self._polish_tol,
            maxiter=100,
            full_output=True,
            disp=False,
        )
        if not info.converged:
            logger.warning(f"[QUANTIZE] polissage non converge depuis {guess:.10g}")
        return complex(root), bool(info.converged)

    # =========================================================================
    # STRUCTURE DES SECTEURS
    # =========================================================================

    @staticmethod
    def bloch_pairing(N: int, theta: float) -> dict:
        """
        Singulets et paires de facteurs D_p identiques.

        Pour theta = m pi on compare exactement les entiers m + 2p modulo 2N;
        sinon on compare les cosinus numeriquement.
        """
        m = theta / np.pi
        if abs(m - round(m)) < 1e-12:
            m = int(round(m))
            keys = [(m + 2 * p) % (2 * N) for p in range(N)]

            def same(p: int, q: int) -> bool:
                return keys[p] == keys[q] or (keys[p] + keys[q]) % (2 * N) == 0
        else:
            cosines = np.cos(QuantizeService.bloch_angles(N, theta))

            def same(p: int, q: int) -> bool:
                return abs(cosines[p] - cosines[q]) < 1e-12

        pairs = [(p, q) for p in range(N) for q in range(p + 1, N) if same(p, q)]
        paired = {p for pair in pairs for p in pair}
        return {"singlets": [p for p in range(N) if p not in paired], "pairs": pairs}

    # =========================================================================
    # SPLITTING
    # =========================================================================

    def splitting_estimate(self, N: int, hbar: float, theta: float, p: int, side: Side) -> SplittingEstimate:
        """
        delta pour E/(hbar N) = 1/2 + delta, termes instanton et bion separes.

        Raises:
            UnsupportedCaseError: Si N n'est pas 1 ou 2
        """
        if N not in (1, 2):
            raise UnsupportedCaseError("splitting_estimate", f"forme fermee connue pour N = 1, 2 seulement (N={N})")
        if not 0 <= p < N:
            raise ConfigError(f"p doit etre dans [0, {N}) (recu {p})")
        b0 = math.exp(-16.0 / (N * hbar))
        if b0 >= 0.1:
            logger.warning(f"[QUANTIZE:split] B0 = {b0:.3g} >= 0.1: hors du regime asymptotique")
        if N == 1:
            amplitude = 64.0 * b0 / (math.pi * hbar)
            c = math.cos(theta)
            log_term = math.log(hbar / 32.0)
        else:
            amplitude = 32.0 * b0 / (math.pi * hbar)
            c = (-1) ** p * math.cos(theta / 2)
            log_term = math.log(hbar / 16.0)
        side = Side(side)
        return SplittingEstimate(
            N=N,
            hbar=hbar,
            theta=theta,
            p=p,
            side=side,
            instanton=-math.sqrt(amplitude) * c,
            bion_real=amplitude * c * c * (np.euler_gamma - log_term),
            bion_imag=self.side_sign(side) * amplitude * math.pi / 2,
        )

    def splitting_records(self, N: int, hbar: float, theta: float, side: Side = Side.MEDIAN) -> list[SpectralRecord]:
        records = []
        for p in range(N):
            estimate = self.splitting_estimate(N, hbar, theta, p, side)
            records.append(
                SpectralRecord(
                    N=N,
                    hbar=hbar,
                    theta=theta,
                    p=p,
                    n=0,
                    energy_re=estimate.energy.real,
                    energy_im=estimate.energy.imag,
                    method=Method.SPLITTING_FORMULA,
                    side=Side(side),
                )
            )
        return records

    def partition_estimate(self, N: int, hbar: float, beta: float, theta: float) -> float:
        """Somme sur p de exp(-beta E_{0,p}) avec les formules de splitting (mediane)."""
        total = 0.0
        for p in range(N):
            estimate = self.splitting_estimate(N, hbar, theta, p, Side.MEDIAN)
            total += math.exp(-beta * estimate.energy.real)
        return total

    # =========================================================================
    # DICTIONNAIRE AIRY <-> DW
    # =========================================================================

    def cycles_from_residue(
        self,
        N: int,
        energy: complex,
        hbar: float,
        order: Optional[int] = None,
        branch: Branch = Branch.MINUS,
    ) -> CycleData:
        """Donnees cote Airy: E/omega_A = -F(E, hbar) et (C-/C+)^2."""
        order = self._dw_order if order is None else order
        residue = self.residue_function(self._wkb_series.residue_polynomials(N, order), hbar, order)
        log_ratio = self.log_constant_ratio(N, branch)(energy)
        return CycleData(
            kind=ConditionKind.AIRY,
            N=N,
            energy=complex(energy),
            hbar=hbar,
            ratio=-residue(energy),
            c_ratio_sq=complex(np.exp(-2 * log_ratio)),
        )

    def dictionary_translate(self, direction: TranslateDirection, cycles: CycleData) -> CycleData:
        """
        Applique le dictionnaire des cycles.

        AiryToDW: A -> e^{-2 pi i E/omega}, B -> 2 pi e^{-S_B/hbar} (C-/C+)^2 hbar^{-2E/omega} / Gamma(1/2 + E/omega)^2
        (les deux facteurs l coincident et leurs phases se compensent).
        DWToAiry reconstruit E/omega et (C-/C+)^2 a partir de (cal A, cal B).
        """
        direction = TranslateDirection(direction)
        if direction is TranslateDirection.AIRY_TO_DW:
            if cycles.c_ratio_sq is None:
                raise MissingDataError("(C-/C+)^2 pour traduire le cycle B")
            x = cycles.ratio
            cal_a = np.exp(-2j * np.pi * x)
            cal_b = (
                2 * np.pi
                * math.exp(-cycles.bion_action / cycles.hbar)
                * cycles.c_ratio_sq
                * np.exp(-2 * x * math.log(cycles.hbar))
                * special.rgamma(0.5 + x) ** 2
            )
            return CycleData(
                kind=ConditionKind.DW,
                N=cycles.N,
                energy=cycles.energy,
                hbar=cycles.hbar,
                ratio=x,
                c_ratio_sq=cycles.c_ratio_sq,
                values=(complex(cal_a), complex(cal_b)),
            )

        if cycles.values is None:
            raise MissingDataError("valeurs (cal A, cal B)")
        cal_a, cal_b = cycles.values
        principal = 1j * np.log(cal_a) / (2 * np.pi)
        # branche du log choisie au plus pres de E/omega ~ E/N
        shift = round((cycles.energy / cycles.N - principal).real)
        x = principal + shift
        gamma_sq = special.gamma(0.5 + x) ** 2
        c_ratio_sq = cal_b * gamma_sq * np.exp(2 * x * math.log(cycles.hbar)) / (
            2 * np.pi * math.exp(-cycles.bion_action / cycles.hbar)
        )
        return CycleData(
            kind=ConditionKind.AIRY,
            N=cycles.N,
            energy=cycles.energy,
            hbar=cycles.hbar,
            ratio=complex(x),
            c_ratio_sq=complex(c_ratio_sq),
            values=(complex(cal_a), complex(cal_b)),
        )

    # =========================================================================
    # CYCLES AIRY DEPUIS LES SYMBOLES DE VOROS
    # =========================================================================

    def airy_cycles(
        self, N: int, hbar: float, orders: Optional[int] = None
    ) -> tuple[Callable[[complex], complex], Callable[[complex], complex]]:
        """log A(E) et log B(E) par sommation tronquee des series de Voros."""
        core = self._wkb_series.potential_core

        def log_cycle(cycle: CycleKind) -> Callable[[complex], complex]:
            # les facteurs des deux cotes evaluent les memes energies
            @functools.lru_cache(maxsize=512)
            def evaluate(energy: complex) -> complex:
                potential = core.build_potential(N, EnergyMode.FIXED, energy)
                symbol = self._wkb_series.voros_symbol(potential, energy, cycle, 0, orders)
                return symbol.log_value(hbar)

            return evaluate

        return log_cycle(CycleKind.A), log_cycle(CycleKind.B)
