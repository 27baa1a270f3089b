"""
Service WKB: recursion de Riccati sur contours fermes, symboles de Voros,
residu F(E, hbar) et constantes de normalisation du point double.

Les S_n sont echantillonnes sur une ellipse uniforme en phi; la derivee en x
est la derivee spectrale en phi divisee par dx/dphi.
"""
import logging
from fractions import Fraction
from typing import Callable

import numpy as np
import sympy as sp

from src.config import settings
from src.domain.enums import Branch, ContourKind, CycleKind, EnergyMode, Side
from src.domain.exceptions import (
    ConfigError,
    ContourTooCloseError,
    ConvergenceError,
    InvalidPotentialError,
    MissingDataError,
    UnsupportedCaseError,
)
from src.domain.models.contour import ContourSampling, VorosSymbol
from src.domain.models.potential import PotentialSpec
from src.domain.models.series import HbarSeries, ResidueSeries
from src.application.services.exact_residue import ExactResidueSolver
from src.application.services.potential_core import PotentialCore

logger = logging.getLogger(__name__)


class LocalMap:
    """Coefficients en x de y0(x), y1(x) au point double x = 0 (E symbolique)."""

    energy_symbol = sp.Symbol("E")

    def __init__(self, N: int, branch: Branch, y0: list[sp.Expr], y1: list[sp.Expr]):
        self.N = N
        self.branch = branch
        self.y0 = y0
        self.y1 = y1

    def numeric(self, energy: complex) -> tuple[np.ndarray, np.ndarray]:
        subs = {self.energy_symbol: energy}
        return (
            np.array([complex(sp.N(c.subs(subs))) for c in self.y0]),
            np.array([complex(sp.N(c.subs(subs))) for c in self.y1]),
        )


class WkbSeriesService:
    """Symboles de Voros et residus DW a partir de la recursion de Riccati."""

    def __init__(
        self,
        potential_core: PotentialCore,
        exact_residue: ExactResidueSolver,
        nodes: int = settings.WKB_NODES,
        max_nodes: int = settings.WKB_MAX_NODES,
        rtol: float = settings.WKB_RTOL,
        order_cap: int = settings.WKB_MAX_ORDER,
        default_orders: int = settings.WKB_DEFAULT_ORDERS,
        conditioning_bound: float = settings.WKB_CONDITIONING_BOUND,
    ):
        self._potential_core = potential_core
        self._exact_residue = exact_residue
        self._nodes = nodes
        self._max_nodes = max_nodes
        self._rtol = rtol
        self._order_cap = order_cap
        self._default_orders = default_orders
        self._conditioning_bound = conditioning_bound

    @property
    def potential_core(self) -> PotentialCore:
        return self._potential_core

    def rescaled_potential(self, N: int) -> PotentialSpec:
        return self._potential_core.build_potential(N, EnergyMode.RESCALED)

    # =========================================================================
    # CONTOURS
    # =========================================================================

    def cycle_contour(self, potential: PotentialSpec, cycle: CycleKind, well: int = 0) -> ContourSampling:
        """
        Ellipse encerclant la paire de points tournants d'un cycle.

        Le cycle A du puits k est centre sur le minimum 2 pi k / N et coupe l'axe
        reel aux sommets des barrieres; le cycle B est centre sur la barriere
        entre les puits k et k+1 et coupe l'axe reel aux deux minima.
        """
        if potential.energy_mode is not EnergyMode.FIXED:
            raise InvalidPotentialError("les cycles de Voros sont definis en mode FIXED")
        period = potential.period
        center = well * period if cycle is CycleKind.A else (well + 0.5) * period
        points = self._potential_core.turning_points(potential, (center - period, center + period))
        enclosed = tuple(
            p.location for p in points if abs(p.location.real - center) < 0.5 * period - 1e-12
        )
        return ContourSampling(
            kind=ContourKind.ENCIRCLING_PAIR,
            center=complex(center),
            rx=0.5 * period,
            ry=0.25 * period,
            num_nodes=self._nodes,
            enclosed=enclosed,
        )

    def point_contour(self, potential: PotentialSpec, radius: float | None = None) -> ContourSampling:
        """Cercle autour du point tournant double x = 0."""
        period = potential.period
        radius = 0.5 * period if radius is None else radius
        if not 0 < radius < period:
            raise InvalidPotentialError(
                f"rayon {radius:.3g} hors du disque d'analyticite local (0, {period:.3g})"
            )
        return ContourSampling(
            kind=ContourKind.ENCIRCLING_POINT,
            center=0j,
            rx=radius,
            ry=radius,
            num_nodes=self._nodes,
            enclosed=(0j,),
        )

    # =========================================================================
    # RECURSION DE RICCATI
    # =========================================================================

    def riccati_orders(
        self,
        potential: PotentialSpec,
        E: complex,
        contour: ContourSampling,
        max_order: int,
        branch_sign: int = 1,
    ) -> ContourSampling:
        """
        Remplit contour.values[n] = S_n aux noeuds, n = -1..max_order.

        Args:
            potential: symbole Q
            E: energie (remplace celle du potentiel)
            contour: contour vide (geometrie seule)
            max_order: dernier ordre n calcule
            branch_sign: +1 ou -1 pour S_{-1} = +/- sqrt(Q0)

        Raises:
            ConfigError: si max_order depasse le plafond configure
            ContourTooCloseError: si max|S_0| depasse la borne de conditionnement
        """
        if max_order + 2 > self._order_cap:
            raise ConfigError(f"{max_order + 2} ordres S_n demandes, plafond {self._order_cap}")
        potential = potential.with_energy(E)
        x = contour.nodes
        dx = contour.dx_dphi
        q0 = potential.q0(x)
        q1 = potential.q1(x)

        s_m1 = self._continuous_sqrt(q0)
        ref = self._branch_reference(potential, contour, x[0])
        if (s_m1[0] / ref).real < 0:
            s_m1 = -s_m1
        s_m1 = branch_sign * s_m1

        derivative = self._spectral_derivative(contour.num_nodes, dx)
        values = {-1: s_m1}
        for n in range(0, max_order + 1):
            rhs = -derivative(values[n - 1])
            if n == 0:
                rhs = rhs + q1
            for j in range(0, n):
                rhs = rhs - values[j] * values[n - 1 - j]
            values[n] = rhs / (2.0 * s_m1)
            if n == 0:
                self._check_conditioning(potential, contour, values[0])

        contour.values = values
        contour.branch_sign = branch_sign
        return contour

    @staticmethod
    def _continuous_sqrt(q: np.ndarray) -> np.ndarray:
        """Racine de Q suivie par continuite le long du contour."""
        root = np.sqrt(q.astype(complex))
        for j in range(1, len(root)):
            if abs(root[j] - root[j - 1]) > abs(root[j] + root[j - 1]):
                root[j] = -root[j]
        return root

    @staticmethod
    def _branch_reference(potential: PotentialSpec, contour: ContourSampling, x0: complex) -> complex:
        """Valeur de reference de S_{-1} au noeud 0 (fixe le signe de la branche)."""
        if contour.kind is ContourKind.ENCIRCLING_POINT:
            return complex(2.0 * np.sin(potential.N * x0 / 2.0))
        q = complex(potential.q0(x0))
        return np.sqrt(q) if q.real >= 0 else 1j * np.sqrt(-q)

    @staticmethod
    def _spectral_derivative(num_nodes: int, dx_dphi: np.ndarray) -> Callable[[np.ndarray], np.ndarray]:
        k = np.fft.fftfreq(num_nodes, d=1.0 / num_nodes)
        # regle des 2/3: les modes hauts sont domines par le bruit d'arrondi
        mask = np.abs(k) < num_nodes / 3.0
        ik = 1j * k * mask

        def derivative(values: np.ndarray) -> np.ndarray:
            return np.fft.ifft(ik * np.fft.fft(values)) / dx_dphi

        return derivative

    def _check_conditioning(self, potential: PotentialSpec, contour: ContourSampling, s0: np.ndarray) -> None:
        max_s0 = float(np.max(np.abs(s0)))
        if max_s0 <= self._conditioning_bound:
            return
        nodes = contour.nodes
        radius = max(contour.rx, contour.ry)
        others = [
            p.location
            for p in self._potential_core.turning_points(
                potential, (contour.center.real - 2 * potential.period, contour.center.real + 2 * potential.period)
            )
            if all(abs(p.location - e) > 1e-9 for e in contour.enclosed)
        ]
        d_in = min((np.min(np.abs(nodes - e)) for e in contour.enclosed), default=radius)
        d_out = min((np.min(np.abs(nodes - o)) for o in others), default=radius)
        suggested = radius + 0.5 * (d_out - d_in)
        raise ContourTooCloseError(max_s0, self._conditioning_bound, suggested)

    def _converged(
        self,
        contour: ContourSampling,
        evaluate: Callable[[ContourSampling], tuple[np.ndarray, np.ndarray]],
    ):
        """
        Double le nombre de noeuds jusqu'a accord de deux resolutions.

        L'ecart de chaque ordre est mesure relativement a la masse de son
        integrande (somme de |S_n| |dx|), qui borne l'erreur d'arrondi.
        """
        previous, _ = evaluate(contour)
        residual = float("inf")
        while contour.num_nodes < self._max_nodes:
            contour = contour.refined()
            current, scale = evaluate(contour)
            residual = float(np.max(np.abs(current - previous) / np.maximum(scale, 1e-300)))
            logger.debug(f"[WKB:nodes={contour.num_nodes}] ecart relatif {residual:.2e}")
            if residual <= self._rtol:
                return current, contour
            previous = current
        raise ConvergenceError("quadrature sur contour", residual, self._max_nodes)

    # =========================================================================
    # SYMBOLES DE VOROS
    # =========================================================================

    def voros_symbol(
        self,
        potential: PotentialSpec,
        E: complex,
        cycle: CycleKind,
        well: int = 0,
        max_order: int | None = None,
    ) -> VorosSymbol:
        """
        log A ou log B comme HbarSeries de prefacteur hbar^-1.

        Args:
            max_order: nombre d'ordres non nuls de S_odd (hbar^-1, hbar^1, ...)
        """
        orders = self._default_orders if max_order is None else max_order
        if orders < 1:
            raise ConfigError("au moins un ordre de S_odd est requis")
        last_n = 2 * orders - 3
        potential = potential.with_energy(E)
        contour = self.cycle_contour(potential, cycle, well)
        logger.info(f"[WKB:{cycle}] N={potential.N} E={E} puits={well} ordres={orders}")

        def evaluate(c: ContourSampling) -> tuple[np.ndarray, np.ndarray]:
            self.riccati_orders(potential, E, c, max(last_n, 0))
            odd = [(k - 1) % 2 == 1 for k in range(last_n + 2)]
            values = np.array([c.integrate(k - 1) if odd[k] else 0j for k in range(last_n + 2)])
            scales = np.array([c.integrand_mass(k - 1) if odd[k] else 1.0 for k in range(last_n + 2)])
            return values, scales

        coefficients, contour = self._converged(contour, evaluate)
        if cycle is CycleKind.B and coefficients[0].real > 0:
            coefficients = -coefficients
        wells = (well,) if cycle is CycleKind.A else (well, (well + 1) % potential.N)
        return VorosSymbol(
            cycle=cycle,
            wells=wells,
            energy=complex(E),
            N=potential.N,
            log_value=HbarSeries(coefficients, Fraction(-1)),
            side=Side.NONE,
            num_nodes=contour.num_nodes,
        )

    # =========================================================================
    # POINT DOUBLE (DW)
    # =========================================================================

    def residue_F(
        self,
        potential: PotentialSpec,
        E: complex,
        max_order: int,
        radius: float | None = None,
    ) -> HbarSeries:
        """
        F(hbar) = (1/2 pi i) somme fermee de S_odd^DW dx, ordre par ordre.

        S_odd^DW = (S^+ - S^-)/2 avec S_{-1}^+ = +2 sin(N x / 2).
        """
        if potential.energy_mode is not EnergyMode.RESCALED:
            raise InvalidPotentialError("residue_F exige le mode RESCALED")
        contour = self.point_contour(potential, radius)

        def evaluate(c: ContourSampling) -> tuple[np.ndarray, np.ndarray]:
            plus = self.riccati_orders(potential, E, c, max_order, branch_sign=1)
            integrals_plus = np.array([plus.integrate(k) for k in range(max_order + 1)])
            scales = np.array([plus.integrand_mass(k) for k in range(max_order + 1)])
            minus = self.riccati_orders(potential, E, c, max_order, branch_sign=-1)
            integrals_minus = np.array([minus.integrate(k) for k in range(max_order + 1)])
            return (integrals_plus - integrals_minus) / (2.0 * 2j * np.pi), scales / (2 * np.pi)

        coefficients, contour = self._converged(contour, evaluate)
        logger.info(f"[WKB:DW] N={potential.N} E={E} F_0={coefficients[0]:.12g} ({contour.num_nodes} noeuds)")
        return HbarSeries(coefficients)

    def residue_polynomials(self, N: int, max_order: int) -> ResidueSeries:
        """Polynomes exacts F_k(E), utilises par la quantification et le labo Borel."""
        return self._exact_residue.residue_polynomials(N, max_order)

    def local_map_coefficients(
        self, potential: PotentialSpec, max_x_order: int, branch: Branch | None
    ) -> LocalMap:
        """
        Coefficients de y0(x) et y1(x) (puissances 0..max_x_order) au point double.

        Pour la branche +sqrt(Q0): y0^2/4 = integrale de sqrt(Q0), soit
        y0 = sqrt(32/N) sin(N x / 4), et y0 y1 = (2E/N) log cos(N x / 4).
        La branche -sqrt(Q0) multiplie y0 et y1 par i.
        """
        if branch is None:
            raise MissingDataError("choix de branche (+/- sqrt(Q0))")
        if potential.energy_mode is not EnergyMode.RESCALED:
            raise InvalidPotentialError("la carte locale DW exige le mode RESCALED")
        x = sp.Symbol("x")
        E = LocalMap.energy_symbol
        N = sp.Integer(potential.N)
        phase = sp.Integer(1) if Branch(branch) is Branch.PLUS else sp.I
        y0 = phase * sp.sqrt(32 / N) * sp.sin(N * x / 4)
        y1 = phase * (2 * E / N) * sp.log(sp.cos(N * x / 4)) / (sp.sqrt(32 / N) * sp.sin(N * x / 4))

        def coefficients(expr: sp.Expr) -> list[sp.Expr]:
            expansion = sp.series(expr, x, 0, max_x_order + 1).removeO()
            return [sp.simplify(expansion.coeff(x, k)) for k in range(max_x_order + 1)]

        return LocalMap(potential.N, Branch(branch), coefficients(y0), coefficients(y1))

    def normalization_constants(
        self,
        potential: PotentialSpec,
        E: complex,
        branch: Branch = Branch.MINUS,
        order: int = 0,
    ) -> tuple[complex, complex]:
        """
        (C_{+,0}, C_{-,0}) par la limite x -> 0 du recollement local/global.

        L'echelle (4 a1 / N)^2 = 32/N vient du coefficient dominant a1 de y0.
        """
        if order > 0:
            raise UnsupportedCaseError("normalization_constants", f"ordre {order} de C+-(hbar) non implemente")
        local = self.local_map_coefficients(potential, 1, Branch.PLUS)
        a1 = float(sp.N(local.y0[1]))
        N = potential.N
        scale = (4.0 * a1 / N) ** 2
        kappa = complex(E) / (2 * N)
        if Branch(branch) is Branch.MINUS:
            return complex(scale ** (-kappa)), complex(scale**kappa)
        return (
            complex(np.exp(1j * np.pi * kappa) * scale**kappa),
            complex(np.exp(-1j * np.pi * kappa) * scale ** (-kappa)),
        )
