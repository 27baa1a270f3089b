"""Service du potentiel: construction, points tournants, donnees classiques."""
import logging

import numpy as np
from scipy import integrate

from src.domain.enums import EnergyMode
from src.domain.exceptions import InvalidPotentialError
from src.domain.models.potential import ClassicalData, PotentialSpec, TurningPoint

logger = logging.getLogger(__name__)

_MAX_WINDOW_PERIODS = 8


class PotentialCore:
    """Construit le symbole Q et extrait ses zeros et constantes classiques."""

    def __init__(self, newton_iterations: int = 50, multiplicity_rtol: float = 1e-8):
        self._newton_iterations = newton_iterations
        self._multiplicity_rtol = multiplicity_rtol

    def build_potential(self, N: int, energy_mode: EnergyMode | str, energy: complex = 0j) -> PotentialSpec:
        """
        Construit un PotentialSpec valide.

        Raises:
            InvalidPotentialError: Si N < 1
        """
        potential = PotentialSpec(N=N, energy_mode=EnergyMode(energy_mode), energy=energy)
        if potential.is_degenerate:
            logger.info(f"[POTENTIAL:N={N}] E={potential.energy.real} degenere: points tournants fusionnes")
        return potential

    # =========================================================================
    # POINTS TOURNANTS
    # =========================================================================

    def turning_points(
        self,
        potential: PotentialSpec,
        window: tuple[float, float] = (0.0, 2 * np.pi),
        hbar: float = 0.0,
    ) -> list[TurningPoint]:
        """
        Zeros de Q dans la bande lo <= Re x < hi.

        En mode RESCALED les zeros dependent de hbar; a hbar = 0 ils fusionnent
        aux minima 2 pi k / N.
        """
        lo, hi = window
        if hi <= lo:
            raise InvalidPotentialError(f"fenetre vide [{lo}, {hi})")
        if hi - lo > _MAX_WINDOW_PERIODS * 2 * np.pi:
            raise InvalidPotentialError(f"fenetre trop large ({hi - lo:.3g} > {_MAX_WINDOW_PERIODS} periodes)")

        N = potential.N
        energy = potential.energy if potential.energy_mode is EnergyMode.FIXED else hbar * potential.energy
        # cos(N x) = 1 - E
        base = np.arccos(complex(1.0 - energy)) / N
        period = potential.period
        k_min = int(np.floor(lo / period)) - 1
        k_max = int(np.ceil(hi / period)) + 1

        candidates = []
        for k in range(k_min, k_max + 1):
            for sign in (1, -1):
                x = sign * base + k * period
                x = self._polish(potential, x, hbar)
                if lo - 1e-12 <= x.real < hi - 1e-12:
                    candidates.append(x)

        points: list[TurningPoint] = []
        for x in sorted(candidates, key=lambda z: (round(z.real, 9), round(z.imag, 9))):
            if any(abs(x - p.location) < 1e-9 for p in points):
                continue
            points.append(self._classify(potential, x))

        logger.debug(f"[POTENTIAL:N={N}] {len(points)} point(s) tournant(s) dans [{lo:.3f}, {hi:.3f})")
        return points

    def _polish(self, potential: PotentialSpec, x: complex, hbar: float) -> complex:
        """Newton complexe garde sur Q (sans effet pres d'un zero double)."""
        x = complex(x)
        for _ in range(self._newton_iterations):
            q = complex(potential.Q(x, hbar))
            dq = complex(potential.dQ(x))
            if abs(q) < 1e-15:
                break
            if abs(dq) < 1e-6:
                break
            step = q / dq
            if abs(step) > 0.1:
                step *= 0.1 / abs(step)
            x -= step
            if abs(step) < 1e-16:
                break
        if abs(x.imag) < 1e-14:
            x = complex(x.real, 0.0)
        return x

    def _classify(self, potential: PotentialSpec, x: complex) -> TurningPoint:
        dq = abs(complex(potential.dQ(x)))
        d2q = abs(complex(potential.d2Q(x)))
        multiplicity = 2 if dq < self._multiplicity_rtol * max(1.0, d2q) else 1
        well = int(np.rint(x.real / potential.period)) % potential.N
        return TurningPoint(location=x, multiplicity=multiplicity, well_index=well)

    # =========================================================================
    # DONNEES CLASSIQUES
    # =========================================================================

    def classical_data(self, potential: PotentialSpec) -> ClassicalData:
        """Action du bion par quadrature, verifiee contre 16/N; frequence harmonique N."""
        N = potential.N
        period = potential.period
        integral, error = integrate.quad(
            lambda x: np.sqrt(2.0 * (1.0 - np.cos(N * x))), 0.0, period, epsabs=1e-14, epsrel=1e-13, limit=200
        )
        quadrature = 2.0 * integral
        closed_form = 16.0 / N
        if abs(quadrature - closed_form) > 1e-10 * closed_form:
            logger.warning(
                f"[POTENTIAL:N={N}] S_B quadrature {quadrature:.14f} != 16/N (ecart {quadrature - closed_form:.2e})"
            )
        frequency = float(np.sqrt(potential.d2Q(0.0).real / 2.0))
        return ClassicalData(
            bion_action=closed_form,
            instanton_action=closed_form / 2.0,
            harmonic_frequency=frequency,
            well_minima=[k * period for k in range(N)],
            quadrature_bion_action=quadrature,
        )
