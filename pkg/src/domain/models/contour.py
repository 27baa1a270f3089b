"""Porteurs numeriques de la recursion de Riccati sur un contour ferme."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from src.domain.enums import ContourKind, CycleKind, Side
from src.domain.models.series import HbarSeries


@dataclass
class ContourSampling:
    """
    Echantillonnage uniforme d'une ellipse x(phi) = c + rx cos(phi) + i ry sin(phi).

    Attributes:
        kind: paire de points tournants ou point double encercle
        center, rx, ry: geometrie de l'ellipse
        num_nodes: nombre de noeuds (puissance de 2)
        values: S_n aux noeuds, indexe par n (n = -1, 0, 1, ...)
        branch_sign: signe applique a S_{-1}
    """

    kind: ContourKind
    center: complex
    rx: float
    ry: float
    num_nodes: int
    enclosed: tuple[complex, ...] = ()
    values: dict[int, np.ndarray] = field(default_factory=dict)
    branch_sign: int = 1

    @property
    def phi(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.num_nodes) / self.num_nodes

    @property
    def nodes(self) -> np.ndarray:
        phi = self.phi
        return self.center + self.rx * np.cos(phi) + 1j * self.ry * np.sin(phi)

    @property
    def dx_dphi(self) -> np.ndarray:
        phi = self.phi
        return -self.rx * np.sin(phi) + 1j * self.ry * np.cos(phi)

    def refined(self) -> ContourSampling:
        return ContourSampling(self.kind, self.center, self.rx, self.ry, 2 * self.num_nodes, self.enclosed)

    def integrate(self, order: int) -> complex:
        """Quadrature trapeze de la somme fermee de S_order dx."""
        weights = self.dx_dphi * (2 * np.pi / self.num_nodes)
        return complex(np.sum(self.values[order] * weights))

    def integrand_mass(self, order: int) -> float:
        """Somme de |S_order| |dx|, echelle de l'erreur d'arrondi de integrate()."""
        weights = np.abs(self.dx_dphi) * (2 * np.pi / self.num_nodes)
        return float(np.sum(np.abs(self.values[order]) * weights))


@dataclass(frozen=True)
class VorosSymbol:
    """
    Symbole de Voros: log_value = somme fermee de S_odd dx, serie a prefacteur hbar^-1.

    Les coefficients d'indice pair (puissances paires de hbar) sont nuls.
    """

    cycle: CycleKind
    wells: tuple[int, ...]
    energy: complex
    N: int
    log_value: HbarSeries
    side: Side = Side.NONE
    num_nodes: int = 0

    def value(self, hbar: complex) -> complex:
        """Symbole exponentie avec la serie tronquee."""
        return complex(np.exp(self.log_value(hbar)))

    def sqrt_value(self, hbar: complex) -> complex:
        return complex(np.exp(0.5 * self.log_value(hbar)))
