"""Problemes de Bloch pour l'oracle de diagonalisation."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from src.domain.exceptions import ConfigError
from src.domain.models.spectral import SpectralRecord


@dataclass(frozen=True)
class BlochProblem:
    """
    H = -(hbar^2/2) d^2/dx^2 + amplitude (1 - cos N x) sur le cercle, twist theta.

    Base d'ondes planes e^{i(m + theta/2pi) x}, m dans une fenetre centree sur
    -round(theta / 2 pi) de taille basis_size (impaire).

    Attributes:
        amplitude: 1 pour le modele physique, 0 pour le cas libre
    """

    N: int
    hbar: float
    theta: float
    basis_size: int = 65
    amplitude: float = 1.0

    def __post_init__(self):
        if self.N < 1:
            raise ConfigError(f"N doit etre >= 1 (recu {self.N})")
        if self.hbar <= 0:
            raise ConfigError(f"hbar doit etre > 0 (recu {self.hbar})")
        if self.basis_size < 3 or self.basis_size % 2 == 0:
            raise ConfigError(f"basis_size doit etre impair >= 3 (recu {self.basis_size})")

    @property
    def cutoff(self) -> int:
        return (self.basis_size - 1) // 2

    @property
    def modes(self) -> np.ndarray:
        center = -int(np.round(self.theta / (2 * np.pi)))
        return np.arange(center - self.cutoff, center + self.cutoff + 1)

    @property
    def momenta(self) -> np.ndarray:
        return self.modes + self.theta / (2 * np.pi)

    def doubled(self) -> BlochProblem:
        return BlochProblem(self.N, self.hbar, self.theta, 2 * self.basis_size - 1, self.amplitude)

    def with_theta(self, theta: float) -> BlochProblem:
        return BlochProblem(self.N, self.hbar, theta, self.basis_size, self.amplitude)

    def translation_phases(self) -> np.ndarray:
        """Valeurs propres de la translation x -> x + 2 pi / N sur chaque onde plane."""
        return np.exp(2j * np.pi * self.momenta / self.N)

    def dense_matrix(self) -> np.ndarray:
        """Matrice hermitienne pleine (tests et diagnostics)."""
        size = self.basis_size
        H = np.diag(0.5 * self.hbar**2 * self.momenta**2 + self.amplitude).astype(complex)
        off = -0.5 * self.amplitude
        for i in range(size - self.N):
            H[i, i + self.N] = off
            H[i + self.N, i] = off
        return H


@dataclass
class BlochDecomposition:
    """
    Spectres par secteur p et diagnostics de la decomposition.

    Attributes:
        records: valeurs propres etiquetees (n = indice dans le secteur)
        counts: nombre de niveaux par p
        matches_full: les plus bas niveaux de l'union des secteurs sont ceux de la matrice pleine
        projector_error: max |P_p^2 v - P_p v| sur les vecteurs propres
        ambiguous: niveaux dont la valeur propre de translation est hors de la grille
    """

    records: list[SpectralRecord]
    counts: dict[int, int]
    matches_full: bool
    projector_error: float
    ambiguous: list[int] = field(default_factory=list)


@dataclass(frozen=True)
class BandSplitting:
    """Bords d'une bande: niveau (theta=0, p=0) et bord oppose."""

    N: int
    hbar: float
    band: int
    lower: float
    upper: float
    theta_edge: float
    p_edge: int

    @property
    def gap(self) -> float:
        return self.upper - self.lower

    @property
    def reduced_gap(self) -> float:
        """Ecart en delta, avec E / (hbar N) = 1/2 + delta."""
        return self.gap / (self.hbar * self.N)
