"""Objets decrivant le potentiel V(x) = 1 - cos(N x) et ses donnees classiques."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from src.domain.enums import EnergyMode
from src.domain.exceptions import InvalidPotentialError


@dataclass(frozen=True)
class PotentialSpec:
    """
    Symbole Q(x, hbar) = 2(V(x) - E) pour V(x) = 1 - cos(N x).

    En mode RESCALED l'energie est remplacee par hbar*E, si bien que
    Q = Q0 + hbar*Q1 avec Q0 = 2(1 - cos N x) et Q1 = -2E.

    Attributes:
        N: nombre de minima par periode 2 pi
        energy_mode: convention d'energie
        energy: E (complexe)
    """

    N: int
    energy_mode: EnergyMode
    energy: complex = 0j

    def __post_init__(self):
        if not isinstance(self.N, (int, np.integer)) or self.N < 1:
            raise InvalidPotentialError(f"N doit etre un entier >= 1 (recu {self.N!r})")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "energy_mode", EnergyMode(self.energy_mode))
        object.__setattr__(self, "energy", complex(self.energy))

    @property
    def period(self) -> float:
        return 2 * np.pi / self.N

    @property
    def is_degenerate(self) -> bool:
        """E = 0 ou E = 2 en mode FIXED: points tournants fusionnes."""
        if self.energy_mode is not EnergyMode.FIXED or self.energy.imag != 0:
            return False
        return self.energy.real in (0.0, 2.0)

    def V(self, x):
        return 1.0 - np.cos(self.N * np.asarray(x))

    def q0(self, x):
        """Symbole d'ordre dominant (E inclus en mode FIXED)."""
        x = np.asarray(x, dtype=complex)
        if self.energy_mode is EnergyMode.FIXED:
            return 2.0 * (1.0 - np.cos(self.N * x) - self.energy)
        return 2.0 * (1.0 - np.cos(self.N * x))

    def q1(self, x):
        """Correction d'ordre hbar (non nulle seulement en mode RESCALED)."""
        x = np.asarray(x, dtype=complex)
        if self.energy_mode is EnergyMode.FIXED:
            return np.zeros_like(x)
        return np.full_like(x, -2.0 * self.energy)

    def Q(self, x, hbar: complex = 0.0):
        return self.q0(x) + hbar * self.q1(x)

    def dQ(self, x):
        return 2.0 * self.N * np.sin(self.N * np.asarray(x, dtype=complex))

    def d2Q(self, x):
        return 2.0 * self.N**2 * np.cos(self.N * np.asarray(x, dtype=complex))

    def with_energy(self, energy: complex) -> PotentialSpec:
        return PotentialSpec(self.N, self.energy_mode, energy)


@dataclass(frozen=True)
class TurningPoint:
    """Zero de Q dans le plan x."""

    location: complex
    multiplicity: int
    well_index: int

    @property
    def is_double(self) -> bool:
        return self.multiplicity == 2


@dataclass(frozen=True)
class ClassicalData:
    """Constantes classiques du potentiel."""

    bion_action: float
    instanton_action: float
    harmonic_frequency: float
    well_minima: list[float] = field(default_factory=list)
    quadrature_bion_action: float | None = None
