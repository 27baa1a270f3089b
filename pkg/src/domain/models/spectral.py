"""Modeles de la quantification: monodromies, conditions, enregistrements spectraux."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
import sympy as sp
from pydantic import BaseModel, Field

from src.domain.enums import ConditionKind, Method, Side


@dataclass(frozen=True)
class Monodromy2x2:
    """
    Matrice 2x2 unimodulaire (numerique ou sympy) avec sa provenance.

    Attributes:
        entries: np.ndarray complexe (2, 2) ou sympy.Matrix
        provenance: facteurs elementaires dans l'ordre du produit
    """

    entries: object
    provenance: tuple[str, ...] = ()

    @property
    def is_symbolic(self) -> bool:
        return isinstance(self.entries, sp.MatrixBase)

    def det(self):
        if self.is_symbolic:
            return sp.simplify(self.entries.det())
        return complex(np.linalg.det(self.entries))

    def trace(self):
        if self.is_symbolic:
            return sp.simplify(self.entries.trace())
        return complex(np.trace(self.entries))

    def __matmul__(self, other: Monodromy2x2) -> Monodromy2x2:
        if self.is_symbolic or other.is_symbolic:
            product = sp.Matrix(self.entries) * sp.Matrix(other.entries)
        else:
            product = self.entries @ other.entries
        return Monodromy2x2(product, self.provenance + other.provenance)


@dataclass
class QuantizationCondition:
    """
    Condition D(E) = 0 factorisee sur les secteurs de Bloch p = 0..N-1.

    Les evaluateurs prennent l'energie dans l'unite de la condition
    (E physique pour AIRY, E/hbar pour DW).

    Attributes:
        factors: D_p(E) pour chaque p
        evaluator: forme globale (non factorisee)
        hbar: requis pour convertir les racines en energie physique
    """

    N: int
    theta: float
    side: Side
    kind: ConditionKind
    evaluator: Callable[[complex], complex]
    factors: list[Callable[[complex], complex]]
    hbar: Optional[float] = None
    side_factors: dict[Side, list[Callable[[complex], complex]]] = field(default_factory=dict)

    @property
    def method(self) -> Method:
        return Method.AIRY_WKB if self.kind is ConditionKind.AIRY else Method.DW_WKB

    @property
    def rescaled(self) -> bool:
        return self.kind is ConditionKind.DW

    def factor_product(self, energy: complex) -> complex:
        return complex(np.prod([factor(energy) for factor in self.factors]))


class SpectralRecord(BaseModel):
    """Ligne de sortie unifiee: racine WKB, formule de splitting ou valeur propre oracle."""

    N: int = Field(..., ge=1)
    hbar: float = Field(..., gt=0)
    theta: float
    p: int = Field(..., ge=0)
    n: int = Field(..., ge=0)
    energy_re: float
    energy_im: float = 0.0
    method: Method
    side: Side = Side.NONE
    converged: bool = True

    @property
    def energy(self) -> complex:
        return complex(self.energy_re, self.energy_im)

    @property
    def rescaled_energy(self) -> complex:
        return self.energy / self.hbar

    def row(self) -> dict:
        """Ligne de table avec E physique et E/hbar."""
        return {
            "N": self.N,
            "hbar": self.hbar,
            "theta": self.theta,
            "p": self.p,
            "n": self.n,
            "E_re": self.energy_re,
            "E_im": self.energy_im,
            "E_over_hbar_re": self.rescaled_energy.real,
            "E_over_hbar_im": self.rescaled_energy.imag,
            "method": self.method.value,
            "side": self.side.value,
            "converged": self.converged,
        }


@dataclass(frozen=True)
class SplittingEstimate:
    """
    delta = instanton + bion_real + bion_imag, avec E/(hbar N) = 1/2 + delta.

    Attributes:
        instanton: terme en sqrt(B0)
        bion_real: terme en B0 (gamma - log)
        bion_imag: ambiguite imaginaire +/- (pi/2) (coefficient de B0)
    """

    N: int
    hbar: float
    theta: float
    p: int
    side: Side
    instanton: float
    bion_real: float
    bion_imag: float

    @property
    def delta(self) -> complex:
        return complex(self.instanton + self.bion_real, self.bion_imag)

    @property
    def rescaled_energy(self) -> complex:
        return self.N * (0.5 + self.delta)

    @property
    def energy(self) -> complex:
        return self.hbar * self.rescaled_energy


@dataclass(frozen=True)
class CycleData:
    """
    Donnees d'un couple de cycles (A, B) d'un cote du dictionnaire Airy/DW.

    Tous les cycles A du potentiel periodique sont identiques: un seul
    rapport E/omega_A et un seul (C-/C+)^2 suffisent.

    Attributes:
        kind: AIRY (symboles A, B) ou DW (symboles cal A, cal B)
        energy: E/hbar
        ratio: E / omega_A(E, hbar)
        c_ratio_sq: (C-/C+)^2, None si inconnu
        values: (A, B) ou (cal A, cal B)
    """

    kind: ConditionKind
    N: int
    energy: complex
    hbar: float
    ratio: complex
    c_ratio_sq: Optional[complex] = None
    values: Optional[tuple[complex, complex]] = None

    @property
    def bion_action(self) -> float:
        return 16.0 / self.N

    @property
    def omega(self) -> complex:
        return self.energy / self.ratio if self.ratio != 0 else complex(self.N)


def side_sign(side: Side, pairing: str = "direct") -> int:
    """+1 pour la forme D^+ (Im hbar > 0), -1 pour D^-, 0 pour la mediane."""
    side = Side(side)
    if side in (Side.MEDIAN, Side.NONE):
        return 0
    sign = 1 if side is Side.UPPER else -1
    return sign if pairing == "direct" else -sign
