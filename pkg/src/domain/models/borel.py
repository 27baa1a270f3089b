"""Resultats du laboratoire de Borel: transformees, sommes laterales, singularites."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from src.domain.models.series import HbarSeries


@dataclass(frozen=True)
class BorelSummable:
    """
    Transformee de Borel b_k = c_k / k! d'une HbarSeries.

    La somme vaut hbar^nu * integrale_0^inf e^{-u} B(hbar u) du, ou nu est
    le prefacteur de la serie source.

    Attributes:
        pade_degree: (L, M) du Pade de B
        ray_angle: angle du rayon de Laplace
        exact_coefficients: b_k rationnels si la serie source est exacte
    """

    source: HbarSeries
    borel_coefficients: tuple[complex, ...]
    pade_degree: tuple[int, int]
    ray_angle: float = 0.0
    exact_coefficients: Optional[tuple[Fraction, ...]] = None

    def __post_init__(self):
        L, M = self.pade_degree
        if L < 0 or M < 0 or L + M > len(self.borel_coefficients) - 1:
            raise ValueError(f"degres de Pade ({L}, {M}) incompatibles avec {len(self.borel_coefficients)} coefficients")

    @classmethod
    def from_series(cls, series: HbarSeries, pade_degree: Optional[tuple[int, int]] = None, ray_angle: float = 0.0):
        coefficients = tuple(complex(c) / math.factorial(k) for k, c in enumerate(series.coefficients))
        exact = None
        if series.exact is not None:
            exact = tuple(c / math.factorial(k) for k, c in enumerate(series.exact))
        if pade_degree is None:
            top = len(coefficients) - 1
            pade_degree = (top // 2, top - top // 2)
        return cls(series, coefficients, pade_degree, ray_angle, exact)

    def with_degree(self, pade_degree: tuple[int, int]) -> BorelSummable:
        return dataclasses.replace(self, pade_degree=pade_degree)

    @property
    def nu(self):
        return self.source.nu

    def inverse(self) -> HbarSeries:
        """Retour a la serie: c_k = k! b_k."""
        return HbarSeries(
            [b * math.factorial(k) for k, b in enumerate(self.borel_coefficients)],
            self.source.nu,
        )


@dataclass(frozen=True)
class BorelSum:
    """Somme de Borel-Pade le long d'un rayon."""

    value: complex
    error: float
    hbar: float
    ray_angle: float
    pade_degree: tuple[int, int]
    poles_on_ray: list[complex] = field(default_factory=list)
    principal_value: bool = False

    def row(self) -> dict:
        return {
            "hbar": self.hbar,
            "ray_angle": self.ray_angle,
            "L": self.pade_degree[0],
            "M": self.pade_degree[1],
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "error": self.error,
            "principal_value": self.principal_value,
        }


@dataclass(frozen=True)
class LateralDiscontinuity:
    """
    (S_+ - S_-)/2i d'une serie reelle, comparee au terme bion predit.

    Attributes:
        discontinuity: valeur mesuree par les deux rayons
        residue_estimate: meme quantite par les residus des poles de Pade du coin
        predicted: partie imaginaire bion (meme unites que la serie), None si inconnue
        cancels: la partie bion du cote + compense la somme laterale +
        upper_bound: mesure indiscernable du bruit, a lire comme une borne
    """

    hbar: float
    ray_angle: float
    upper: complex
    lower: complex
    discontinuity: float
    error: float
    residue_estimate: float
    predicted: Optional[float] = None
    cancels: Optional[bool] = None
    upper_bound: bool = False

    @property
    def ratio(self) -> Optional[float]:
        if self.predicted in (None, 0.0):
            return None
        return abs(self.discontinuity) / abs(self.predicted)

    def row(self) -> dict:
        return {
            "hbar": self.hbar,
            "ray_angle": self.ray_angle,
            "upper_re": self.upper.real,
            "upper_im": self.upper.imag,
            "lower_re": self.lower.real,
            "lower_im": self.lower.imag,
            "discontinuity": self.discontinuity,
            "error": self.error,
            "residue_estimate": self.residue_estimate,
            "predicted": self.predicted,
            "ratio": self.ratio,
            "cancels": self.cancels,
            "upper_bound": self.upper_bound,
        }


@dataclass(frozen=True)
class BorelSingularities:
    """Poles de Pade de B(zeta) et leurs amas stables."""

    poles: list[complex]
    clusters: list[tuple[complex, int]]
    leading_action: Optional[float]
    conclusive: bool


@dataclass(frozen=True)
class CoefficientRatios:
    """r_k = c_{k+1} S / ((k + 1) c_k), attendu proche de 1 aux grands ordres."""

    action: float
    ratios: list[float]
    tolerance: float = 0.1
    window: int = 5

    @property
    def trend_ok(self) -> bool:
        tail = self.ratios[-self.window :]
        return len(tail) == self.window and all(abs(r - 1.0) <= self.tolerance for r in tail)
