"""Modeles du graphe de Stokes (pydantic: export JSON et relecture)."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class GraphPoint(BaseModel):
    """Point tournant du graphe."""

    re: float
    im: float
    multiplicity: int
    well_index: int

    @property
    def location(self) -> complex:
        return complex(self.re, self.im)


class StokesCurve(BaseModel):
    """
    Courbe de Stokes issue d'un point tournant.

    Attributes:
        index: +1 ou -1, signe de Re(1/hbar) integrale_a^x sqrt(Q) sur la branche de reference
        end: "boundary:top", "boundary:bottom", "boundary:length", "turning_point" ou "approach"
        target: indice du point d'arrivee dans le graphe (None s'il est hors fenetre)
    """

    curve_id: int
    source: int
    index: int
    direction: int
    points: list[tuple[float, float]]
    end: str
    target: Optional[int] = None
    target_location: Optional[tuple[float, float]] = None

    @property
    def is_saddle_connection(self) -> bool:
        return self.end == "turning_point"

    def as_complex(self) -> list[complex]:
        return [complex(re, im) for re, im in self.points]


class BranchCut(BaseModel):
    start: tuple[float, float]
    end: tuple[float, float]


class StokesRegion(BaseModel):
    """Composante connexe du complementaire des courbes dans la fenetre."""

    label: int
    cells: int
    centroid: tuple[float, float]


class StokesGraph(BaseModel):
    """
    Graphe de Stokes a arg(hbar) fixe.

    Les connexions de selle vues des deux bouts sont fusionnees: seule la
    courbe issue du point de plus petit indice est gardee (merged_connections
    compte les courbes retirees).
    """

    N: int
    energy: tuple[float, float]
    arg_hbar: float
    window: tuple[float, float]
    im_bound: float
    turning_points: list[GraphPoint]
    curves: list[StokesCurve]
    cuts: list[BranchCut] = Field(default_factory=list)
    regions: list[StokesRegion] = Field(default_factory=list)
    adjacency: list[tuple[int, int]] = Field(default_factory=list)
    double_point_sectors: dict[int, list[int]] = Field(default_factory=dict)
    saddle_connections: list[tuple[int, tuple[float, float]]] = Field(default_factory=list)
    merged_connections: int = 0

    @property
    def simple_count(self) -> int:
        return sum(1 for p in self.turning_points if p.multiplicity == 1)

    @property
    def double_count(self) -> int:
        return sum(1 for p in self.turning_points if p.multiplicity == 2)

    @property
    def expected_curves(self) -> int:
        return 3 * self.simple_count + 4 * self.double_count

    def signature(self) -> tuple:
        """Multiensemble trie (source, arrivee, indice): hachable et comparable entre angles."""
        items = []
        for curve in self.curves:
            end = curve.end
            if curve.target_location is not None:
                end = f"tp:{curve.target_location[0]:.6f}"
            items.append((curve.source, end, curve.index))
        return tuple(sorted(items))


class TopologyChange(BaseModel):
    """Angle critique ou la topologie du graphe change."""

    angle: float
    bracket: tuple[float, float]
    saddle_connections: int
    before: tuple
    after: tuple
