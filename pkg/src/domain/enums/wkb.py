"""Enums pour le potentiel et les series WKB."""

from ._compat import StrEnum


class EnergyMode(StrEnum):
    """Convention d'energie du symbole Q."""

    FIXED = "fixed"
    RESCALED = "rescaled"  # E -> hbar*E


class CycleKind(StrEnum):
    """Cycles de Voros."""

    A = "A"  # perturbatif, a l'interieur d'un puits
    B = "B"  # non perturbatif, a travers une barriere


class ContourKind(StrEnum):
    """Type de contour ferme portant la recursion de Riccati."""

    ENCIRCLING_PAIR = "encircling_pair"
    ENCIRCLING_POINT = "encircling_point"


class Branch(StrEnum):
    """Choix de la branche S_{-1} = +/- sqrt(Q0) au point double."""

    PLUS = "+"
    MINUS = "-"
