"""Enums pour la ligne de commande et les artefacts."""

from ._compat import StrEnum


class Command(StrEnum):
    """Commandes disponibles."""

    SPECTRUM = "spectrum"
    SPLIT = "split"
    STOKES_GRAPH = "stokes-graph"
    DDP_CHECK = "ddp-check"
    FACTORIZE = "factorize"
    BOREL = "borel"
    SECTORS = "sectors"
    ORACLE = "oracle"


class ExportFormat(StrEnum):
    """Formats d'export des artefacts."""

    CSV = "csv"
    JSON = "json"
    SVG = "svg"
    HTML = "html"
