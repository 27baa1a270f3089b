from .wkb import EnergyMode, CycleKind, ContourKind, Branch
from .spectral import Side, ConditionKind, Method, TranslateDirection
from .cli import Command, ExportFormat

__all__ = [
    "EnergyMode",
    "CycleKind",
    "ContourKind",
    "Branch",
    "Side",
    "ConditionKind",
    "Method",
    "TranslateDirection",
    "Command",
    "ExportFormat",
]
