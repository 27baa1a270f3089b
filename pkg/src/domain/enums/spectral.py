"""Enums pour la quantification et les spectres."""

from ._compat import StrEnum


class Side(StrEnum):
    """Cote de la sommation laterale (signe de Im hbar)."""

    UPPER = "upper"
    LOWER = "lower"
    MEDIAN = "median"
    NONE = "none"


class ConditionKind(StrEnum):
    """Famille de condition de quantification."""

    AIRY = "Airy"
    DW = "DW"


class Method(StrEnum):
    """Provenance d'une valeur propre."""

    AIRY_WKB = "AiryWKB"
    DW_WKB = "DWWKB"
    SPLITTING_FORMULA = "SplittingFormula"
    ORACLE = "Oracle"


class TranslateDirection(StrEnum):
    """Sens de traduction du dictionnaire des cycles."""

    AIRY_TO_DW = "AiryToDW"
    DW_TO_AIRY = "DWToAiry"
