"""Exceptions domain pour l'analyse exact-WKB."""


class EwkbError(Exception):
    """Erreur de base de la librairie."""

    exit_code = 1


# === ERREURS DE CONFIGURATION (code 2) ===


class ConfigError(EwkbError):
    """La configuration d'execution est invalide."""

    exit_code = 2

    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(f"Configuration invalide: {detail}")


class UnsupportedFormatError(ConfigError):
    """Le format d'export ne supporte pas ce type d'artefact."""

    def __init__(self, fmt: str, artifact: str):
        self.fmt = fmt
        self.artifact = artifact
        super().__init__(f"format {fmt} non supporte pour un artefact de type {artifact}")


class InvalidPotentialError(EwkbError):
    """Les parametres du potentiel sont invalides."""

    exit_code = 2

    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(f"Potentiel invalide: {detail}")


class UnsupportedCaseError(EwkbError):
    """Le cas demande n'a pas de forme fermee implementee."""

    exit_code = 2

    def __init__(self, operation: str, detail: str):
        self.operation = operation
        self.detail = detail
        super().__init__(f"Cas non supporte pour {operation}: {detail}")


class MissingDataError(EwkbError):
    """Une donnee requise (constantes C+-, branche) est absente."""

    exit_code = 2

    def __init__(self, what: str):
        self.what = what
        super().__init__(f"Donnee manquante: {what}")


# === ERREURS NUMERIQUES (code 3) ===


class NumericalError(EwkbError):
    """Erreur numerique generique."""

    exit_code = 3


class ConvergenceError(NumericalError):
    """Une procedure iterative n'a pas converge."""

    def __init__(self, procedure: str, residual: float, limit: float | int | None = None):
        self.procedure = procedure
        self.residual = residual
        self.limit = limit
        message = f"Non convergence ({procedure}): residu {residual:.3e}"
        if limit is not None:
            message += f" (limite atteinte: {limit})"
        super().__init__(message)


class ContourTooCloseError(NumericalError):
    """Le contour passe trop pres d'un point tournant."""

    def __init__(self, max_s0: float, bound: float, suggested_radius: float):
        self.max_s0 = max_s0
        self.bound = bound
        self.suggested_radius = suggested_radius
        super().__init__(
            f"Contour trop proche d'un point tournant: max|S_0| = {max_s0:.3e} > {bound:.1e}. "
            f"Rayon suggere: {suggested_radius:.3g}"
        )


class InsufficientOrderError(NumericalError):
    """La serie disponible est trop courte pour l'operation demandee."""

    def __init__(self, available: int, required: int):
        self.available = available
        self.required = required
        super().__init__(f"Ordre insuffisant: {available} disponibles, {required} requis")


# === ERREURS D'EXPORT (code 1) ===


class ExportError(EwkbError):
    """L'artefact n'a pas pu etre ecrit."""

    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"Ecriture impossible de {path}: {reason}")
