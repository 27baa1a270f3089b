"""
Port (Interface) pour l'ecriture des artefacts d'une execution.

Chaque implementation (CSV, JSON, SVG, HTML) recoit l'en-tete de
provenance (configuration complete) et l'embarque dans le fichier.
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict

import pandas as pd
from pydantic import BaseModel

from src.domain.exceptions import ExportError, UnsupportedFormatError
from src.domain.models.stokes import StokesGraph


class ArtifactWriter(ABC):
    """
    Interface abstraite d'ecriture d'artefacts.

    Implementations:
    - CsvArtifactWriter (pandas)
    - JsonArtifactWriter (pydantic)
    - SvgArtifactWriter (matplotlib)
    - HtmlArtifactWriter (plotly)
    """

    extension: str = ""

    def target(self, path: Path | str) -> Path:
        """Chemin final avec l'extension du format; le dossier parent est cree."""
        path = Path(path)
        if path.suffix != f".{self.extension}":
            path = path.with_suffix(f".{self.extension}")
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise ExportError(str(path), str(exc)) from exc
        return path

    @staticmethod
    def _write_text(path: Path, text: str) -> Path:
        try:
            with open(path, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(text)
        except OSError as exc:
            raise ExportError(str(path), str(exc)) from exc
        return path

    def write_table(self, frame: pd.DataFrame, path: Path | str, header: Dict[str, Any]) -> Path:
        """
        Ecrit une table de resultats.

        Raises:
            UnsupportedFormatError: Si le format ne sait pas ecrire de table
        """
        raise UnsupportedFormatError(self.extension, "table")

    def write_graph(self, graph: StokesGraph, path: Path | str, header: Dict[str, Any]) -> Path:
        """
        Ecrit un graphe de Stokes.

        Raises:
            UnsupportedFormatError: Si le format ne sait pas ecrire de graphe
        """
        raise UnsupportedFormatError(self.extension, "graph")

    @abstractmethod
    def write_report(self, report: BaseModel | Dict[str, Any], path: Path | str, header: Dict[str, Any]) -> Path:
        """Ecrit un rapport de verification (PASS/FAIL et expressions canoniques)."""
        pass
