"""
Adapter CSV des artefacts (pandas).

L'en-tete de provenance est ecrit en lignes `# cle=valeur` triees avant la table.
"""

import logging
from pathlib import Path
from typing import Any, Dict

import pandas as pd
from pydantic import BaseModel

from src.domain.models.stokes import StokesGraph
from src.domain.ports.artifact_writer_port import ArtifactWriter

logger = logging.getLogger(__name__)


def header_lines(header: Dict[str, Any]) -> str:
    return "".join(f"# {key}={header[key]}\n" for key in sorted(header))


class CsvArtifactWriter(ArtifactWriter):
    """Tables, sommets de graphe et rapports aplatis en CSV."""

    extension = "csv"

    def __init__(self, float_format: str = "%.15g"):
        self._float_format = float_format

    def _write_frame(self, frame: pd.DataFrame, path: Path | str, header: Dict[str, Any]) -> Path:
        path = self.target(path)
        body = frame.to_csv(index=False, float_format=self._float_format, lineterminator="\n")
        self._write_text(path, header_lines(header) + body)
        logger.info(f"[EXPORT:csv] {len(frame)} ligne(s) -> {path}")
        return path

    def write_table(self, frame: pd.DataFrame, path: Path | str, header: Dict[str, Any]) -> Path:
        return self._write_frame(frame, path, header)

    def write_graph(self, graph: StokesGraph, path: Path | str, header: Dict[str, Any]) -> Path:
        """Une ligne par sommet: curve_id, x_re, x_im, index."""
        rows = [
            {"curve_id": curve.curve_id, "x_re": re, "x_im": im, "index": curve.index}
            for curve in graph.curves
            for re, im in curve.points
        ]
        frame = pd.DataFrame(rows, columns=["curve_id", "x_re", "x_im", "index"])
        return self._write_frame(frame, path, header)

    def write_report(self, report: BaseModel | Dict[str, Any], path: Path | str, header: Dict[str, Any]) -> Path:
        data = report.model_dump(mode="json") if isinstance(report, BaseModel) else report
        flat = pd.json_normalize(data, sep=".").iloc[0]
        frame = pd.DataFrame({"field": flat.index, "value": [str(v) for v in flat.values]})
        return self._write_frame(frame, path, header)
