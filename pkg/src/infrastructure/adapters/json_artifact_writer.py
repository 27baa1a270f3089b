"""
Adapter JSON des artefacts.

Format: {"config": en-tete, "data": contenu}, cles triees, indentation 2.
Les graphes se relisent avec read_graph (StokesGraph.model_validate).
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict

import pandas as pd
from pydantic import BaseModel

from src.domain.exceptions import ExportError
from src.domain.models.stokes import StokesGraph
from src.domain.ports.artifact_writer_port import ArtifactWriter

logger = logging.getLogger(__name__)


class JsonArtifactWriter(ArtifactWriter):
    """Tous les artefacts en JSON deterministe."""

    extension = "json"

    def _dump(self, data: Any, path: Path | str, header: Dict[str, Any]) -> Path:
        path = self.target(path)
        text = json.dumps({"config": header, "data": data}, sort_keys=True, indent=2, default=str)
        self._write_text(path, text + "\n")
        logger.info(f"[EXPORT:json] -> {path}")
        return path

    def write_table(self, frame: pd.DataFrame, path: Path | str, header: Dict[str, Any]) -> Path:
        records = frame.astype(object).where(frame.notna(), None).to_dict(orient="records")
        return self._dump(records, path, header)

    def write_graph(self, graph: StokesGraph, path: Path | str, header: Dict[str, Any]) -> Path:
        return self._dump(graph.model_dump(mode="json"), path, header)

    def write_report(self, report: BaseModel | Dict[str, Any], path: Path | str, header: Dict[str, Any]) -> Path:
        data = report.model_dump(mode="json") if isinstance(report, BaseModel) else report
        return self._dump(data, path, header)

    @staticmethod
    def read_graph(path: Path | str) -> StokesGraph:
        try:
            with open(path, encoding="utf-8") as handle:
                payload = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            raise ExportError(str(path), str(exc)) from exc
        return StokesGraph.model_validate(payload["data"])
