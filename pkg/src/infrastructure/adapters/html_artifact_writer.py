"""
Adapter HTML interactif (plotly).

Le div a un identifiant fixe pour que deux executions identiques produisent
le meme fichier.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict

import pandas as pd
import plotly.graph_objects as go
from pydantic import BaseModel

from src.domain.exceptions import ExportError
from src.domain.models.stokes import StokesGraph
from src.domain.ports.artifact_writer_port import ArtifactWriter

logger = logging.getLogger(__name__)


class HtmlArtifactWriter(ArtifactWriter):
    """Vues plotly des graphes, tables et rapports."""

    extension = "html"

    def __init__(self, div_id: str = "ewkb-artifact", include_plotlyjs: str | bool = "cdn"):
        self._div_id = div_id
        self._include_plotlyjs = include_plotlyjs

    def _save(self, fig: go.Figure, path: Path | str, header: Dict[str, Any]) -> Path:
        path = self.target(path)
        fig.update_layout(template="plotly_white", meta={"config": json.dumps(header, sort_keys=True, default=str)})
        try:
            fig.write_html(path, include_plotlyjs=self._include_plotlyjs, div_id=self._div_id, full_html=True)
        except OSError as exc:
            raise ExportError(str(path), str(exc)) from exc
        logger.info(f"[EXPORT:html] -> {path}")
        return path

    def write_graph(self, graph: StokesGraph, path: Path | str, header: Dict[str, Any]) -> Path:
        fig = go.Figure()
        for curve in graph.curves:
            fig.add_trace(
                go.Scatter(
                    x=[p[0] for p in curve.points],
                    y=[p[1] for p in curve.points],
                    mode="lines",
                    name=f"curve-{curve.curve_id} ({'+' if curve.index > 0 else '-'})",
                    line={"color": "crimson" if curve.index > 0 else "royalblue", "width": 1},
                )
            )
        for i, cut in enumerate(graph.cuts):
            fig.add_trace(
                go.Scatter(
                    x=[cut.start[0], cut.end[0]],
                    y=[cut.start[1], cut.end[1]],
                    mode="lines",
                    name=f"cut-{i}",
                    line={"color": "black", "dash": "dash", "width": 1},
                )
            )
        fig.add_trace(
            go.Scatter(
                x=[p.re for p in graph.turning_points],
                y=[p.im for p in graph.turning_points],
                mode="markers",
                name="turning points",
                marker={"color": "black", "symbol": ["circle" if p.multiplicity == 2 else "x" for p in graph.turning_points]},
            )
        )
        fig.update_layout(
            title=f"N={graph.N}  E={complex(*graph.energy):g}  arg hbar={graph.arg_hbar:g}",
            xaxis_title="Re x",
            yaxis_title="Im x",
            yaxis_range=[-graph.im_bound, graph.im_bound],
        )
        return self._save(fig, path, header)

    def write_table(self, frame: pd.DataFrame, path: Path | str, header: Dict[str, Any]) -> Path:
        fig = go.Figure(
            go.Table(
                header={"values": list(frame.columns)},
                cells={"values": [frame[column].tolist() for column in frame.columns]},
            )
        )
        return self._save(fig, path, header)

    def write_report(self, report: BaseModel | Dict[str, Any], path: Path | str, header: Dict[str, Any]) -> Path:
        data = report.model_dump(mode="json") if isinstance(report, BaseModel) else report
        flat = pd.json_normalize(data, sep=".").iloc[0]
        frame = pd.DataFrame({"field": flat.index, "value": [str(v) for v in flat.values]})
        return self.write_table(frame, path, header)
