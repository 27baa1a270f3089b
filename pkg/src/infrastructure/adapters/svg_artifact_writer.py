"""
Adapter SVG des graphes de Stokes (matplotlib, sortie stable octet par octet).

Chaque courbe est un chemin identifie `curve-<i>`; les coupures sont `cut-<i>`.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict

import matplotlib

matplotlib.use("Agg")

from matplotlib.figure import Figure  # noqa: E402
from pydantic import BaseModel  # noqa: E402

from src.domain.exceptions import ExportError, UnsupportedFormatError  # noqa: E402
from src.domain.models.stokes import StokesGraph  # noqa: E402
from src.domain.ports.artifact_writer_port import ArtifactWriter  # noqa: E402

logger = logging.getLogger(__name__)

_INDEX_COLORS = {1: "tab:red", -1: "tab:blue"}


class SvgArtifactWriter(ArtifactWriter):
    """Dessin des courbes, indices +/-, coupures et points tournants."""

    extension = "svg"

    def __init__(self, hashsalt: str = "ewkb"):
        self._hashsalt = hashsalt

    def write_graph(self, graph: StokesGraph, path: Path | str, header: Dict[str, Any]) -> Path:
        path = self.target(path)
        fig = Figure(figsize=(8, 4))
        ax = fig.add_subplot(1, 1, 1)

        for curve in graph.curves:
            xs = [p[0] for p in curve.points]
            ys = [p[1] for p in curve.points]
            ax.plot(xs, ys, color=_INDEX_COLORS[curve.index], linewidth=1.0, gid=f"curve-{curve.curve_id}")
            middle = curve.points[len(curve.points) // 2]
            ax.text(middle[0], middle[1], "+" if curve.index > 0 else "-", fontsize=7)

        for i, cut in enumerate(graph.cuts):
            ax.plot(
                [cut.start[0], cut.end[0]],
                [cut.start[1], cut.end[1]],
                color="black",
                linestyle=(0, (4, 3)),
                linewidth=0.8,
                gid=f"cut-{i}",
            )

        for i, point in enumerate(graph.turning_points):
            marker = "o" if point.multiplicity == 2 else "x"
            ax.plot([point.re], [point.im], marker=marker, color="black", linestyle="none", gid=f"turning-point-{i}")

        lo, hi = graph.window
        ax.set_xlim(lo, hi)
        ax.set_ylim(-graph.im_bound, graph.im_bound)
        ax.set_xlabel("Re x")
        ax.set_ylabel("Im x")
        ax.set_title(f"N={graph.N}  E={complex(*graph.energy):g}  arg hbar={graph.arg_hbar:g}")

        description = json.dumps(header, sort_keys=True, default=str)
        try:
            with matplotlib.rc_context({"svg.hashsalt": self._hashsalt, "svg.fonttype": "none"}):
                fig.savefig(path, format="svg", metadata={"Date": None, "Description": description})
        except OSError as exc:
            raise ExportError(str(path), str(exc)) from exc
        logger.info(f"[EXPORT:svg] {len(graph.curves)} courbe(s) -> {path}")
        return path

    def write_report(self, report: BaseModel | Dict[str, Any], path: Path | str, header: Dict[str, Any]) -> Path:
        raise UnsupportedFormatError(self.extension, "report")
