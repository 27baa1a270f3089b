import json
import math

import pandas as pd
import pytest

from src.domain.exceptions import ExportError, UnsupportedFormatError
from src.domain.models.stokes import BranchCut, GraphPoint, StokesCurve, StokesGraph
from src.infrastructure.adapters.csv_artifact_writer import CsvArtifactWriter
from src.infrastructure.adapters.html_artifact_writer import HtmlArtifactWriter
from src.infrastructure.adapters.json_artifact_writer import JsonArtifactWriter
from src.infrastructure.adapters.svg_artifact_writer import SvgArtifactWriter

HEADER = {"command": "spectrum", "N": 2, "hbar": 0.5, "version": "0.1.0"}


@pytest.fixture
def graph() -> StokesGraph:
    return StokesGraph(
        N=1,
        energy=(1.0, 0.0),
        arg_hbar=0.1,
        window=(0.0, 2 * math.pi),
        im_bound=2.0,
        turning_points=[
            GraphPoint(re=math.pi / 2, im=0.0, multiplicity=1, well_index=0),
            GraphPoint(re=3 * math.pi / 2, im=0.0, multiplicity=1, well_index=0),
        ],
        curves=[
            StokesCurve(curve_id=0, source=0, index=1, direction=0, points=[(1.57, 0.0), (1.7, 0.6), (1.8, 2.0)], end="boundary:top"),
            StokesCurve(curve_id=1, source=1, index=-1, direction=1, points=[(4.71, 0.0), (4.5, -0.8), (4.4, -2.0)], end="boundary:bottom"),
        ],
        cuts=[BranchCut(start=(-math.pi / 2, 0.0), end=(math.pi / 2, 0.0))],
    )


@pytest.fixture
def frame() -> pd.DataFrame:
    return pd.DataFrame({"p": [0, 1], "E_re": [0.2431, 0.2467]})


def test_csv_table_starts_with_sorted_header(frame, tmp_path) -> None:
    path = CsvArtifactWriter().write_table(frame, tmp_path / "spectrum_N2", HEADER)
    assert path.name == "spectrum_N2.csv"
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[:4] == ["# N=2", "# command=spectrum", "# hbar=0.5", "# version=0.1.0"]
    assert lines[4] == "p,E_re"
    assert lines[5] == "0,0.2431"


def test_csv_report_is_flattened(tmp_path) -> None:
    path = CsvArtifactWriter().write_report({"holds": True, "details": {"p=0": True}}, tmp_path / "ddp", HEADER)
    body = [line for line in path.read_text(encoding="utf-8").splitlines() if not line.startswith("#")]
    assert body == ["field,value", "holds,True", "details.p=0,True"]


def test_csv_graph_has_one_row_per_vertex(graph, tmp_path) -> None:
    path = CsvArtifactWriter().write_graph(graph, tmp_path / "stokes", HEADER)
    table = pd.read_csv(path, comment="#")
    assert list(table.columns) == ["curve_id", "x_re", "x_im", "index"]
    assert len(table) == 6
    assert sorted(table["index"].unique()) == [-1, 1]


def test_json_keeps_config_next_to_data(frame, tmp_path) -> None:
    path = JsonArtifactWriter().write_table(frame, tmp_path / "spectrum", HEADER)
    payload = json.loads(path.read_text(encoding="utf-8"))
    assert payload["config"] == HEADER
    assert payload["data"] == [{"p": 0, "E_re": 0.2431}, {"p": 1, "E_re": 0.2467}]
    assert path.read_text(encoding="utf-8").index('"config"') < path.read_text(encoding="utf-8").index('"data"')


def test_json_read_graph_rejects_broken_files(tmp_path) -> None:
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ExportError):
        JsonArtifactWriter.read_graph(broken)


def test_svg_identifies_curves_and_is_reproducible(graph, tmp_path) -> None:
    writer = SvgArtifactWriter()
    first = writer.write_graph(graph, tmp_path / "a" / "stokes", HEADER)
    second = writer.write_graph(graph, tmp_path / "b" / "stokes", HEADER)
    text = first.read_text(encoding="utf-8")
    for gid in ("curve-0", "curve-1", "cut-0", "turning-point-0", "turning-point-1"):
        assert f'id="{gid}"' in text
    assert first.read_bytes() == second.read_bytes()


def test_svg_does_not_write_tables_or_reports(frame, tmp_path) -> None:
    writer = SvgArtifactWriter()
    with pytest.raises(UnsupportedFormatError):
        writer.write_report({"holds": True}, tmp_path / "report", HEADER)
    with pytest.raises(UnsupportedFormatError):
        writer.write_table(frame, tmp_path / "table", HEADER)


def test_html_uses_a_fixed_div(graph, tmp_path) -> None:
    path = HtmlArtifactWriter().write_graph(graph, tmp_path / "stokes", HEADER)
    assert path.suffix == ".html"
    assert 'id="ewkb-artifact"' in path.read_text(encoding="utf-8")


def test_unwritable_target_raises_export_error(frame, tmp_path) -> None:
    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")
    with pytest.raises(ExportError):
        CsvArtifactWriter().write_table(frame, blocker / "spectrum", HEADER)
