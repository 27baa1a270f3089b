import math

import pytest

from src.application.services.stokes_graph import StokesGraphService
from src.domain.enums import EnergyMode
from src.domain.exceptions import ConfigError
from src.infrastructure.adapters.json_artifact_writer import JsonArtifactWriter


@pytest.fixture(scope="module")
def mathieu(potential_core):
    return potential_core.build_potential(1, EnergyMode.FIXED, 1.0)


@pytest.fixture(scope="module")
def tilted_graph(stokes_graph, mathieu):
    return stokes_graph.trace_graph(mathieu, 0.1)


@pytest.mark.parametrize("N,arg_hbar", [(1, 0.0), (1, 0.1), (2, 0.0), (2, -0.2)])
def test_every_seed_is_a_curve_or_a_merged_connection(stokes_graph, potential_core, N: int, arg_hbar: float) -> None:
    graph = stokes_graph.trace_graph(potential_core.build_potential(N, EnergyMode.FIXED, 1.0), arg_hbar, with_regions=False)
    assert graph.simple_count == 2 * N
    assert len(graph.curves) + graph.merged_connections == graph.expected_curves


def test_two_periods_carry_twelve_curves(stokes_graph, mathieu) -> None:
    graph = stokes_graph.trace_graph(mathieu, 0.1, window=(0.0, 4 * math.pi), with_regions=False)
    assert len(graph.turning_points) == 4
    assert len(graph.curves) == 12
    assert graph.saddle_connections == []


@pytest.mark.parametrize("N", [1, 2])
def test_real_hbar_connects_points_across_each_well(stokes_graph, potential_core, N: int) -> None:
    graph = stokes_graph.trace_graph(potential_core.build_potential(N, EnergyMode.FIXED, 1.0), 0.0, with_regions=False)
    assert len(graph.saddle_connections) == 2 * N
    assert graph.merged_connections == N
    connections = [c for c in graph.curves if c.is_saddle_connection]
    assert all(abs(x[1]) < 1e-9 for c in connections for x in c.points)


def test_curve_indices_are_signs(tilted_graph) -> None:
    assert {c.index for c in tilted_graph.curves} <= {1, -1}
    for curve in tilted_graph.curves:
        source = tilted_graph.turning_points[curve.source]
        assert curve.points[0] == (source.re, source.im)


def test_invalid_arguments(stokes_graph, potential_core, sweep_runner, mathieu) -> None:
    with pytest.raises(ConfigError):
        stokes_graph.trace_graph(mathieu, math.pi / 2)
    with pytest.raises(ConfigError):
        StokesGraphService(potential_core, sweep_runner, cut_pairing="diagonal")
    with pytest.raises(ConfigError):
        stokes_graph.detect_mutation(mathieu, (-0.3, 1.7))


def test_graph_is_equivariant_under_well_translation(stokes_graph, potential_core) -> None:
    graph = stokes_graph.trace_graph(potential_core.build_potential(2, EnergyMode.FIXED, 1.0), 0.1, with_regions=False)
    assert stokes_graph.equivariance_distance(graph) < 1e-6


def test_equivariance_needs_whole_periods(stokes_graph, mathieu) -> None:
    graph = stokes_graph.trace_graph(mathieu, 0.1, window=(0.0, 3.0), with_regions=False)
    with pytest.raises(ConfigError):
        stokes_graph.equivariance_distance(graph)


def test_opposite_phases_are_mirror_images(stokes_graph, mathieu) -> None:
    upper = stokes_graph.trace_graph(mathieu, 0.2, with_regions=False)
    lower = stokes_graph.trace_graph(mathieu, -0.2, with_regions=False)
    assert StokesGraphService.curve_set_distance(upper, lower, conjugate=True) < 1e-6
    assert StokesGraphService.curve_set_distance(upper, lower) > 1e-3


def test_regions_and_adjacency(tilted_graph) -> None:
    assert len(tilted_graph.regions) >= 2
    assert tilted_graph.adjacency
    labels = {r.label for r in tilted_graph.regions}
    assert all(a in labels and b in labels for a, b in tilted_graph.adjacency)


def test_mutation_at_real_hbar(stokes_graph, mathieu) -> None:
    changes = stokes_graph.detect_mutation(mathieu, (-0.3, 0.3), steps=3)
    assert len(changes) == 1
    change = changes[0]
    assert change.angle == pytest.approx(0.0, abs=1e-12)
    assert change.bracket[0] < 0 < change.bracket[1]
    assert change.saddle_connections == 2


@pytest.mark.parametrize("pairing,count", [("well", 2), ("barrier", 1)])
def test_branch_cut_pairing(potential_core, sweep_runner, mathieu, pairing: str, count: int) -> None:
    service = StokesGraphService(potential_core, sweep_runner, cut_pairing=pairing)
    cuts = service.branch_cuts(mathieu, (0.0, 2 * math.pi))
    assert len(cuts) == count
    assert all(abs(c.start[1]) < 1e-12 and abs(c.end[1]) < 1e-12 for c in cuts)


def test_no_cuts_in_rescaled_mode(stokes_graph, potential_core) -> None:
    rescaled = potential_core.build_potential(2, EnergyMode.RESCALED, 0.5)
    assert stokes_graph.branch_cuts(rescaled, (0.0, 2 * math.pi)) == []


def test_json_round_trip(tilted_graph, tmp_path) -> None:
    path = JsonArtifactWriter().write_graph(tilted_graph, tmp_path / "graph", {"N": 1})
    assert path.suffix == ".json"
    assert JsonArtifactWriter.read_graph(path).model_dump() == tilted_graph.model_dump()


def test_mutation_of_two_wells_connects_every_barrier(stokes_graph, potential_core) -> None:
    two_wells = potential_core.build_potential(2, EnergyMode.FIXED, 1.0)
    changes = stokes_graph.detect_mutation(two_wells, (-0.3, 0.3), steps=3)
    assert len(changes) == 1
    assert changes[0].angle == pytest.approx(0.0, abs=1e-12)
    assert changes[0].saddle_connections == 4


def test_curves_are_sampled_at_fixed_arclength(potential_core, sweep_runner, mathieu) -> None:
    service = StokesGraphService(potential_core, sweep_runner, sample_step=0.05)
    graph = service.trace_graph(mathieu, 0.1, with_regions=False)
    steps = [
        math.dist(a, b) for curve in graph.curves for a, b in zip(curve.points[1:-2], curve.points[2:-1])
    ]
    assert steps
    assert all(step <= 0.05 + 1e-9 for step in steps)
    assert max(steps) > 0.04
