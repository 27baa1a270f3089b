"""
Traceur du graphe de Stokes Im (1/hbar) integrale_a^x sqrt(Q) dx = 0.

Chaque courbe est integree en abscisse curviligne avec l'etat (x, y), y suivant
sqrt(Q(x)) par continuite: dx/ds = e^{i arg hbar} conj(y)/|y|, dy/ds = Q'(x)/(2y) dx/ds.
Le long d'une courbe, e^{-i arg hbar} y dx est reel positif.
"""
import logging
import math
from typing import Optional

import numpy as np
from scipy import ndimage
from scipy.integrate import solve_ivp
from scipy.spatial.distance import directed_hausdorff

from src.config import settings
from src.domain.enums import EnergyMode
from src.domain.exceptions import ConfigError
from src.domain.models.potential import PotentialSpec, TurningPoint
from src.domain.models.stokes import (
    BranchCut,
    GraphPoint,
    StokesCurve,
    StokesGraph,
    StokesRegion,
    TopologyChange,
)
from src.application.services.potential_core import PotentialCore
from src.application.services.sweep_runner import SweepRunner

logger = logging.getLogger(__name__)

_RASTER = (360, 180)


def _pair(z: complex) -> tuple[float, float]:
    return (float(z.real), float(z.imag))


class StokesGraphService:
    """Trace, classe et compare les graphes de Stokes du potentiel 1 - cos(N x)."""

    def __init__(
        self,
        potential_core: PotentialCore,
        sweep_runner: SweepRunner,
        saddle_tol: float = settings.STOKES_SADDLE_TOL,
        approach_radius: float = settings.STOKES_APPROACH_RADIUS,
        seed_radius: float = settings.STOKES_SEED_RADIUS,
        im_bound: float = settings.STOKES_IM_BOUND,
        max_step: float = settings.STOKES_MAX_STEP,
        sample_step: float = settings.STOKES_SAMPLE_STEP,
        cut_pairing: str = settings.STOKES_CUT_PAIRING,
    ):
        if cut_pairing not in ("well", "barrier"):
            raise ConfigError(f"STOKES_CUT_PAIRING doit valoir 'well' ou 'barrier' (recu {cut_pairing!r})")
        self._potential_core = potential_core
        self._sweep_runner = sweep_runner
        self._saddle_tol = saddle_tol
        self._approach_radius = approach_radius
        self._seed_radius = seed_radius
        self._im_bound = im_bound
        self._max_step = max_step
        self._sample_step = sample_step
        self._cut_pairing = cut_pairing

    # =========================================================================
    # TRACE
    # =========================================================================

    @staticmethod
    def _local_coefficient(potential: PotentialSpec, point: TurningPoint) -> complex:
        """Q ~ coef (x - a)^m au point tournant."""
        if point.is_double:
            return complex(potential.d2Q(point.location)) / 2
        return complex(potential.dQ(point.location))

    def seed_directions(self, potential: PotentialSpec, point: TurningPoint, arg_hbar: float) -> list[float]:
        """m + 2 directions ou e^{-i arg hbar} integrale_a^x sqrt(Q) est reelle."""
        m = point.multiplicity
        phase = np.angle(np.sqrt(self._local_coefficient(potential, point)))
        return [2.0 / (m + 2) * (arg_hbar - phase + k * math.pi) for k in range(m + 2)]

    def _trace_curve(
        self,
        potential: PotentialSpec,
        arg_hbar: float,
        source: int,
        point: TurningPoint,
        direction: int,
        angle: float,
        targets: list[complex],
        x_range: tuple[float, float],
    ) -> dict:
        a = point.location
        rotation = np.exp(1j * arg_hbar)
        x0 = a + self._seed_radius * np.exp(1j * angle)
        y0 = np.sqrt(complex(potential.q0(x0)))
        if (rotation * np.conj(y0) * np.exp(-1j * angle)).real < 0:
            y0 = -y0
        reference = np.sqrt(self._local_coefficient(potential, point)) * (x0 - a) ** (point.multiplicity / 2)
        index = 1 if (y0 * np.conj(reference)).real > 0 else -1

        def rhs(s, state):
            x = complex(state[0], state[1])
            y = complex(state[2], state[3])
            dx = rotation * np.conj(y) / max(abs(y), 1e-300)
            dy = complex(potential.dQ(x)) / (2 * y) * dx
            return [dx.real, dx.imag, dy.real, dy.imag]

        events = []

        def top(s, state):
            return self._im_bound - abs(state[1])

        top.terminal = True
        events.append(top)

        def side(s, state):
            return min(state[0] - x_range[0], x_range[1] - state[0])

        side.terminal = True
        events.append(side)

        for b in targets:

            def near(s, state, b=b):
                return abs(complex(state[0], state[1]) - b) - self._approach_radius

            near.terminal = True
            near.direction = -1
            events.append(near)

        length = 2 * (x_range[1] - x_range[0]) + 4 * self._im_bound
        solution = solve_ivp(
            rhs,
            (0.0, length),
            [x0.real, x0.imag, y0.real, y0.imag],
            method="RK45",
            events=events,
            max_step=self._max_step,
            first_step=self._seed_radius,
            # points stockes a abscisse curviligne fixe (sortie dense)
            t_eval=np.arange(0.0, length, self._sample_step),
            rtol=1e-9,
            atol=1e-12,
        )
        states = solution.y
        first = None
        if solution.status == 1:
            fired = [i for i, times in enumerate(solution.t_events) if len(times)]
            first = min(fired, key=lambda i: solution.t_events[i][0])
            states = np.column_stack([states, solution.y_events[first][0]])
        xs = states[0] + 1j * states[1]
        points = [a] + list(xs)

        end, target = "boundary:length", None
        if first is not None:
            if first == 0:
                end = "boundary:top" if xs[-1].imag > 0 else "boundary:bottom"
            elif first == 1:
                end = "boundary:side"
            else:
                b = targets[first - 2]
                y_end = complex(states[2][-1], states[3][-1])
                heading = rotation * np.conj(y_end) / abs(y_end)
                offset = (b - xs[-1]) * np.conj(heading)
                if offset.real > 0 and abs(offset.imag) < self._saddle_tol:
                    end, target = "turning_point", b
                    points.append(b)
                else:
                    end = "approach"
        elif solution.status < 0:
            logger.warning(f"[STOKES:arg={arg_hbar}] integration interrompue: {solution.message}")
        return {
            "source": source,
            "direction": direction,
            "index": index,
            "points": points,
            "end": end,
            "target": target,
        }

    def trace_graph(
        self,
        potential: PotentialSpec,
        arg_hbar: float,
        window: tuple[float, float] = (0.0, 2 * math.pi),
        with_regions: bool = True,
    ) -> StokesGraph:
        """
        Graphe de Stokes dans la bande lo <= Re x < hi, |Im x| <= im_bound.

        En mode RESCALED le trace utilise le symbole dominant Q0 (points doubles
        aux minima).
        """
        if abs(arg_hbar) >= math.pi / 2:
            raise ConfigError(f"arg hbar doit etre dans (-pi/2, pi/2) (recu {arg_hbar})")
        lo, hi = window
        period = potential.period
        points = self._potential_core.turning_points(potential, window)
        halo = self._potential_core.turning_points(potential, (lo - period, hi + period))
        x_range = (lo - 2 * math.pi, hi + 2 * math.pi)

        seeds = []
        for i, point in enumerate(points):
            for k, angle in enumerate(self.seed_directions(potential, point, arg_hbar)):
                others = [p.location for p in halo if abs(p.location - point.location) > 1e-9]
                seeds.append((i, point, k, angle, others))

        traced = self._sweep_runner.map(
            lambda seed: self._trace_curve(potential, arg_hbar, seed[0], seed[1], seed[2], seed[3], seed[4], x_range),
            seeds,
        )

        # fusion deterministe des connexions de selle vues des deux bouts
        locations = [p.location for p in points]

        def index_of(z: Optional[complex]) -> Optional[int]:
            if z is None:
                return None
            for j, loc in enumerate(locations):
                if abs(loc - z) < 1e-9:
                    return j
            return None

        saddle_connections = [(t["source"], _pair(t["target"])) for t in traced if t["end"] == "turning_point"]
        curves: list[StokesCurve] = []
        merged = 0
        for t in traced:
            target = index_of(t["target"])
            if t["end"] == "turning_point" and target is not None and target < t["source"]:
                reverse = any(
                    u["source"] == target and u["end"] == "turning_point" and index_of(u["target"]) == t["source"]
                    for u in traced
                )
                if reverse:
                    merged += 1
                    continue
            curves.append(
                StokesCurve(
                    curve_id=len(curves),
                    source=t["source"],
                    index=t["index"],
                    direction=t["direction"],
                    points=[_pair(z) for z in t["points"]],
                    end=t["end"],
                    target=target,
                    target_location=_pair(t["target"]) if t["target"] is not None else None,
                )
            )

        graph = StokesGraph(
            N=potential.N,
            energy=_pair(potential.energy),
            arg_hbar=arg_hbar,
            window=(lo, hi),
            im_bound=self._im_bound,
            turning_points=[
                GraphPoint(re=p.location.real, im=p.location.imag, multiplicity=p.multiplicity, well_index=p.well_index)
                for p in points
            ],
            curves=curves,
            cuts=self.branch_cuts(potential, window),
            saddle_connections=saddle_connections,
            merged_connections=merged,
        )
        if with_regions:
            self._attach_regions(potential, graph, arg_hbar)
        logger.info(
            f"[STOKES:arg={arg_hbar}] N={potential.N} {len(points)} point(s) tournant(s), "
            f"{len(curves)} courbe(s), {len(saddle_connections)} connexion(s) de selle"
        )
        return graph

    # =========================================================================
    # COUPURES ET REGIONS
    # =========================================================================

    def branch_cuts(self, potential: PotentialSpec, window: tuple[float, float]) -> list[BranchCut]:
        """Coupures entre points tournants simples apparies (par puits ou par barriere)."""
        if potential.energy_mode is EnergyMode.RESCALED or potential.is_degenerate:
            return []
        lo, hi = window
        period = potential.period
        base = np.arccos(complex(1.0 - potential.energy)) / potential.N
        cuts = []
        for k in range(int(np.floor(lo / period)) - 1, int(np.ceil(hi / period)) + 1):
            if self._cut_pairing == "well":
                start, end = k * period - base, k * period + base
            else:
                start, end = k * period + base, (k + 1) * period - base
            if lo <= start.real < hi or lo <= end.real < hi:
                cuts.append(BranchCut(start=_pair(start), end=_pair(end)))
        return cuts

    def _attach_regions(self, potential: PotentialSpec, graph: StokesGraph, arg_hbar: float) -> None:
        """Composantes connexes (ndimage.label) du complementaire rasterise des courbes."""
        lo, hi = graph.window
        nx, ny = _RASTER
        dx = (hi - lo) / nx
        dy = 2 * graph.im_bound / ny
        mask = np.zeros((ny, nx), dtype=bool)

        def pixel(z: complex) -> tuple[int, int]:
            return int(np.floor((z.imag + graph.im_bound) / dy)), int(np.floor((z.real - lo) / dx))

        step = 0.25 * min(dx, dy)
        for curve in graph.curves:
            polyline = curve.as_complex()
            for z0, z1 in zip(polyline[:-1], polyline[1:]):
                count = max(2, int(abs(z1 - z0) / step) + 1)
                for z in np.linspace(z0, z1, count):
                    row, col = pixel(z)
                    if 0 <= row < ny and 0 <= col < nx:
                        mask[row, col] = True

        labels, count = ndimage.label(~mask)
        indices = list(range(1, count + 1))
        sizes = ndimage.sum(np.ones_like(labels), labels, indices)
        centers = ndimage.center_of_mass(np.ones_like(labels), labels, indices)
        regions = [
            StokesRegion(
                label=label,
                cells=int(size),
                centroid=(lo + (c[1] + 0.5) * dx, -graph.im_bound + (c[0] + 0.5) * dy),
            )
            for label, size, c in zip(indices, sizes, centers)
        ]

        adjacency = set()
        for label in indices:
            grown = ndimage.binary_dilation(labels == label, iterations=2)
            for other in np.unique(labels[grown]):
                if other > label:
                    adjacency.add((label, int(other)))

        sectors = {}
        for i, point in enumerate(graph.turning_points):
            if point.multiplicity != 2:
                continue
            spot = TurningPoint(point.location, point.multiplicity, point.well_index)
            directions = self.seed_directions(potential, spot, arg_hbar)
            radius = max(0.15, 4 * max(dx, dy))
            found = []
            for angle in directions:
                probe = point.location + radius * np.exp(1j * (angle + math.pi / 4))
                row, col = pixel(probe)
                if 0 <= row < ny and 0 <= col < nx:
                    found.append(int(labels[row, col]))
            sectors[i] = found

        graph.regions = regions
        graph.adjacency = sorted(adjacency)
        graph.double_point_sectors = sectors
        logger.debug(f"[STOKES:arg={arg_hbar}] {count} region(s), {len(adjacency)} adjacence(s)")

    # =========================================================================
    # SYMETRIES ET MUTATIONS
    # =========================================================================

    @staticmethod
    def curve_set_distance(
        first: StokesGraph, second: StokesGraph, shift: float = 0.0, conjugate: bool = False
    ) -> float:
        """
        Distance de Hausdorff entre deux ensembles de courbes sur le cylindre.

        Le second ensemble est translate de `shift` (et conjugue si demande).
        """

        def embed(graph: StokesGraph, move: float, flip: bool) -> np.ndarray:
            rows = []
            for curve in graph.curves:
                for re, im in curve.points:
                    im = -im if flip else im
                    rows.append((math.cos(re + move), math.sin(re + move), im))
            return np.array(rows) if rows else np.zeros((0, 3))

        a = embed(first, 0.0, False)
        b = embed(second, shift, conjugate)
        if len(a) == 0 and len(b) == 0:
            return 0.0
        if len(a) == 0 or len(b) == 0:
            return math.inf
        return max(directed_hausdorff(a, b)[0], directed_hausdorff(b, a)[0])

    def equivariance_distance(self, graph: StokesGraph) -> float:
        """Ecart entre le graphe et sa translation de 2 pi / N (fenetre d'une periode entiere)."""
        lo, hi = graph.window
        periods = (hi - lo) / (2 * math.pi)
        if abs(periods - round(periods)) > 1e-12:
            raise ConfigError("l'equivariance exige une fenetre multiple de 2 pi")
        return self.curve_set_distance(graph, graph, shift=2 * math.pi / graph.N)

    def detect_mutation(
        self,
        potential: PotentialSpec,
        sweep: tuple[float, float],
        steps: int = 9,
        window: tuple[float, float] = (0.0, 2 * math.pi),
        resolution: float = 1e-3,
    ) -> list[TopologyChange]:
        """
        Angles critiques de arg hbar ou la signature d'incidence change.

        Un point de grille portant une connexion de selle est critique tel
        quel; sinon le changement est localise par bissection jusqu'a
        `resolution` et rendu avec son intervalle.
        """
        lo, hi = sweep
        if not (-math.pi / 2 < lo < hi < math.pi / 2):
            raise ConfigError(f"balayage hors de (-pi/2, pi/2): [{lo}, {hi}]")
        angles = list(np.linspace(lo, hi, max(2, steps)))
        graphs = [self.trace_graph(potential, float(a), window, with_regions=False) for a in angles]

        changes: list[TopologyChange] = []
        i = 0
        while i < len(angles) - 1:
            if 0 < i and graphs[i].saddle_connections:
                changes.append(
                    TopologyChange(
                        angle=float(angles[i]),
                        bracket=(float(angles[i - 1]), float(angles[i + 1])),
                        saddle_connections=len(graphs[i].saddle_connections),
                        before=graphs[i - 1].signature(),
                        after=graphs[i + 1].signature(),
                    )
                )
                i += 1
                continue
            left, right = graphs[i], graphs[i + 1]
            if left.saddle_connections or right.saddle_connections or left.signature() == right.signature():
                i += 1
                continue
            a, b = float(angles[i]), float(angles[i + 1])
            critical, connections = None, 0
            while b - a > resolution:
                mid = 0.5 * (a + b)
                graph = self.trace_graph(potential, mid, window, with_regions=False)
                if graph.saddle_connections:
                    critical, connections = mid, len(graph.saddle_connections)
                    break
                if graph.signature() == left.signature():
                    a = mid
                else:
                    b = mid
            if critical is None:
                logger.warning(f"[STOKES:mutation] croisement non resolu dans [{a:.4g}, {b:.4g}]")
            changes.append(
                TopologyChange(
                    angle=critical if critical is not None else 0.5 * (a + b),
                    bracket=(a, b),
                    saddle_connections=connections,
                    before=left.signature(),
                    after=right.signature(),
                )
            )
            i += 1
        logger.info(f"[STOKES:mutation] {len(changes)} angle(s) critique(s) dans [{lo}, {hi}]")
        return changes
