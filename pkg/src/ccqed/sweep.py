"""
Parameter sweeps over (delta/g, A/g) and half-maximum phase boundaries.

Every grid point is an independent ground-state evaluation, so sweeps can
fan out over worker processes; rows always come back in (hop, delta) grid
order so the output does not depend on the worker count.
"""

from __future__ import annotations

import logging
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from skimage.measure import find_contours

from .entanglement import IntegrityError, all_bipartite_entropies
from .hilbert import enumerate_basis
from .model import ModelParams, build_hamiltonian
from .observables import order_parameters
from .spectra import SolverError, ground_state

log = logging.getLogger(__name__)

SECTOR_N = 2
OK, DEGENERATE, FAILED = "ok", "degenerate", "failed"
ORDER_PARAMETERS = {"superfluid": "var_n1", "polaritonic": "var_na1"}


@dataclass(frozen=True)
class Axis:
    start: float
    stop: float
    steps: int
    log: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("axis bounds must be finite")
        if self.steps < 2:
            raise ValueError(f"an axis needs at least 2 steps, got {self.steps}")
        if not self.start < self.stop:
            raise ValueError(f"axis start {self.start} must be below stop {self.stop}")
        if self.log and self.start <= 0:
            raise ValueError("a log axis needs a positive start")

    def values(self) -> np.ndarray:
        if self.log:
            return np.geomspace(self.start, self.stop, self.steps)
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    """Grid of (delta/g, A/g) points; ``hop`` is a fixed ratio or an axis."""

    delta: Axis
    hop: Axis | float
    g: float = 1.0
    omega_c: float = 0.0

    def __post_init__(self):
        if not (self.g > 0 and math.isfinite(self.g)):
            raise ValueError("g must be positive and finite")
        if not math.isfinite(self.omega_c):
            raise ValueError("omega_c must be finite")
        if not isinstance(self.hop, Axis) and not math.isfinite(self.hop):
            raise ValueError("hop must be finite")

    def delta_values(self) -> np.ndarray:
        return self.delta.values()

    def hop_values(self) -> np.ndarray:
        if isinstance(self.hop, Axis):
            return self.hop.values()
        return np.array([float(self.hop)])

    def points(self) -> list[tuple[float, float]]:
        return [(float(d), float(a)) for a in self.hop_values() for d in self.delta_values()]


def small_hop_spec(steps: int = 401) -> SweepSpec:
    return SweepSpec(Axis(-10.0, 10.0, steps), 0.01)


def large_hop_spec(steps: int = 601) -> SweepSpec:
    return SweepSpec(Axis(-25.0, 5.0, steps), 10.0)


def phase_map_spec(delta_steps: int = 161, hop_steps: int = 41) -> SweepSpec:
    return SweepSpec(Axis(-30.0, 10.0, delta_steps), Axis(0.01, 20.0, hop_steps, log=True))


@dataclass(frozen=True)
class SweepRow:
    delta_over_g: float
    hop_over_g: float
    energy: float
    gap: float
    degenerate: bool
    S_site: float
    S_atom: float
    S_cavity: float
    S_atoms: float
    S_cross: float
    mean_n1: float
    var_n1: float
    mean_na1: float
    var_na1: float
    status: str

    @property
    def entropies(self) -> tuple[float, float, float, float, float]:
        return (self.S_site, self.S_atom, self.S_cavity, self.S_atoms, self.S_cross)


@lru_cache(maxsize=None)
def _basis(sector_n: int):
    return enumerate_basis(sector_n)


def evaluate_point(delta_over_g: float, hop_over_g: float, g: float = 1.0,
                   omega_c: float = 0.0) -> SweepRow:
    """Ground state, entropies and order parameters at one parameter point."""
    params = ModelParams.scaled(delta_over_g, hop_over_g, g=g, omega_c=omega_c)
    try:
        ground = ground_state(build_hamiltonian(params, _basis(SECTOR_N)))
        ents = all_bipartite_entropies(ground)
    except (SolverError, IntegrityError) as exc:
        log.warning("point (%g, %g) failed: %s", delta_over_g, hop_over_g, exc)
        nan = math.nan
        return SweepRow(delta_over_g, hop_over_g, nan, nan, False,
                        nan, nan, nan, nan, nan, nan, nan, nan, nan, FAILED)
    ops = order_parameters(ground)
    return SweepRow(
        delta_over_g, hop_over_g, ground.energy, ground.gap, ground.degenerate,
        *ents.values(),
        ops.mean_total_site1, ops.var_total_site1,
        ops.mean_atom_site1, ops.var_atom_site1,
        DEGENERATE if ground.degenerate else OK,
    )


def _evaluate_chunk(args):
    points, g, omega_c = args
    return [evaluate_point(d, a, g, omega_c) for d, a in points]


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    points = spec.points()
    if workers <= 1 or len(points) < 2:
        return _evaluate_chunk((points, spec.g, spec.omega_c))
    size = max(1, math.ceil(len(points) / (4 * workers)))
    chunks = [(points[i:i + size], spec.g, spec.omega_c) for i in range(0, len(points), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves submission order
        results = pool.map(_evaluate_chunk, chunks)
        return [row for chunk in results for row in chunk]


def failed_count(rows) -> int:
    return sum(r.status == FAILED for r in rows)


def extract_boundary(deltas, hops, values, level: float | None = None) -> list[np.ndarray]:
    """Level set of a gridded field as polylines of (delta, hop) points.

    ``values`` has shape (len(hops), len(deltas)); NaN cells are masked out.
    The default level is half the maximum over the finite cells. Crossings
    are linearly interpolated along grid edges (marching squares).
    """
    deltas = np.asarray(deltas, dtype=float)
    hops = np.asarray(hops, dtype=float)
    field_ = np.asarray(values, dtype=float)
    if field_.shape != (hops.size, deltas.size):
        raise ValueError(f"field shape {field_.shape} does not match axes "
                         f"({hops.size}, {deltas.size})")
    finite = np.isfinite(field_)
    if not finite.any():
        warnings.warn("no finite values; boundary is empty", stacklevel=2)
        return []
    if level is None:
        peak = float(np.max(field_[finite]))
        if peak <= 0.0:
            warnings.warn("flat order parameter (max = 0); boundary is empty", stacklevel=2)
            return []
        level = 0.5 * peak
    filled = np.where(finite, field_, 0.0)
    if field_.shape[0] == 1:
        # a single hop row: duplicate it so the contour tracer sees a strip
        filled = np.vstack([filled, filled])
        finite = np.vstack([finite, finite])
        hops = np.array([hops[0], hops[0]])
    contours = find_contours(filled, level, mask=finite)
    lines = []
    for c in contours:
        d = np.interp(c[:, 1], np.arange(deltas.size), deltas)
        a = np.interp(c[:, 0], np.arange(hops.size), hops)
        lines.append(np.column_stack([d, a]))
    # deterministic order: by first point
    lines.sort(key=lambda line: (line[0, 1], line[0, 0]))
    return lines


def boundary_crossings(polylines, hop: float) -> np.ndarray:
    """Sorted delta values where any polyline meets the line A/g = ``hop``."""
    out = []
    for line in polylines:
        for (d0, a0), (d1, a1) in zip(line[:-1], line[1:]):
            lo, hi = min(a0, a1), max(a0, a1)
            if not lo <= hop <= hi:
                continue
            if a1 == a0:
                out.extend([d0, d1])
            else:
                out.append(d0 + (hop - a0) / (a1 - a0) * (d1 - d0))
    return np.unique(np.round(out, 12))


@dataclass
class PhaseDiagram:
    deltas: np.ndarray
    hops: np.ndarray
    rows: list[SweepRow]
    boundaries: dict[str, list[np.ndarray]] = field(default_factory=dict)

    def grid(self, column: str, exclude_degenerate: bool = True) -> np.ndarray:
        """Row column as a (hop, delta) array; excluded points become NaN."""
        vals = np.array([
            math.nan if (r.status == FAILED or (exclude_degenerate and r.degenerate))
            else getattr(r, column)
            for r in self.rows
        ])
        return vals.reshape(self.hops.size, self.deltas.size)

    def boundary(self, which: str) -> list[np.ndarray]:
        if which not in self.boundaries:
            self.boundaries[which] = extract_boundary(
                self.deltas, self.hops, self.grid(ORDER_PARAMETERS[which]))
        return self.boundaries[which]


def phase_diagram(spec: SweepSpec, workers: int = 1) -> PhaseDiagram:
    rows = run_sweep(spec, workers=workers)
    diagram = PhaseDiagram(spec.delta_values(), spec.hop_values(), rows)
    for which in ORDER_PARAMETERS:
        diagram.boundary(which)
    return diagram
