"""
Partial traces and von Neumann entropies over the four factors
(A1, C1, A2, C2) of the two-site product space.

Two independent routes are provided: an explicit partial trace followed by
an eigen-decomposition, and singular values of the state reshaped across
the cut. Entropies are in bits.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .hilbert import embed, factor_dims
from .spectra import GroundStateResult

log = logging.getLogger(__name__)

FACTORS = ("A1", "C1", "A2", "C2")
CLAMP_TOL = 1e-12
INTEGRITY_TOL = 1e-9

# kept factors of the five inequivalent cuts, in report order
BIPARTITIONS = {
    "S_site": ("A1", "C1"),
    "S_atom": ("A1",),
    "S_cavity": ("C1",),
    "S_atoms": ("A1", "A2"),
    "S_cross": ("A1", "C2"),
}


class IntegrityError(ArithmeticError):
    """A density matrix failed its trace or positivity check."""


def factor_set(kept) -> tuple[int, ...]:
    """Sorted axis positions of ``kept`` factor names; must be a nonempty proper subset."""
    if isinstance(kept, str):
        kept = (kept,)
    names = set(kept)
    unknown = names - set(FACTORS)
    if unknown:
        raise ValueError(f"unknown factors {sorted(unknown)}; expected a subset of {FACTORS}")
    if not names or len(names) == len(FACTORS):
        raise ValueError("kept factors must be a nonempty proper subset")
    return tuple(sorted(FACTORS.index(k) for k in names))


def complement(kept) -> tuple[str, ...]:
    axes = factor_set(kept)
    return tuple(f for i, f in enumerate(FACTORS) if i not in axes)


def _sector_of(full_state: np.ndarray) -> int:
    size = full_state.shape[0]
    side = math.isqrt(size // 4)
    if 4 * side * side != size:
        raise ValueError(f"length {size} is not a two-site product-space size")
    return side - 1


@lru_cache(maxsize=None)
def _trace_table(dims: tuple[int, ...], kept_axes: tuple[int, ...]) -> np.ndarray:
    """Full-space index for every (kept multi-index, traced multi-index) pair."""
    traced_axes = [i for i in range(len(dims)) if i not in kept_axes]
    kept_ranges = [range(dims[i]) for i in kept_axes]
    traced_ranges = [range(dims[i]) for i in traced_axes]
    rows = []
    for k in itertools.product(*kept_ranges):
        row = []
        for t in itertools.product(*traced_ranges):
            occ = [0] * len(dims)
            for axis, val in zip(kept_axes, k):
                occ[axis] = val
            for axis, val in zip(traced_axes, t):
                occ[axis] = val
            row.append(int(np.ravel_multi_index(occ, dims)))
        rows.append(row)
    table = np.array(rows, dtype=int)
    table.setflags(write=False)
    return table


@dataclass(frozen=True)
class ReducedDensityMatrix:
    kept: tuple[str, ...]
    entries: np.ndarray

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def _normalized(full_state) -> np.ndarray:
    psi = np.asarray(full_state, dtype=float)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > CLAMP_TOL:
        raise ValueError(f"state not normalized (norm = {norm!r})")
    return psi


def reduced_density(full_state, kept) -> ReducedDensityMatrix:
    """rho_kept = Tr_rest |psi><psi|, by summing over the traced multi-indices."""
    psi = _normalized(full_state)
    axes = factor_set(kept)
    table = _trace_table(factor_dims(_sector_of(psi)), axes)
    m = psi[table]
    rho = m @ m.T
    return ReducedDensityMatrix(tuple(FACTORS[i] for i in axes), rho)


def _entropy_bits(p: np.ndarray) -> float:
    p = p[p > 0.0]
    return float(-np.sum(p * np.log2(p))) + 0.0


def von_neumann_entropy(rho: ReducedDensityMatrix | np.ndarray) -> float:
    entries = rho.entries if isinstance(rho, ReducedDensityMatrix) else np.asarray(rho)
    trace = float(np.trace(entries))
    if abs(trace - 1.0) > INTEGRITY_TOL:
        raise IntegrityError(f"reduced density matrix has trace {trace!r}")
    evals = np.linalg.eigvalsh(entries)
    lowest = float(evals.min())
    if lowest < -INTEGRITY_TOL:
        raise IntegrityError(f"negative eigenvalue {lowest!r} in density matrix")
    if lowest < -CLAMP_TOL:
        log.warning("clamping eigenvalue %.3e to zero", lowest)
    return _entropy_bits(np.clip(evals, 0.0, None))


def schmidt_coefficients(full_state, kept) -> np.ndarray:
    """Squared singular values of psi reshaped as (kept, traced)."""
    psi = _normalized(full_state)
    dims = factor_dims(_sector_of(psi))
    axes = factor_set(kept)
    rest = tuple(i for i in range(4) if i not in axes)
    tensor = psi.reshape(dims).transpose(axes + rest)
    rows = int(np.prod([dims[i] for i in axes]))
    sv = np.linalg.svd(tensor.reshape(rows, -1), compute_uv=False)
    return sv ** 2


def schmidt_entropy(full_state, kept) -> float:
    return _entropy_bits(schmidt_coefficients(full_state, kept))


def entropy(full_state, kept) -> float:
    return von_neumann_entropy(reduced_density(full_state, kept))


@dataclass(frozen=True)
class EntropyReport:
    S_site: float
    S_atom: float
    S_cavity: float
    S_atoms: float
    S_cross: float
    degenerate: bool = False

    def values(self) -> tuple[float, float, float, float, float]:
        return (self.S_site, self.S_atom, self.S_cavity, self.S_atoms, self.S_cross)

    def all_positive(self, threshold: float = 1e-6) -> bool:
        """Every bipartition entangled: an indicator, not a certificate, of multipartite entanglement."""
        return all(s > threshold for s in self.values())


def max_entropies(sector_n: int = 2) -> dict[str, float]:
    """log2 of the dimension reachable by each kept set inside the sector."""
    # an atom + cavity pair holds at most N excitations: 2N + 1 states
    pair = 2 * sector_n + 1
    return {
        "S_site": math.log2(pair),
        "S_atom": 1.0,
        "S_cavity": math.log2(sector_n + 1),
        "S_atoms": 2.0,
        "S_cross": math.log2(pair),
    }


def entropies_of(full_state, degenerate: bool = False) -> EntropyReport:
    vals = {name: entropy(full_state, kept) for name, kept in BIPARTITIONS.items()}
    return EntropyReport(**vals, degenerate=degenerate)


def all_bipartite_entropies(ground: GroundStateResult) -> EntropyReport:
    return entropies_of(embed(ground.vector), degenerate=ground.degenerate)
