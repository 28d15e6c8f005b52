"""
Fixed-excitation basis of the two-site atom + cavity product space.

Every config is a 4-tuple ``(atom1, photons1, atom2, photons2)``. The full
product space uses the factor ordering (atom1, cavity1, atom2, cavity2),
row-major, with dims ``(2, N+1, 2, N+1)``. A photon cutoff of N per site is
exact inside the N-excitation sector since no site can hold more than N
photons when N is conserved.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

NORM_TOL = 1e-12


class SiteConfig(NamedTuple):
    atom: int
    photons: int


class BasisConfig(NamedTuple):
    """Occupations of both sites; unpacks as (a1, c1, a2, c2)."""

    atom1: int
    photons1: int
    atom2: int
    photons2: int

    @property
    def site1(self) -> SiteConfig:
        return SiteConfig(self.atom1, self.photons1)

    @property
    def site2(self) -> SiteConfig:
        return SiteConfig(self.atom2, self.photons2)

    @property
    def excitations(self) -> int:
        return sum(self)

    def label(self) -> str:
        ab = "ge"
        return f"({ab[self.atom1]},{self.photons1};{ab[self.atom2]},{self.photons2})"


def factor_dims(sector_n: int) -> tuple[int, int, int, int]:
    return (2, sector_n + 1, 2, sector_n + 1)


@dataclass(frozen=True)
class ExcitationBasis:
    sector_n: int
    configs: tuple[BasisConfig, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {c: k for k, c in enumerate(self.configs)})
        if len(self._index) != len(self.configs):
            raise ValueError("duplicate configs in basis")

    def __len__(self) -> int:
        return len(self.configs)

    def __iter__(self):
        return iter(self.configs)

    def __contains__(self, config) -> bool:
        return tuple(config) in self._index

    def index_of(self, config) -> int:
        return self._index[BasisConfig(*config)]

    @property
    def dims(self) -> tuple[int, int, int, int]:
        return factor_dims(self.sector_n)

    def full_indices(self) -> np.ndarray:
        """Row-major product-space index of every config, in basis order."""
        return np.array([full_space_index(c, self.sector_n) for c in self.configs], dtype=int)


def enumerate_basis(sector_n: int) -> ExcitationBasis:
    """All configs with total excitation ``sector_n``, lexicographically ordered."""
    if sector_n < 0:
        raise ValueError(f"sector_n must be >= 0, got {sector_n}")
    ranges = (range(2), range(sector_n + 1), range(2), range(sector_n + 1))
    configs = tuple(
        BasisConfig(*c) for c in itertools.product(*ranges) if sum(c) == sector_n
    )
    return ExcitationBasis(sector_n, configs)


def full_space_index(config, sector_n: int) -> int:
    dims = factor_dims(sector_n)
    occ = tuple(config)
    if len(occ) != 4 or any(not 0 <= o < d for o, d in zip(occ, dims)):
        raise ValueError(f"occupation {occ} out of range for dims {dims}")
    return int(np.ravel_multi_index(occ, dims))


@dataclass(frozen=True)
class StateVector:
    basis: ExcitationBasis
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=float)
        if amps.shape != (len(self.basis),):
            raise ValueError(
                f"expected {len(self.basis)} amplitudes, got shape {amps.shape}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state not normalized (norm = {norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, basis: ExcitationBasis, amplitudes, normalize=True):
        amps = np.asarray(amplitudes, dtype=float)
        if normalize:
            amps = amps / np.linalg.norm(amps)
        return cls(basis, amps)

    @classmethod
    def from_configs(cls, basis: ExcitationBasis, weights: dict) -> "StateVector":
        """Build from ``{config: amplitude}``; the result is normalized."""
        amps = np.zeros(len(basis))
        for config, w in weights.items():
            amps[basis.index_of(config)] = w
        return cls.from_amplitudes(basis, amps)

    def overlap(self, other: "StateVector") -> float:
        """|<self|other>|, insensitive to global sign."""
        if other.basis.configs != self.basis.configs:
            raise ValueError("states live in different bases")
        return abs(float(self.amplitudes @ other.amplitudes))


def embed(state: StateVector, cutoff: int | None = None) -> np.ndarray:
    """Sector amplitudes scattered into the full product vector.

    ``cutoff`` is the per-site photon cutoff of the target space and defaults
    to the sector number, giving a vector of length ``4 (N+1)**2``. A larger
    cutoff lets vectors of different sectors share one space.
    """
    basis = state.basis
    cutoff = basis.sector_n if cutoff is None else cutoff
    if cutoff < basis.sector_n:
        raise ValueError("cutoff below sector number would truncate the state")
    full = np.zeros(int(np.prod(factor_dims(cutoff))))
    idx = [full_space_index(c, cutoff) for c in basis.configs]
    full[idx] = state.amplitudes
    return full
