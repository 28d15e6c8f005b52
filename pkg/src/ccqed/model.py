"""Coupled-cavity (Jaynes-Cummings-Hubbard) Hamiltonian on a config basis."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .hilbert import BasisConfig, ExcitationBasis, factor_dims


@dataclass(frozen=True)
class ModelParams:
    """Frequencies and couplings of the two-site model.

    Only ``delta = omega_a - omega_c``, ``g`` and ``A`` change the eigenvectors;
    ``omega_c`` shifts an N-excitation sector by ``N * omega_c``.
    """

    omega_c: float
    omega_a: float
    g: float
    A: float

    def __post_init__(self):
        vals = (self.omega_c, self.omega_a, self.g, self.A)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"non-finite model parameter in {vals}")
        if not self.g > 0:
            raise ValueError(f"coupling g must be positive, got {self.g}")

    @property
    def delta(self) -> float:
        return self.omega_a - self.omega_c

    @classmethod
    def from_detuning(cls, delta: float, A: float, g: float = 1.0, omega_c: float = 0.0):
        return cls(omega_c=omega_c, omega_a=omega_c + delta, g=g, A=A)

    @classmethod
    def scaled(cls, delta_over_g: float, hop_over_g: float, g: float = 1.0,
               omega_c: float = 0.0):
        """Parameters given as ratios to ``g``, the natural plotting axes."""
        return cls.from_detuning(delta_over_g * g, hop_over_g * g, g=g, omega_c=omega_c)


@dataclass(frozen=True)
class HamiltonianMatrix:
    basis: ExcitationBasis
    entries: np.ndarray

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def _couplings(params: ModelParams, config):
    """Off-diagonal terms raising the config: yields (target, amplitude).

    Every term maps ``config`` to a partner reached by one of
    a_j^dagger sigma_j^- or a_1^dagger a_2 (and the reverse hop); the hermitian
    partners are filled in by the caller.
    """
    a1, c1, a2, c2 = config
    if a1 == 1:
        yield (0, c1 + 1, a2, c2), params.g * math.sqrt(c1 + 1)
    if a2 == 1:
        yield (a1, c1, 0, c2 + 1), params.g * math.sqrt(c2 + 1)
    # a_2^dagger a_1: photon from site 1 to site 2
    if c1 > 0:
        yield (a1, c1 - 1, a2, c2 + 1), params.A * math.sqrt(c1 * (c2 + 1))


def _assemble(params: ModelParams, configs) -> np.ndarray:
    index = {tuple(c): k for k, c in enumerate(configs)}
    h = np.zeros((len(configs), len(configs)))
    for i, cfg in enumerate(configs):
        a1, c1, a2, c2 = cfg
        h[i, i] = params.omega_c * (c1 + c2) + params.omega_a * (a1 + a2)
        for target, amp in _couplings(params, cfg):
            j = index.get(target)
            # targets beyond the photon cutoff are truncated away
            if j is not None:
                h[i, j] = amp
                h[j, i] = amp
    return h


def build_hamiltonian(params: ModelParams, basis: ExcitationBasis) -> HamiltonianMatrix:
    if len(basis) == 0:
        raise ValueError("empty basis")
    h = _assemble(params, basis.configs)
    h.setflags(write=False)
    return HamiltonianMatrix(basis, h)


def product_configs(cutoff: int) -> list[BasisConfig]:
    """Every product-space config in row-major order for a per-site photon cutoff."""
    return [BasisConfig(*c) for c in itertools.product(*map(range, factor_dims(cutoff)))]


def excitation_commutes(params: ModelParams, basis: ExcitationBasis) -> float:
    """Max |[H, N]| entry with H built by the same rules on the full product space."""
    configs = product_configs(basis.sector_n)
    h = _assemble(params, configs)
    n_diag = np.array([sum(c) for c in configs], dtype=float)
    comm = h * n_diag[None, :] - n_diag[:, None] * h
    return float(np.max(np.abs(comm)))
