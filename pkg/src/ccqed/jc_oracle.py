"""
Analytic single-site Jaynes-Cummings dressed states.

In the basis (|e, n-1>, |g, n>) the n-excitation doublet is

    |n->  =  sin(theta/2) |e, n-1>  -  cos(theta/2) |g, n>
    |n+>  =  cos(theta/2) |e, n-1>  +  sin(theta/2) |g, n>

with tan(theta) = 2 g sqrt(n) / delta and theta in (0, pi). The minus branch
tends to -|g, n> for delta -> +inf and to |e, n-1> for delta -> -inf.

At zero hopping the two sites decouple, so every eigenstate of the two-site
sector is a product of dressed states; this module builds the lowest one as
an analytic cross-check for the numerical path.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .hilbert import ExcitationBasis, StateVector
from .model import ModelParams

MINUS, PLUS = "minus", "plus"
DEGENERACY_TOL = 1e-10


def mixing_angle(n: int, g: float, delta: float) -> float:
    if n < 1:
        raise ValueError("mixing angle is defined for n >= 1")
    if g <= 0:
        raise ValueError("g must be positive")
    return math.atan2(2.0 * g * math.sqrt(n), delta)


def dressed_amplitudes(n: int, branch: str, g: float, delta: float) -> tuple[float, float]:
    """Amplitudes on (|e, n-1>, |g, n>)."""
    half = 0.5 * mixing_angle(n, g, delta)
    if branch == MINUS:
        return math.sin(half), -math.cos(half)
    if branch == PLUS:
        return math.cos(half), math.sin(half)
    raise ValueError(f"unknown branch {branch!r}")


def dressed_energy(n: int, branch: str, params: ModelParams) -> float:
    """E_n(+/-) = n w_c + delta/2 +/- sqrt(delta^2 + 4 g^2 n)/2; the vacuum has E = 0."""
    if n == 0:
        return 0.0
    if n < 0:
        raise ValueError("n must be >= 0")
    d = params.delta
    root = 0.5 * math.sqrt(d * d + 4.0 * params.g ** 2 * n)
    sign = {MINUS: -1.0, PLUS: 1.0}[branch]
    return n * params.omega_c + 0.5 * d + sign * root


@dataclass(frozen=True)
class SiteState:
    """One site eigenstate: excitation ``n`` with ``branch`` (None for vacuum)."""

    n: int
    branch: str | None

    def amplitude(self, atom: int, photons: int, params: ModelParams) -> float:
        if self.n == 0:
            return 1.0 if (atom, photons) == (0, 0) else 0.0
        amp_e, amp_g = dressed_amplitudes(self.n, self.branch, params.g, params.delta)
        if (atom, photons) == (1, self.n - 1):
            return amp_e
        if (atom, photons) == (0, self.n):
            return amp_g
        return 0.0

    def energy(self, params: ModelParams) -> float:
        return dressed_energy(self.n, self.branch, params)


def site_states(n: int) -> list[SiteState]:
    return [SiteState(0, None)] if n == 0 else [SiteState(n, MINUS), SiteState(n, PLUS)]


@dataclass(frozen=True)
class ProductGround:
    state: StateVector
    energy: float
    sites: tuple[SiteState, SiteState]
    degenerate: bool


def product_state(sites, basis: ExcitationBasis, params: ModelParams) -> StateVector:
    s1, s2 = sites
    amps = [s1.amplitude(a1, c1, params) * s2.amplitude(a2, c2, params)
            for a1, c1, a2, c2 in basis.configs]
    return StateVector.from_amplitudes(basis, amps)


def product_spectrum(params: ModelParams, sector_n: int) -> list[tuple[float, tuple]]:
    """All (energy, (site1, site2)) products with total excitation ``sector_n``, sorted."""
    out = []
    for n1 in range(sector_n + 1):
        for s1, s2 in itertools.product(site_states(n1), site_states(sector_n - n1)):
            out.append((s1.energy(params) + s2.energy(params), (s1, s2)))
    out.sort(key=lambda item: item[0])
    return out


def a0_ground_state(params: ModelParams, basis: ExcitationBasis) -> ProductGround:
    """Lowest product of dressed states in the sector; requires ``A == 0``."""
    if params.A != 0:
        raise ValueError("analytic product ground state needs zero hopping")
    spectrum = product_spectrum(params, basis.sector_n)
    (e0, sites), rest = spectrum[0], spectrum[1:]
    degenerate = bool(rest) and rest[0][0] - e0 < DEGENERACY_TOL * max(1.0, abs(e0))
    return ProductGround(product_state(sites, basis, params), e0, sites, degenerate)


def single_site_block(n: int, params: ModelParams) -> np.ndarray:
    """JC Hamiltonian on (|e, n-1>, |g, n>)."""
    c = params.g * math.sqrt(n)
    return np.array([
        [params.omega_a + (n - 1) * params.omega_c, c],
        [c, n * params.omega_c],
    ])
