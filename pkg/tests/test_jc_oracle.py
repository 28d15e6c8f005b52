import math

import numpy as np
import pytest

from ccqed.hilbert import enumerate_basis
from ccqed.jc_oracle import (MINUS, PLUS, a0_ground_state, dressed_amplitudes,
                             dressed_energy, mixing_angle, single_site_block)
from ccqed.model import ModelParams

DELTAS = [-50.0, -5.0, -1.0, 0.0, 0.3, 2.0, 7.5, 50.0]


def test_resonant_angle():
    assert mixing_angle(1, 1.0, 0.0) == pytest.approx(math.pi / 2)
    assert mixing_angle(3, 0.2, 0.0) == pytest.approx(math.pi / 2)


def test_angle_quarter_turn():
    # tan(theta) = 2 * 1 * 1 / 2 = 1
    assert mixing_angle(1, 1.0, 2.0) == pytest.approx(math.pi / 4)


def test_angle_range_and_limits():
    assert 0 < mixing_angle(1, 1.0, 1e8) < 1e-7
    assert math.pi - 1e-7 < mixing_angle(1, 1.0, -1e8) < math.pi
    grid = np.linspace(-20, 20, 401)
    thetas = np.array([mixing_angle(2, 1.0, d) for d in grid])
    assert np.all(np.diff(thetas) < 0)


def test_minus_state_photonic_limit():
    amp_e, amp_g = dressed_amplitudes(1, MINUS, 1.0, 1e6)
    assert amp_e == pytest.approx(0.0, abs=1e-6)
    assert amp_g == pytest.approx(-1.0, abs=1e-12)


def test_minus_state_atomic_limit():
    amp_e, amp_g = dressed_amplitudes(1, MINUS, 1.0, -1e6)
    assert amp_e == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("delta", DELTAS)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_doublet_orthonormal(n, delta):
    m = np.array(dressed_amplitudes(n, MINUS, 1.0, delta))
    p = np.array(dressed_amplitudes(n, PLUS, 1.0, delta))
    assert m @ p == pytest.approx(0.0, abs=1e-14)
    assert m @ m == pytest.approx(1.0, abs=1e-14)
    assert p @ p == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("delta", DELTAS)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_energies_match_block_diagonalization(n, delta):
    params = ModelParams.from_detuning(delta, 0.0, g=1.0, omega_c=0.4)
    block = single_site_block(n, params)
    lo, hi = np.linalg.eigvalsh(block)
    assert dressed_energy(n, MINUS, params) == pytest.approx(lo, abs=1e-12)
    assert dressed_energy(n, PLUS, params) == pytest.approx(hi, abs=1e-12)
    assert hi - lo == pytest.approx(math.sqrt(delta ** 2 + 4 * n), abs=1e-12)
    # substituting the analytic states reproduces the energies
    for branch in (MINUS, PLUS):
        v = np.array(dressed_amplitudes(n, branch, params.g, params.delta))
        e = dressed_energy(n, branch, params)
        assert np.linalg.norm(block @ v - e * v) < 1e-12


def test_resonant_energies():
    params = ModelParams.from_detuning(0.0, 0.0, g=1.0, omega_c=2.0)
    assert dressed_energy(1, MINUS, params) == pytest.approx(2.0 - 1.0)
    assert dressed_energy(1, PLUS, params) == pytest.approx(2.0 + 1.0)
    gap = dressed_energy(2, PLUS, params) - dressed_energy(2, MINUS, params)
    assert gap == pytest.approx(2 * math.sqrt(2))
    assert dressed_energy(0, None, params) == 0.0


def test_a0_ground_resonance_is_polariton_pair():
    params = ModelParams.scaled(0.0, 0.0)
    ground = a0_ground_state(params, enumerate_basis(2))
    assert [(s.n, s.branch) for s in ground.sites] == [(1, MINUS), (1, MINUS)]
    assert ground.energy == pytest.approx(-2.0)
    assert not ground.degenerate


def test_a0_ground_atomic_limit():
    basis = enumerate_basis(2)
    ground = a0_ground_state(ModelParams.scaled(-50.0, 0.0), basis)
    assert ground.state.amplitudes[basis.index_of((1, 0, 1, 0))] ** 2 > 0.999


def test_a0_ground_photonic_limit():
    basis = enumerate_basis(2)
    ground = a0_ground_state(ModelParams.scaled(50.0, 0.0), basis)
    assert ground.state.amplitudes[basis.index_of((0, 1, 0, 1))] ** 2 > 0.999


def test_a0_requires_zero_hopping():
    with pytest.raises(ValueError):
        a0_ground_state(ModelParams.scaled(0.0, 0.1), enumerate_basis(2))
