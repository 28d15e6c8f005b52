import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ccqed.entanglement import (BIPARTITIONS, FACTORS, IntegrityError, all_bipartite_entropies,
                                complement, entropy, max_entropies, reduced_density,
                                schmidt_coefficients, schmidt_entropy, von_neumann_entropy)
from ccqed.hilbert import StateVector, embed, enumerate_basis
from ccqed.jc_oracle import MINUS, SiteState, product_state
from ccqed.model import ModelParams

from conftest import condensate_full, ground_at

CUTS = [c for r in (1, 2, 3) for c in itertools.combinations(FACTORS, r)]


def binary_entropy(p):
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def product_full(config):
    psi = np.zeros(36)
    psi[np.ravel_multi_index(config, (2, 3, 2, 3))] = 1.0
    return psi


def random_sector_state(seed):
    amps = np.random.default_rng(seed).normal(size=8)
    return embed(StateVector.from_amplitudes(enumerate_basis(2), amps))


def test_product_state_single_atom():
    rho = reduced_density(product_full((1, 0, 1, 0)), ["A1"])
    assert np.array_equal(rho.entries, np.diag([0.0, 1.0]))
    assert von_neumann_entropy(rho) == 0.0


def test_condensate_single_cavity():
    # hand partial trace: weights of c1 = 0, 1, 2 are 1/4, 1/2, 1/4
    rho = reduced_density(condensate_full(), ["C1"])
    assert np.allclose(rho.entries, np.diag([0.25, 0.5, 0.25]), atol=1e-15)
    assert von_neumann_entropy(rho) == pytest.approx(1.5, abs=1e-14)


def test_condensate_schmidt():
    # singular values 1/2, 1/sqrt2, 1/2
    assert np.sort(schmidt_coefficients(condensate_full(), ["C1"]))[-3:] == pytest.approx(
        [0.25, 0.25, 0.5], abs=1e-15)
    assert schmidt_entropy(condensate_full(), ["C1"]) == pytest.approx(1.5, abs=1e-14)


def test_resonant_polariton_pair_site_is_pure(basis2):
    params = ModelParams.scaled(0.0, 0.0)
    pair = product_state((SiteState(1, MINUS), SiteState(1, MINUS)), basis2, params)
    psi = embed(pair)
    rho = reduced_density(psi, ["A1", "C1"])
    assert np.linalg.matrix_rank(rho.entries, tol=1e-12) == 1
    assert entropy(psi, ["A1", "C1"]) == pytest.approx(0.0, abs=1e-12)
    assert entropy(psi, ["A1"]) == pytest.approx(1.0, abs=1e-12)


def test_entropy_reference_values():
    assert von_neumann_entropy(np.diag([0.5, 0.5])) == pytest.approx(1.0)
    assert von_neumann_entropy(np.diag([1.0, 0.0, 0.0])) == 0.0
    assert von_neumann_entropy(np.diag([0.25, 0.5, 0.25])) == pytest.approx(1.5)


def test_entropy_clamps_roundoff():
    assert von_neumann_entropy(np.diag([1.0 + 5e-13, -5e-13])) == pytest.approx(0.0, abs=1e-11)


def test_integrity_errors():
    with pytest.raises(IntegrityError):
        von_neumann_entropy(np.diag([1.0 + 1e-6, -1e-6]))
    with pytest.raises(IntegrityError):
        von_neumann_entropy(np.diag([0.6, 0.6]))


@pytest.mark.parametrize("kept", [[], list(FACTORS), ["X1"]])
def test_bad_factor_sets(kept):
    with pytest.raises(ValueError):
        reduced_density(product_full((0, 0, 0, 0)), kept)


def test_unnormalized_full_state_rejected():
    with pytest.raises(ValueError):
        reduced_density(2 * product_full((0, 0, 0, 0)), ["A1"])


@pytest.mark.parametrize("seed", range(6))
def test_density_matches_schmidt(seed):
    psi = random_sector_state(seed)
    for kept in CUTS:
        assert entropy(psi, kept) == pytest.approx(schmidt_entropy(psi, kept), abs=1e-9)


@pytest.mark.parametrize("seed", range(6))
def test_complement_symmetry(seed):
    psi = random_sector_state(seed)
    for kept in CUTS:
        assert entropy(psi, kept) == pytest.approx(entropy(psi, complement(kept)), abs=1e-10)


@pytest.mark.parametrize("seed", range(6))
def test_reduced_density_invariants(seed):
    psi = random_sector_state(seed)
    for kept in CUTS:
        rho = reduced_density(psi, kept).entries
        assert np.trace(rho) == pytest.approx(1.0, abs=1e-12)
        assert np.array_equal(rho, rho.T) or np.allclose(rho, rho.T, atol=1e-15)
        assert np.linalg.eigvalsh(rho).min() >= -1e-12


def test_site_rank_bound_sector_two():
    # five atom-cavity states carry at most two excitations
    for seed in range(10):
        rho = reduced_density(random_sector_state(seed), ["A1", "C1"]).entries
        assert np.linalg.matrix_rank(rho, tol=1e-12) <= 5


def test_max_entropies():
    smax = max_entropies(2)
    assert smax["S_site"] == pytest.approx(math.log2(5))
    assert smax["S_cavity"] == pytest.approx(math.log2(3))
    assert smax["S_atom"] == 1.0 and smax["S_atoms"] == 2.0


def test_resonance_small_hopping():
    rep = all_bipartite_entropies(ground_at(0.0, 0.01))
    assert rep.S_atom == pytest.approx(1.0, abs=1e-3)
    assert rep.S_site < 0.05


def test_photonic_limit_small_hopping():
    rep = all_bipartite_entropies(ground_at(50.0, 0.01))
    for s in (rep.S_site, rep.S_cavity, rep.S_cross):
        assert s == pytest.approx(1.5, abs=0.02)
    assert rep.S_atom < 1e-2 and rep.S_atoms < 1e-2


def test_atomic_limit_matches_perturbation():
    # each atom leaks weight ~ (g/delta)^2 into |g,1>
    rep = all_bipartite_entropies(ground_at(-50.0, 0.01))
    p = 1 / 50 ** 2
    assert rep.S_site < 1e-3
    assert rep.S_atom == pytest.approx(binary_entropy(p), rel=0.02)
    assert rep.S_atoms == pytest.approx(2 * binary_entropy(p), rel=0.02)


def test_report_order_and_flag():
    g = ground_at(-10.0, 10.0)
    rep = all_bipartite_entropies(g)
    assert rep.values() == tuple(getattr(rep, k) for k in BIPARTITIONS)
    assert rep.all_positive()
    assert not all_bipartite_entropies(ground_at(0.0, 0.0)).all_positive()


@settings(max_examples=60, deadline=None)
@given(st.floats(-30, 30), st.floats(-20, 20), st.floats(-5, 5))
def test_ground_state_symmetries(delta, hop, omega_c):
    g = ground_at(delta, hop, omega_c=omega_c)
    psi = embed(g.vector)
    smax = max_entropies()
    rep = all_bipartite_entropies(g)
    for name, val in zip(BIPARTITIONS, rep.values()):
        assert -1e-12 <= val <= smax[name] + 1e-9
    if not g.degenerate:
        assert entropy(psi, ["A1"]) == pytest.approx(entropy(psi, ["A2"]), abs=1e-10)
        assert entropy(psi, ["C1"]) == pytest.approx(entropy(psi, ["C2"]), abs=1e-10)
        assert entropy(psi, ["A1", "C2"]) == pytest.approx(entropy(psi, ["A2", "C1"]), abs=1e-10)
    assert entropy(psi, ["A1", "C1"]) == pytest.approx(entropy(psi, ["A2", "C2"]), abs=1e-10)
    assert entropy(psi, ["A1", "A2"]) == pytest.approx(entropy(psi, ["C1", "C2"]), abs=1e-10)
