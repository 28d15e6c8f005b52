"""Exact diagonalization of the two-site, two-excitation coupled-cavity model."""

from .entanglement import EntropyReport, all_bipartite_entropies, reduced_density, schmidt_entropy
from .hilbert import StateVector, embed, enumerate_basis
from .model import ModelParams, build_hamiltonian
from .spectra import diagonalize, ground_state
from .sweep import SweepSpec, evaluate_point, phase_diagram, run_sweep

__version__ = "0.1.0"

__all__ = [
    "EntropyReport", "ModelParams", "StateVector", "SweepSpec",
    "all_bipartite_entropies", "build_hamiltonian", "diagonalize", "embed",
    "enumerate_basis", "evaluate_point", "ground_state", "phase_diagram",
    "reduced_density", "run_sweep", "schmidt_entropy",
]
