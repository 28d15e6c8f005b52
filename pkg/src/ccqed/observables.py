"""Site occupation expectations and the variance order parameters."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hilbert import StateVector
from .spectra import GroundStateResult

# operator id -> occupation as a function of (a1, c1, a2, c2)
_SITE_OPERATORS = {
    "n_total_1": lambda a1, c1, a2, c2: a1 + c1,
    "n_atom_1": lambda a1, c1, a2, c2: a1,
    "n_photon_1": lambda a1, c1, a2, c2: c1,
    "n_total_2": lambda a1, c1, a2, c2: a2 + c2,
    "n_atom_2": lambda a1, c1, a2, c2: a2,
    "n_photon_2": lambda a1, c1, a2, c2: c2,
}
OPERATOR_IDS = tuple(_SITE_OPERATORS)


@dataclass(frozen=True)
class OrderParameters:
    mean_total_site1: float
    var_total_site1: float
    mean_atom_site1: float
    var_atom_site1: float


def _state(ground) -> StateVector:
    return ground.vector if isinstance(ground, GroundStateResult) else ground


def occupation(state: StateVector, operator_id: str) -> np.ndarray:
    """Diagonal of a site number operator in the excitation basis."""
    try:
        op = _SITE_OPERATORS[operator_id]
    except KeyError:
        raise ValueError(
            f"unknown operator {operator_id!r}; expected one of {OPERATOR_IDS}"
        ) from None
    return np.array([op(*c) for c in state.basis.configs], dtype=float)


def expectation(ground, operator_id: str) -> float:
    state = _state(ground)
    return float(state.amplitudes ** 2 @ occupation(state, operator_id))


def _mean_var(probs: np.ndarray, diag: np.ndarray) -> tuple[float, float]:
    mean = float(probs @ diag)
    var = float(probs @ (diag - mean) ** 2)
    return mean, var


def order_parameters(ground) -> OrderParameters:
    state = _state(ground)
    probs = state.amplitudes ** 2
    mt, vt = _mean_var(probs, occupation(state, "n_total_1"))
    ma, va = _mean_var(probs, occupation(state, "n_atom_1"))
    return OrderParameters(mt, vt, ma, va)
