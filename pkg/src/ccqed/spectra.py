"""
Cyclic Jacobi eigensolver for small dense real symmetric matrices.

The sector Hamiltonians here are at most a few dozen rows, where plain
Jacobi rotations are accurate to working precision and fully deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hilbert import StateVector
from .model import HamiltonianMatrix

MAX_SWEEPS = 100
OFF_TOL = 1e-14
MAX_DIM = 64
DEGENERACY_TOL = 1e-9


class SolverError(RuntimeError):
    """Jacobi iteration did not reach the off-diagonal tolerance."""

    def __init__(self, off_norm: float, sweeps: int):
        super().__init__(
            f"Jacobi did not converge after {sweeps} sweeps "
            f"(off-diagonal norm {off_norm:.3e})"
        )
        self.off_norm = off_norm
        self.sweeps = sweeps


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns
    residuals: np.ndarray
    sweeps: int


@dataclass(frozen=True)
class GroundStateResult:
    energy: float
    vector: StateVector
    gap: float
    degenerate: bool


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off * off)))


def round_robin(n: int) -> list[list[tuple[int, int]]]:
    """Pairings covering every (p, q) exactly once, each round disjoint.

    Round-robin tournament ordering; with an odd ``n`` one index sits out
    each round.
    """
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = []
        for k in range(m // 2):
            p, q = players[k], players[m - 1 - k]
            if p < n and q < n:
                pairs.append((min(p, q), max(p, q)))
        rounds.append(pairs)
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigh(matrix, max_sweeps: int = MAX_SWEEPS, tol: float = OFF_TOL):
    """Eigenvalues (ascending) and column eigenvectors of a symmetric matrix.

    Cyclic Jacobi with round-robin ordering: each round applies disjoint
    rotations at once. Returns ``(w, v, sweeps)``. Raises
    :class:`SolverError` if the off-diagonal Frobenius norm is still above
    ``tol * ||A||_F`` after ``max_sweeps`` sweeps.
    """
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    if a.ndim != 2 or a.shape != (n, n):
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix is not symmetric")
    v = np.eye(n)
    target = tol * float(np.linalg.norm(a))
    rounds = [tuple(np.array(ix) for ix in zip(*pairs)) for pairs in round_robin(n) if pairs]
    sweeps = 0
    off = _off_norm(a)
    while off > target:
        if sweeps >= max_sweeps:
            raise SolverError(off, sweeps)
        sweeps += 1
        for p, q in rounds:
            apq = a[p, q]
            active = apq != 0.0
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            # Golub & Van Loan sym.schur2
            with np.errstate(over="ignore", divide="ignore"):
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                # |tau| = inf (vanishing apq) gives t = 0, the identity rotation
                t = np.sign(tau) / (np.abs(tau) + np.hypot(1.0, tau))
            t[tau == 0.0] = 1.0
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            rot = np.eye(n)
            rot[p, p] = c
            rot[q, q] = c
            rot[p, q] = s
            rot[q, p] = -s
            a = rot.T @ a @ rot
            # the rotation zeroes these pairs exactly
            a[p, q] = 0.0
            a[q, p] = 0.0
            v = v @ rot
        off = _off_norm(a)
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order], sweeps


def diagonalize(h: HamiltonianMatrix) -> EigenDecomposition:
    entries = h.entries if isinstance(h, HamiltonianMatrix) else np.asarray(h)
    if entries.shape[0] > MAX_DIM:
        raise ValueError(f"dimension {entries.shape[0]} exceeds {MAX_DIM}")
    w, v, sweeps = jacobi_eigh(entries)
    residuals = np.linalg.norm(entries @ v - v * w[None, :], axis=0)
    return EigenDecomposition(w, v, residuals, sweeps)


def fix_sign(vec: np.ndarray) -> np.ndarray:
    """Flip so the largest-magnitude amplitude (first on ties) is positive."""
    k = int(np.argmax(np.abs(vec)))
    return -vec if vec[k] < 0 else vec


def is_degenerate(gap: float, energy: float) -> bool:
    return gap < DEGENERACY_TOL * max(1.0, abs(energy))


def ground_state(h: HamiltonianMatrix) -> GroundStateResult:
    dec = diagonalize(h)
    e0 = float(dec.eigenvalues[0])
    gap = float(dec.eigenvalues[1] - e0) if len(dec.eigenvalues) > 1 else math.inf
    vec = fix_sign(dec.eigenvectors[:, 0])
    return GroundStateResult(
        energy=e0,
        vector=StateVector.from_amplitudes(h.basis, vec),
        gap=gap,
        degenerate=is_degenerate(gap, e0),
    )
