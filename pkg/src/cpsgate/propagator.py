"""Numerical time evolution and conditional Kraus field operators.

The joint Hamiltonian is small (48-dim for the qubit truncation), so the
unitary is computed by Hermitian eigendecomposition: U(t) = V e^{-iwt} V+.
Measuring the atom in level k after preparing it in level j conditions the
field on the block K_{kj}(t) = <k| U(t) |j> (a "Kraus transformer").  For
the protocols here the atom starts in the ground level, so the six
operators K_k(t) = K_{k1}(t) carry all of the conditional field dynamics;
unitarity of U makes them a complete Kraus set.

All functions are pure; a ``SpectralPropagator`` instance is immutable
after construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import GROUND_LEVEL, N_LEVELS, dim_field, enumerate_basis, joint_index
from .model import PhysParams, build_hamiltonian

DEFAULT_TOL = 1e-10
COMPLETENESS_TOL = 1e-10


@dataclass(frozen=True)
class KrausSet:
    """The six conditional field operators at one time.

    ``ops[k]`` maps the initial field state to the (unnormalized) field
    state found when the atom is detected in level ``k+1``.  Completeness
    sum_k ops[k]+ ops[k] = 1 holds to ``COMPLETENESS_TOL``.
    """

    time: float
    ops: np.ndarray  # shape (6, d, d)

    @property
    def no_jump(self) -> np.ndarray:
        """Branch with the atom back in its initial level (photon-number conserving)."""
        return self.ops[0]

    def for_level(self, level: int) -> np.ndarray:
        """Branch for detecting the atom in a given level (1-based)."""
        if not 1 <= level <= N_LEVELS:
            raise ValueError(f"atomic level {level} outside 1..{N_LEVELS}")
        return self.ops[level - 1]

    def completeness_residual(self) -> float:
        d = self.ops.shape[1]
        acc = np.zeros((d, d), dtype=complex)
        for op in self.ops:
            acc += op.conj().T @ op
        return float(np.max(np.abs(acc - np.eye(d))))


class SpectralPropagator:
    """Eigendecomposition-backed propagator for a fixed Hermitian matrix."""

    def __init__(self, h: np.ndarray, tol: float = DEFAULT_TOL):
        if tol <= 0:
            raise ValueError("tol must be positive")
        herm_residual = float(np.max(np.abs(h - h.conj().T)))
        if herm_residual > 1e-12 * max(1.0, float(np.max(np.abs(h)))):
            raise ValueError(f"matrix is not Hermitian (residual {herm_residual:.3e})")
        self.tol = tol
        self._w, self._v = np.linalg.eigh(h)

    def unitary(self, t: float) -> np.ndarray:
        """U(t) = exp(-iHt), with a unitarity check against ``tol``."""
        phases = np.exp(-1j * self._w * t)
        u = (self._v * phases) @ self._v.conj().T
        residual = float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
        if residual > self.tol:
            raise ArithmeticError(f"unitarity residual {residual:.3e} exceeds tol {self.tol:.1e}")
        return u

    def kraus(self, t: float, initial_level: int = GROUND_LEVEL) -> KrausSet:
        return extract_kraus(self.unitary(t), t, initial_level=initial_level)


def propagate(h: np.ndarray, t: float, tol: float = DEFAULT_TOL) -> np.ndarray:
    """One-shot exp(-iHt) for Hermitian ``h``."""
    if t < 0:
        raise ValueError("t must be >= 0")
    return SpectralPropagator(h, tol=tol).unitary(t)


def extract_kraus(u: np.ndarray, time: float, initial_level: int = GROUND_LEVEL) -> KrausSet:
    """Slice the joint unitary into conditional field operators.

    ``ops[k][s', s] = <k+1, s'| u |initial_level, s>``.  Raises if the
    resulting set is not complete (i.e. ``u`` was not unitary on the
    initial-level column block).
    """
    dim = u.shape[0]
    if u.shape != (dim, dim) or dim % N_LEVELS != 0:
        raise ValueError(f"joint operator of dimension 6*d expected, got shape {u.shape}")
    if not 1 <= initial_level <= N_LEVELS:
        raise ValueError(f"atomic level {initial_level} outside 1..{N_LEVELS}")
    d = dim // N_LEVELS
    col = slice((initial_level - 1) * d, initial_level * d)
    ops = np.stack([u[k * d : (k + 1) * d, col] for k in range(N_LEVELS)])
    kraus = KrausSet(time=time, ops=ops)
    residual = kraus.completeness_residual()
    if residual > COMPLETENESS_TOL:
        raise ArithmeticError(
            f"Kraus completeness residual {residual:.3e} exceeds {COMPLETENESS_TOL:.1e}"
        )
    return kraus


def kraus_at(params: PhysParams, t: float, tol: float = DEFAULT_TOL) -> KrausSet:
    """Build the Hamiltonian, propagate to ``t`` and extract the Kraus set."""
    return SpectralPropagator(build_hamiltonian(params), tol=tol).kraus(t)


def leakage_check(params: PhysParams, t_grid: np.ndarray | list[float]) -> float:
    """Worst-case population above single occupation, over the qubit sector.

    Starting from the atomic ground level and every field basis state with
    occupations <= 1, evolves over ``t_grid`` and returns the maximum total
    probability found in joint states whose field label has any occupation
    >= 2.  Requires ``params.n_max >= 2`` so that leakage has room to show.
    """
    if params.n_max < 2:
        raise ValueError("leakage check needs n_max >= 2")
    prop = SpectralPropagator(build_hamiltonian(params))
    d = dim_field(params.n_max)
    labels = enumerate_basis(params.n_max)

    over = np.array([max(label) >= 2 for label in labels])
    over_joint = np.tile(over, N_LEVELS)

    qubit_columns = [
        joint_index(GROUND_LEVEL, label, params.n_max)
        for label in labels
        if max(label) <= 1
    ]

    worst = 0.0
    for t in t_grid:
        u = prop.unitary(float(t))
        amplitudes = u[:, qubit_columns]
        probs = np.abs(amplitudes) ** 2
        worst = max(worst, float(probs[over_joint, :].sum(axis=0).max()))
    return worst
