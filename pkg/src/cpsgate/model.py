"""Physical parameters and the rotating-frame Hamiltonian.

Level scheme (ladder/tripod hybrid): the quantized mode a drives the
1 <-> 2 transition, classical fields with Rabi frequencies omega_1 and
omega_2 drive 2 <-> 3 and 2 <-> 5, and the quantized modes b, c drive
3 <-> 4 and 5 <-> 6.  In the rotating frame the Hamiltonian is
time-independent:

    H = sum_k delta_k |k><k|
        + (g_a |2><1| a_a + g_b |4><3| a_b + g_c |6><5| a_c + h.c.)
        + (omega_1 |2><3| + omega_2 |2><5| + h.c.)

with hbar = 1; couplings may be complex, detunings are real.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .fock import Mode, N_LEVELS, dim_field, mode_annihilator

HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class PhysParams:
    """Coupling constants, drive strengths, detunings and truncation order.

    Angular-frequency units throughout (hbar = 1).  ``deltas`` are the six
    rotating-frame level shifts; all paper-style resonant scenarios use
    zeros.  ``n_max`` is the per-mode photon truncation.
    """

    g_a: complex = 1.0
    g_b: complex = 1.0
    g_c: complex = 1.0
    omega_1: complex = 1.0
    omega_2: complex = 1.0
    deltas: tuple[float, float, float, float, float, float] = (0.0,) * 6
    n_max: int = 1

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")
        if len(self.deltas) != N_LEVELS:
            raise ValueError(f"need {N_LEVELS} detunings, got {len(self.deltas)}")
        values = (self.g_a, self.g_b, self.g_c, self.omega_1, self.omega_2, *self.deltas)
        if not all(math.isfinite(abs(complex(v))) for v in values):
            raise ValueError("parameters must be finite")

    @classmethod
    def uniform(cls, g: float, omega: float, n_max: int = 1) -> "PhysParams":
        """Equal mode couplings |g| and equal drives |omega|, on resonance."""
        return cls(g_a=g, g_b=g, g_c=g, omega_1=omega, omega_2=omega, n_max=n_max)

    @property
    def resonant(self) -> bool:
        return all(d == 0.0 for d in self.deltas)

    @property
    def couplings_equal(self) -> bool:
        mags = [abs(self.g_a), abs(self.g_b), abs(self.g_c)]
        return _all_close(mags)

    @property
    def drives_equal(self) -> bool:
        return _all_close([abs(self.omega_1), abs(self.omega_2)])


def _all_close(mags: list[float], rtol: float = 1e-12) -> bool:
    ref = max(mags)
    return all(abs(m - ref) <= rtol * max(1.0, ref) for m in mags)


def detunings_from_single_photon(eps: tuple[float, ...]) -> tuple[float, ...]:
    """Rotating-frame level shifts from the six single-photon detunings.

    delta_1 = eps_1
    delta_2 = eps_1 - eps_2
    delta_3 = eps_1 - eps_2 + eps_3
    delta_4 = eps_1 - eps_4
    delta_5 = eps_1 - eps_4 + eps_5
    delta_6 = eps_1 - eps_4 + eps_5 - eps_6

    The last line extends the alternating-sum pattern to the 5 <-> 6
    transition driven by mode c.
    """
    if len(eps) != 6:
        raise ValueError(f"need 6 single-photon detunings, got {len(eps)}")
    e1, e2, e3, e4, e5, e6 = eps
    return (e1, e1 - e2, e1 - e2 + e3, e1 - e4, e1 - e4 + e5, e1 - e4 + e5 - e6)


def atomic_projector(level: int) -> np.ndarray:
    """|level><level| on the six-level atomic space (1-based level)."""
    p = np.zeros((N_LEVELS, N_LEVELS), dtype=complex)
    p[level - 1, level - 1] = 1.0
    return p


def atomic_transition(upper: int, lower: int) -> np.ndarray:
    """|upper><lower| on the six-level atomic space (1-based levels)."""
    op = np.zeros((N_LEVELS, N_LEVELS), dtype=complex)
    op[upper - 1, lower - 1] = 1.0
    return op


def build_hamiltonian(params: PhysParams) -> np.ndarray:
    """Dense joint-space Hamiltonian, atom-major ordering.

    Returns a Hermitian ``(6*d, 6*d)`` complex matrix with
    ``d = (n_max+1)**3``.  Each quantized coupling term transfers one
    photon between its mode and its atomic transition; classical drives
    act on the atom alone.
    """
    d = dim_field(params.n_max)
    eye_f = np.eye(d)
    h = np.zeros((N_LEVELS * d, N_LEVELS * d), dtype=complex)

    for level, delta in enumerate(params.deltas, start=1):
        if delta != 0.0:
            h += delta * np.kron(atomic_projector(level), eye_f)

    quantized = [
        (params.g_a, 2, 1, Mode.a),
        (params.g_b, 4, 3, Mode.b),
        (params.g_c, 6, 5, Mode.c),
    ]
    for g, upper, lower, mode in quantized:
        if g != 0:
            term = g * np.kron(atomic_transition(upper, lower), mode_annihilator(mode, params.n_max))
            h += term + term.conj().T

    classical = [(params.omega_1, 2, 3), (params.omega_2, 2, 5)]
    for omega, upper, lower in classical:
        if omega != 0:
            term = omega * np.kron(atomic_transition(upper, lower), eye_f)
            h += term + term.conj().T

    return h
