"""Truncated three-mode Fock space and atom-field index bookkeeping.

The cavity holds three quantized modes (a, b, c), each truncated at a
configurable photon number ``n_max``.  Field basis states are occupation
triples ``(n_a, n_b, n_c)`` ordered by their mixed-radix index

    s = n_a * (n_max+1)**2 + n_b * (n_max+1) + n_c,

which for ``n_max = 1`` reduces to the binary reading s = 4*n_a + 2*n_b + n_c
of the computational basis.  The atom has six levels, numbered 1..6 with
level 1 the ground/initial level.  Joint atom-field states are flattened
atom-major: index = (level-1) * dim_field + s.

Everything here is pure and index-based; matrices are plain numpy arrays.
"""

from __future__ import annotations

import itertools
from enum import IntEnum

import numpy as np

N_LEVELS = 6
GROUND_LEVEL = 1


class Mode(IntEnum):
    """The three cavity modes, in their fixed ordering a < b < c."""

    a = 0
    b = 1
    c = 2


def dim_field(n_max: int) -> int:
    """Dimension of the truncated three-mode field space."""
    _check_n_max(n_max)
    return (n_max + 1) ** 3


def dim_joint(n_max: int) -> int:
    """Dimension of the joint atom (6 levels) x field space."""
    return N_LEVELS * dim_field(n_max)


def field_index(label: tuple[int, int, int], n_max: int) -> int:
    """Mixed-radix index of an occupation triple.

    Parameters
    ----------
    label : (n_a, n_b, n_c)
        Photon occupations, each in 0..n_max.
    n_max : int
        Truncation order (>= 1).

    Returns
    -------
    int
        0-based index; ``fock_label`` is the inverse.
    """
    _check_n_max(n_max)
    if len(label) != 3:
        raise ValueError(f"occupation triple expected, got {label!r}")
    base = n_max + 1
    for n in label:
        if not 0 <= n <= n_max:
            raise ValueError(f"occupation {n} outside 0..{n_max} in {label!r}")
    return (label[0] * base + label[1]) * base + label[2]


def fock_label(index: int, n_max: int) -> tuple[int, int, int]:
    """Inverse of ``field_index``."""
    _check_n_max(n_max)
    base = n_max + 1
    if not 0 <= index < base**3:
        raise ValueError(f"field index {index} outside 0..{base**3 - 1}")
    index, n_c = divmod(index, base)
    n_a, n_b = divmod(index, base)
    return (n_a, n_b, n_c)


def enumerate_basis(n_max: int) -> list[tuple[int, int, int]]:
    """All occupation triples in index order (length ``(n_max+1)**3``)."""
    _check_n_max(n_max)
    return list(itertools.product(range(n_max + 1), repeat=3))


def joint_index(level: int, label: tuple[int, int, int], n_max: int) -> int:
    """Flattened atom-major index of |level> ⊗ |label>."""
    if not 1 <= level <= N_LEVELS:
        raise ValueError(f"atomic level {level} outside 1..{N_LEVELS}")
    return (level - 1) * dim_field(n_max) + field_index(label, n_max)


def mode_annihilator(mode: Mode | int, n_max: int) -> np.ndarray:
    """Annihilation operator of one mode on the three-mode field space.

    Matrix elements <n-1|a|n> = sqrt(n) on the selected mode, identity on
    the other two.
    """
    base = n_max + 1
    single = np.diag(np.sqrt(np.arange(1, base)), k=1)
    eye = np.eye(base)
    factors = [eye, eye, eye]
    factors[int(mode)] = single
    return np.kron(np.kron(factors[0], factors[1]), factors[2])


def basis_state(label: tuple[int, int, int], n_max: int) -> np.ndarray:
    """Unit vector of a field basis state."""
    vec = np.zeros(dim_field(n_max), dtype=complex)
    vec[field_index(label, n_max)] = 1.0
    return vec


def _check_n_max(n_max: int) -> None:
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
