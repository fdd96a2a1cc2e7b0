"""Closed-form conditional field evolution at resonance.

With all level shifts zero, the no-jump operator is permanently diagonal
in the Fock basis and each diagonal element obeys a sixth-order constant
coefficient ODE.  Per occupation triple the element is a finite cosine
series

    k(t) = sum_j  w_j * cos(lambda_j * t),

where lambda_j^2 are the roots of the cubic x^3 - p x^2 + q x - r built
from the occupation numbers, and the weights w_j solve a small moment
system fixed by the initial conditions.  The single-jump branch (atom
found one level up, one photon lost from mode a) follows from the time
derivative of the no-jump series.

Everything below requires resonant parameters; off resonance the numeric
propagator is the only source of truth.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import dim_field, enumerate_basis
from .model import PhysParams, RegimeError

ROOT_RESIDUAL_FACTOR = 1e-9
DEGENERACY_FACTOR = 1e-9


@dataclass(frozen=True)
class SectorCoefficients:
    """Cubic coefficients of one Fock sector (units: freq^2, freq^4, freq^6)."""

    p: float
    q: float
    r: float


@dataclass(frozen=True)
class SectorRoots:
    """Non-negative eigenfrequencies of a sector, sorted descending.

    ``degenerate`` is set when two squared roots coincide within
    ``DEGENERACY_FACTOR * max(1, p)``; the weight solver then merges the
    coinciding cosine terms.
    """

    lam: tuple[float, float, float]
    degenerate: bool


@dataclass(frozen=True)
class CosineWeights:
    """Weights of the three cosine terms; they always sum to one.

    For a degenerate sector the merged group weight sits on the first
    root of each group and the shadowed slots are zero.
    """

    b: tuple[float, float, float]
    degenerate: bool


def _require_resonance(params: PhysParams) -> None:
    if not params.resonant:
        raise RegimeError("closed forms require all detunings zero (resonance)")


def sector_coefficients(params: PhysParams, occ: tuple[int, int, int]) -> SectorCoefficients:
    """Evaluate the sector cubic coefficients on one occupation triple."""
    _require_resonance(params)
    n_a, n_b, n_c = occ
    if min(occ) < 0:
        raise ValueError(f"occupations must be non-negative, got {occ!r}")
    ga2, gb2, gc2 = abs(params.g_a) ** 2, abs(params.g_b) ** 2, abs(params.g_c) ** 2
    w1, w2 = abs(params.omega_1) ** 2, abs(params.omega_2) ** 2
    p = ga2 * n_a + gb2 * n_b + gc2 * n_c + w1 + w2
    q = gb2 * (w2 + ga2 * n_a) * n_b + gc2 * (w1 + ga2 * n_a) * n_c + gb2 * gc2 * n_b * n_c
    r = ga2 * gb2 * gc2 * n_a * n_b * n_c
    return SectorCoefficients(p=p, q=q, r=r)


def characteristic_roots(coeffs: SectorCoefficients) -> SectorRoots:
    """The three non-negative frequencies whose squares solve the sector cubic."""
    p, q, r = coeffs.p, coeffs.q, coeffs.r
    if not all(np.isfinite([p, q, r])):
        raise ValueError("sector coefficients must be finite")
    x_scale = max(1.0, p, q ** 0.5 if q > 0 else 0.0, r ** (1 / 3) if r > 0 else 0.0)

    raw = np.roots([1.0, -p, q, -r])
    if np.max(np.abs(raw.imag)) > 1e-7 * x_scale:
        raise ArithmeticError(f"complex squared roots beyond tolerance: {raw!r}")
    xs = [_polish_root(float(x), p, q, r) for x in raw.real]
    xs = [max(x, 0.0) for x in xs]
    xs.sort(reverse=True)

    residual_tol = ROOT_RESIDUAL_FACTOR * max(1.0, p**3)
    for x in xs:
        residual = abs(((x - p) * x + q) * x - r)
        if residual > residual_tol:
            raise ArithmeticError(
                f"cubic residual {residual:.3e} exceeds {residual_tol:.3e} at x={x!r}"
            )

    gap_tol = DEGENERACY_FACTOR * max(1.0, p)
    degenerate = xs[0] - xs[1] < gap_tol or xs[1] - xs[2] < gap_tol
    lam = tuple(float(np.sqrt(x)) for x in xs)
    return SectorRoots(lam=lam, degenerate=degenerate)


def _polish_root(x: float, p: float, q: float, r: float) -> float:
    # two guarded Newton steps; multiple roots are left where np.roots put them
    for _ in range(2):
        f = ((x - p) * x + q) * x - r
        df = (3.0 * x - 2.0 * p) * x + q
        if df == 0.0:
            break
        step = f / df
        if abs(step) > 0.25 * max(1.0, abs(x)):
            break
        x -= step
    return x


def _moments(params: PhysParams, occ: tuple[int, int, int]) -> tuple[float, float, float]:
    n_a = occ[0]
    ga2 = abs(params.g_a) ** 2
    w = abs(params.omega_1) ** 2 + abs(params.omega_2) ** 2
    return 1.0, ga2 * n_a, ga2 * (ga2 * n_a + w) * n_a


def cosine_weights(
    roots: SectorRoots, params: PhysParams, occ: tuple[int, int, int]
) -> CosineWeights:
    """Solve the moment system for the cosine weights of one sector.

    Coinciding squared roots are merged and the reduced system solved
    exactly; the merged limit exists because the physical element is
    bounded, which rules out secular terms.
    """
    _require_resonance(params)
    coeffs = sector_coefficients(params, occ)
    xs = [lam * lam for lam in roots.lam]
    gap_tol = DEGENERACY_FACTOR * max(1.0, coeffs.p)

    groups: list[list[int]] = [[0]]
    for i in (1, 2):
        if abs(xs[i] - xs[groups[-1][0]]) < gap_tol:
            groups[-1].append(i)
        else:
            groups.append([i])

    m0, m1, m2 = _moments(params, occ)
    gx = [xs[g[0]] for g in groups]
    check_tol = 1e-6 * max(1.0, m2, coeffs.p**2)

    if len(groups) == 3:
        gb = _lagrange_weights(gx, m0, m1, m2)
    elif len(groups) == 2:
        b0 = (m1 - m0 * gx[1]) / (gx[0] - gx[1])
        gb = [b0, m0 - b0]
        if abs(gb[0] * gx[0] ** 2 + gb[1] * gx[1] ** 2 - m2) > check_tol:
            raise ArithmeticError("moment system inconsistent for merged sector roots")
    else:
        gb = [m0]
        if abs(gx[0] - m1) > check_tol or abs(gx[0] ** 2 - m2) > check_tol:
            raise ArithmeticError("moment system inconsistent for triple sector root")

    b = [0.0, 0.0, 0.0]
    for group, weight in zip(groups, gb):
        b[group[0]] = float(weight)
    return CosineWeights(b=tuple(b), degenerate=len(groups) < 3)


def _lagrange_weights(x: list[float], m0: float, m1: float, m2: float) -> list[float]:
    out = []
    for i in range(3):
        j, k = [m for m in range(3) if m != i]
        numerator = m2 - m1 * (x[j] + x[k]) + m0 * x[j] * x[k]
        out.append(numerator / ((x[i] - x[j]) * (x[i] - x[k])))
    return out


def sector_series(
    params: PhysParams, occ: tuple[int, int, int]
) -> tuple[np.ndarray, np.ndarray, bool]:
    """Distinct frequencies and their weights for one sector's cosine series."""
    roots = characteristic_roots(sector_coefficients(params, occ))
    weights = cosine_weights(roots, params, occ)
    lam = np.asarray(roots.lam)
    b = np.asarray(weights.b)
    keep = b != 0.0
    if not keep.any():  # every weight landed on a shadowed slot; keep the first
        keep[0] = True
    return lam[keep], b[keep], weights.degenerate


def _require_qubit_truncation(params: PhysParams) -> None:
    if params.n_max != 1:
        raise RegimeError("closed-form operators are defined on the n_max = 1 truncation")


def no_jump_operator(params: PhysParams, t: float) -> np.ndarray:
    """Diagonal no-jump field operator on the 8-dim qubit space."""
    _require_resonance(params)
    _require_qubit_truncation(params)
    entries = np.empty(dim_field(1), dtype=complex)
    for s, occ in enumerate(enumerate_basis(1)):
        lam, b, _ = sector_series(params, occ)
        entries[s] = np.sum(b * np.cos(lam * t))
    return np.diag(entries)


def jump_operator(params: PhysParams, t: float) -> np.ndarray:
    """Single-jump field operator: one photon lost from mode a.

    Non-zero only between labels that differ by exactly one photon in
    mode a.  Each entry is the scaled time derivative of the matching
    no-jump element.
    """
    _require_resonance(params)
    _require_qubit_truncation(params)
    d = dim_field(1)
    op = np.zeros((d, d), dtype=complex)
    if params.g_a == 0:
        return op
    for s, occ in enumerate(enumerate_basis(1)):
        if occ[0] != 1:
            continue
        lam, b, _ = sector_series(params, occ)
        k_dot = -np.sum(b * lam * np.sin(lam * t))
        op[s - 4, s] = 1j * k_dot / np.conj(params.g_a)
    return op


def no_jump_approx(params: PhysParams, t: float) -> np.ndarray:
    """Strong-drive approximation of the no-jump operator.

    Valid for equal coupling magnitudes and equal drive magnitudes; the
    error is O(|g|^2/|omega|^2) once the drives dominate.  The n_a = 0
    half is exact, the single-excited sector keeps its exact two-term
    form, and the remaining sectors use the leading fast/slow split with
    slow frequency |g|^2 / (sqrt(2) |omega|).
    """
    _require_resonance(params)
    _require_qubit_truncation(params)
    if not params.couplings_equal:
        raise RegimeError("approximation assumes equal coupling magnitudes")
    if not params.drives_equal:
        raise RegimeError("approximation assumes equal drive magnitudes")
    g = abs(params.g_a)
    omega = abs(params.omega_1)

    entries = np.ones(dim_field(1), dtype=complex)
    nu = np.sqrt(g**2 + 2 * omega**2)
    share = g**2 / nu**2 if nu > 0 else 0.0
    entries[4] = 1.0 - share * (1.0 - np.cos(nu * t))
    if omega > 0:
        eps_half = g**2 / (2 * omega**2)
        fast = np.cos(np.sqrt(2) * omega * t)
        mid = np.cos(g * t / np.sqrt(2))
        entries[5] = entries[6] = 1.0 + eps_half * (fast + mid - 2.0)
        slow = np.cos(g**2 * t / (np.sqrt(2) * omega))
        entries[7] = slow + eps_half * (fast - slow)
    else:
        entries[5] = entries[6] = entries[7] = np.cos(g * t / np.sqrt(2)) ** 2  # drive-free limit
    return np.diag(entries)
