"""Seeded random fixtures for tests and demos.

Every generator takes an explicit numpy Generator, so suites stay
reproducible under an externally chosen seed.  Conditioning of similarity
transforms and spacing of spectra are controlled rather than left to
chance, because both directly set the attainable accuracy of averaged
metrics.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidInput


def haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Unitary drawn from the Haar measure via the QR trick."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def invertible_with_condition(
    rng: np.random.Generator, dim: int, cond: float
) -> np.ndarray:
    """Invertible matrix with the exact requested condition number."""
    if cond < 1.0:
        raise InvalidInput("a condition number is at least 1")
    u = haar_unitary(rng, dim)
    v = haar_unitary(rng, dim)
    if dim == 1:
        sv = np.array([1.0])
    else:
        sv = np.geomspace(1.0, 1.0 / cond, dim)
    return u @ np.diag(sv.astype(np.complex128)) @ v


def unimodular_phases(
    rng: np.random.Generator, dim: int, min_gap: float = 0.01
) -> np.ndarray:
    """Phases on [0, 2 pi) with a guaranteed pairwise circular gap."""
    if dim * min_gap >= 2.0 * np.pi:
        raise InvalidInput("the requested gap does not fit on the circle")
    for _ in range(10000):
        ph = np.sort(rng.uniform(0.0, 2.0 * np.pi, size=dim))
        gaps = np.diff(np.concatenate([ph, [ph[0] + 2.0 * np.pi]]))
        if gaps.min() >= min_gap:
            return ph
    raise InvalidInput("could not draw phases with the requested gap")


def jittered_unimodular_phases(
    rng: np.random.Generator, dim: int, margin: float = 0.15
) -> np.ndarray:
    """Near-equispaced phases with a hard spacing floor.

    Equispaced anchors are jittered within half the slack left by the
    margin and rotated by a common random angle, so the minimum gap never
    drops below the margin while the ensemble still explores phase space.
    Uniform rejection sampling piles minimum gaps at the floor for eight or
    more phases; this construction keeps them comfortably away, which is
    what finite power averages need for fast equidistribution.
    """
    base = 2.0 * np.pi * np.arange(dim) / dim
    half = max((2.0 * np.pi / dim - margin) / 2.0, 0.0)
    if half == 0.0:
        raise InvalidInput("the margin leaves no room to jitter at this dimension")
    ph = base + rng.uniform(-half, half, size=dim) + rng.uniform(0.0, 2.0 * np.pi)
    return np.mod(ph, 2.0 * np.pi)


def conjugated_unitary(
    rng: np.random.Generator,
    dim: int,
    cond: float,
    phases: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """S^{-1} D S with unimodular diagonal D; returns (T, S, phases)."""
    if phases is None:
        phases = unimodular_phases(rng, dim)
    phases = np.asarray(phases, dtype=float)
    s = invertible_with_condition(rng, dim, cond)
    d = np.exp(1j * phases)
    t = np.linalg.solve(s, d[:, None] * s)
    return t, s, phases


def conjugated_degenerate(
    rng: np.random.Generator, dim: int, cond: float, repeats: int = 2
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Conjugated unimodular matrix with one eigenvalue repeated exactly."""
    if not 2 <= repeats <= dim:
        raise InvalidInput("the repeated eigenvalue needs 2 <= repeats <= dim")
    distinct = unimodular_phases(rng, dim - repeats + 1, min_gap=0.05)
    phases = np.concatenate([np.full(repeats, distinct[0]), distinct[1:]])
    return conjugated_unitary(rng, dim, cond, phases)


def defective_unimodular(
    rng: np.random.Generator, dim: int, cond: float
) -> np.ndarray:
    """Conjugated Jordan block on the circle; power orbit grows linearly."""
    if dim < 2:
        raise InvalidInput("a defective fixture needs dimension at least 2")
    phases = unimodular_phases(rng, dim - 1, min_gap=0.05)
    lam = np.exp(1j * phases[0])
    j = np.zeros((dim, dim), dtype=np.complex128)
    j[0, 0] = j[1, 1] = lam
    j[0, 1] = 1.0
    for k in range(2, dim):
        j[k, k] = np.exp(1j * phases[k - 1])
    s = invertible_with_condition(rng, dim, cond)
    return np.linalg.solve(s, j @ s)


def off_circle_fixture(
    rng: np.random.Generator, dim: int, cond: float, bump: float = 0.05
) -> np.ndarray:
    """Diagonalizable matrix with one eigenvalue pushed off the unit circle."""
    phases = unimodular_phases(rng, dim)
    moduli = np.ones(dim)
    moduli[rng.integers(dim)] = 1.0 + bump * rng.choice([-1.0, 1.0])
    d = moduli * np.exp(1j * phases)
    s = invertible_with_condition(rng, dim, cond)
    return np.linalg.solve(s, d[:, None] * s)


def normal_fixture(
    rng: np.random.Generator, dim: int, unimodular: bool
) -> np.ndarray:
    """Normal matrix, with spectrum on or off the unit circle."""
    u = haar_unitary(rng, dim)
    if unimodular:
        d = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, dim))
    else:
        moduli = rng.uniform(0.3, 0.9, dim)
        moduli[rng.integers(dim)] = rng.uniform(1.2, 2.0)
        d = moduli * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, dim))
    return u @ (d[:, None] * u.conj().T)


def hermitian_fixture(rng: np.random.Generator, dim: int, scale: float = 1.0) -> np.ndarray:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return scale * (z + z.conj().T) / 2.0


def positive_definite_fixture(
    rng: np.random.Generator, dim: int, cond: float
) -> np.ndarray:
    """Hermitian positive definite matrix with the requested conditioning."""
    u = haar_unitary(rng, dim)
    w = np.geomspace(1.0, 1.0 / cond, dim) if dim > 1 else np.array([1.0])
    return (u * w) @ u.conj().T


def commuting_conjugated_pair(
    rng: np.random.Generator, dim: int, cond: float
) -> tuple[np.ndarray, np.ndarray]:
    """Commuting pair sharing one eigenbasis, both power bounded."""
    s = invertible_with_condition(rng, dim, cond)
    d1 = np.exp(1j * unimodular_phases(rng, dim))
    d2 = np.exp(1j * unimodular_phases(rng, dim))
    t1 = np.linalg.solve(s, d1[:, None] * s)
    t2 = np.linalg.solve(s, d2[:, None] * s)
    return t1, t2


def real_spectrum_fixture(
    rng: np.random.Generator, dim: int, cond: float, spread: float = 2.0
) -> np.ndarray:
    """Diagonalizable matrix with real spectrum, similar to self-adjoint."""
    s = invertible_with_condition(rng, dim, cond)
    vals = rng.uniform(-spread, spread, dim)
    vals += 0.05 * np.arange(dim)  # keep eigenvalues separated
    return np.linalg.solve(s, vals[:, None] * s).astype(np.complex128)
