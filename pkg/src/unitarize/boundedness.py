"""Decide whether the two-sided power orbit of an operator stays bounded.

In finite dimension, sup over all integers k of ||T^k|| is finite exactly
when T is diagonalizable and every eigenvalue sits on the unit circle.  The
verdicts here are spectral; the sampled power norms included in each report
are a diagnostic, not the decision path.  A parallel criterion handles
generators: e^{itH} is bounded in t exactly when H is diagonalizable with
real spectrum.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .core import (
    CLUSTER_FLOOR,
    DEFAULT_TOLERANCES,
    SINGULAR_RTOL,
    ToleranceConfig,
    as_operator,
    eig,
    spectral_norm,
)
from .errors import InvalidInput, NotAutomorphism, NumericalFailure

# Power norms are sampled for k in [-POWER_SAMPLE_RANGE, POWER_SAMPLE_RANGE].
POWER_SAMPLE_RANGE = 32

VERDICT_BOUNDED = "uniformly_bounded"
VERDICT_NOT_BOUNDED = "not_bounded"
VERDICT_SELF_ADJOINT_LIKE = "similar_to_self_adjoint"
VERDICT_NOT_SELF_ADJOINT_LIKE = "not_similar_to_self_adjoint"
VERDICT_ALREADY_UNITARY = "already_unitary"
VERDICT_NORMAL_NOT_UNITARY = "not_similar_to_unitary"
VERDICT_NOT_NORMAL = "not_normal"


def _modulus_band(op_norm: float, cfg: ToleranceConfig) -> float:
    # Anything within the cluster floor of the unit circle is treated as on
    # it, so that defective unimodular spectra are reported as defective
    # rather than as off the circle.
    return max(cfg.unitarity_tol, CLUSTER_FLOOR * (1.0 + op_norm))


@dataclass(eq=False)
class BoundednessReport:
    """Outcome of the power-orbit decision for one operator.

    off_circle lists eigenvalues whose modulus leaves the unit circle beyond
    tolerance; defective lists unimodular eigenvalues (one representative per
    cluster) whose cluster fails the geometric multiplicity test.  The bound
    estimate is the condition number of the eigenvector matrix when the
    verdict is positive, and None otherwise.
    """

    verdict: str
    off_circle: tuple[complex, ...]
    defective: tuple[complex, ...]
    sampled_power_norms: dict[int, float]
    bound_estimate: float | None

    @property
    def bounded(self) -> bool:
        return self.verdict == VERDICT_BOUNDED

    @property
    def reasons(self) -> tuple[str, ...]:
        out = []
        for lam in self.off_circle:
            out.append(f"eigenvalue {lam:.12g} has modulus {abs(lam):.12g}, off the unit circle")
        for lam in self.defective:
            out.append(f"unimodular eigenvalue {lam:.12g} is defective")
        if not out:
            out.append("diagonalizable with unimodular spectrum")
        return tuple(out)


def sampled_power_norms(T: np.ndarray, k_range: int = POWER_SAMPLE_RANGE) -> dict[int, float]:
    """Spectral norms of T^k for k in [-k_range, k_range]."""
    n = T.shape[0]
    sv = np.linalg.svd(T, compute_uv=False)
    if sv[-1] <= SINGULAR_RTOL * (1.0 + sv[0]):
        raise NotAutomorphism("operator is numerically singular")
    Tinv = np.linalg.inv(T)
    norms = {0: 1.0}
    fwd = np.eye(n, dtype=np.complex128)
    bwd = np.eye(n, dtype=np.complex128)
    for k in range(1, k_range + 1):
        fwd = fwd @ T
        bwd = bwd @ Tinv
        norms[k] = spectral_norm(fwd)
        norms[-k] = spectral_norm(bwd)
    return norms


def check_uniformly_bounded(
    operator, cfg: ToleranceConfig | None = None
) -> BoundednessReport:
    """Decide sup_k ||T^k|| < infinity over all integer powers k.

    Raises NotAutomorphism for numerically singular input.
    """
    cfg = cfg or DEFAULT_TOLERANCES
    T = as_operator(operator)
    norms = sampled_power_norms(T)

    dec = eig(T, cfg)
    band = _modulus_band(spectral_norm(T), cfg)
    moduli = np.abs(dec.eigenvalues)
    off = tuple(
        complex(lam) for lam, m in zip(dec.eigenvalues, moduli) if abs(m - 1.0) > band
    )
    defective = []
    for c in dec.defective_clusters:
        rep = complex(dec.eigenvalues[list(dec.clusters[c])].mean())
        if abs(abs(rep) - 1.0) <= band:
            defective.append(rep)

    ok = not off and not defective
    bound = None
    if ok:
        v = dec.eigenvectors
        bound = float(np.linalg.cond(v))
    return BoundednessReport(
        verdict=VERDICT_BOUNDED if ok else VERDICT_NOT_BOUNDED,
        off_circle=off,
        defective=tuple(defective),
        sampled_power_norms=norms,
        bound_estimate=bound,
    )


@dataclass(eq=False)
class GeneratorReport:
    """Outcome of the bounded-flow decision for a would-be Hamiltonian."""

    verdict: str
    spectrum: np.ndarray
    off_real: tuple[complex, ...]
    defective: tuple[complex, ...]

    @property
    def similar_to_self_adjoint(self) -> bool:
        return self.verdict == VERDICT_SELF_ADJOINT_LIKE


def check_generator(operator, cfg: ToleranceConfig | None = None) -> GeneratorReport:
    """Decide whether H is similar to a self-adjoint operator.

    Equivalent to H being diagonalizable with real spectrum, and to the
    boundedness of e^{itH} over all real t.
    """
    cfg = cfg or DEFAULT_TOLERANCES
    H = as_operator(operator)
    dec = eig(H, cfg)
    band = max(cfg.unitarity_tol, CLUSTER_FLOOR * (1.0 + spectral_norm(H)))
    off_real = tuple(
        complex(lam) for lam in dec.eigenvalues if abs(lam.imag) > band
    )
    defective = tuple(
        complex(dec.eigenvalues[list(dec.clusters[c])].mean())
        for c in dec.defective_clusters
    )
    ok = not off_real and not defective
    return GeneratorReport(
        verdict=VERDICT_SELF_ADJOINT_LIKE if ok else VERDICT_NOT_SELF_ADJOINT_LIKE,
        spectrum=dec.eigenvalues,
        off_real=off_real,
        defective=defective,
    )


@dataclass(eq=False)
class NormalityReport:
    """Trichotomy for normal input: already unitary, or never similar to one."""

    verdict: str
    commutator_residual: float
    unitarity_residual: float


def check_normal_dichotomy(
    operator, cfg: ToleranceConfig | None = None
) -> NormalityReport:
    """For normal operators, similarity to unitary collapses to being unitary.

    Returns already_unitary when T*T = I within tolerance, or
    not_similar_to_unitary for normal T with spectrum off the circle.
    Non-normal input gets the verdict not_normal, with no claim either way.
    """
    cfg = cfg or DEFAULT_TOLERANCES
    T = as_operator(operator)
    scale = 1.0 + spectral_norm(T) ** 2
    c_res = float(np.linalg.norm(T @ T.conj().T - T.conj().T @ T)) / scale
    u_res = float(np.linalg.norm(T.conj().T @ T - np.eye(T.shape[0]))) / scale
    if c_res > cfg.unitarity_tol:
        verdict = VERDICT_NOT_NORMAL
    elif u_res <= cfg.unitarity_tol:
        verdict = VERDICT_ALREADY_UNITARY
    else:
        verdict = VERDICT_NORMAL_NOT_UNITARY
    return NormalityReport(
        verdict=verdict, commutator_residual=c_res, unitarity_residual=u_res
    )


def resolvent_bound_estimate(
    operator,
    radii=(1.5, 1.1, 1.01),
    samples: int = 2048,
    cfg: ToleranceConfig | None = None,
) -> float:
    """Estimate sup over r of (r^2 - 1) times the mean squared resolvent norm.

    For each radius r > 1 the quantity (r^2 - 1)/(2 pi) times the integral of
    ||(T - r e^{i a})^{-1} u||^2 over the circle stays near ||u||^2 when the
    power orbit of T is bounded, and blows up as r approaches 1 otherwise.
    The integral is approximated with a uniform grid over the basis vectors u,
    and the maximum over radii and basis directions comes back as a raw float.
    Grid points where the shift is numerically singular are skipped with a
    warning.
    """
    T = as_operator(operator)
    radii = tuple(float(r) for r in radii)
    if any(r <= 1.0 for r in radii):
        raise InvalidInput("all radii must be strictly greater than 1")
    if samples < 8:
        raise InvalidInput("need at least 8 angular samples")
    n = T.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    worst = 0.0
    for r in radii:
        acc = np.zeros(n)
        used = 0
        for a in np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False):
            shift = T - r * np.exp(1j * a) * eye
            sv_min = np.linalg.svd(shift, compute_uv=False)[-1]
            if sv_min <= SINGULAR_RTOL * (1.0 + spectral_norm(T)):
                warnings.warn(
                    f"skipping a numerically singular resolvent point at "
                    f"radius {r:.6g}",
                    stacklevel=2,
                )
                continue
            cols = np.linalg.solve(shift, eye)
            acc += np.sum(np.abs(cols) ** 2, axis=0)
            used += 1
        if used == 0:
            raise NumericalFailure(f"all resolvent samples failed at radius {r:.6g}")
        level = (r * r - 1.0) * acc.max() / used
        worst = max(worst, float(level))
    return worst
