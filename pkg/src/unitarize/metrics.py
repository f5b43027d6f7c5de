"""Invariant metrics for operators with bounded power orbits.

The limit metric h_T(x, y) = Lim h0(T^n x, T^n y) is evaluated two
independent ways.  The closed form diagonalizes T and zeroes every
cross-cluster block of the fiducial Gram matrix in the eigenbasis, which is
exactly what averaging the almost periodic phase factors leaves behind.  The
finite Cesaro mean over an explicit horizon serves as a cross-check oracle
and never touches the eigendecomposition.

Both routes produce a positive similarity Q with Q^2 pulling h0 back to h_T,
so U = Q T Q^{-1} is unitary for h0.  A continuous analogue handles
generators X of bounded flows e^{tX}.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .boundedness import VERDICT_SELF_ADJOINT_LIKE, check_generator, check_uniformly_bounded
from .core import (
    CLUSTER_FLOOR,
    DEFAULT_TOLERANCES,
    SINGULAR_RTOL,
    EigenDecomposition,
    HermitianForm,
    ToleranceConfig,
    as_operator,
    eig,
    hermitize,
    invert,
    psd_sqrt,
    spectral_norm,
)
from .errors import (
    DivergenceDetected,
    InvalidInput,
    NotBoundedFlow,
    NotUniformlyBounded,
    SingularShift,
    SlowConvergence,
)

# Partial averages whose norm exceeds this multiple of the kernel norm abort
# the Cesaro evaluation; a bounded orbit can never reach it.
DIVERGENCE_FACTOR = 1e6

METHOD_SPECTRAL = "spectral_projection"
METHOD_CESARO = "cesaro"


@dataclass(eq=False)
class Unitarization:
    """Invariant metric plus the positive similarity that makes T unitary.

    invariant_form       h_T, invariant under the operator
    positive_similarity  Q, positive for the fiducial form, with
                         h0(Q^2 x, y) = h_T(x, y)
    unitarized           U = Q T Q^{-1}, unitary for the fiducial form
    method               which construction produced the metric
    cesaro_residual      drift of the finite average (None for closed form)
    residuals            named consistency residuals, all relative
    """

    invariant_form: HermitianForm
    positive_similarity: np.ndarray
    unitarized: np.ndarray
    method: str
    cesaro_residual: float | None
    residuals: dict[str, float]


def _resolve_fiducial(h0, dim: int, cfg: ToleranceConfig) -> HermitianForm:
    if h0 is None:
        return HermitianForm(np.eye(dim, dtype=np.complex128), psd_tol=cfg.psd_tol)
    if not isinstance(h0, HermitianForm):
        h0 = HermitianForm(as_operator(h0), psd_tol=cfg.psd_tol)
    if h0.dim != dim:
        raise InvalidInput("fiducial form and operator dimensions differ")
    return h0


def projected_gram(dec: EigenDecomposition, kernel: np.ndarray) -> np.ndarray:
    """Cesaro limit of (T^n)* K T^n for diagonalizable T with unimodular spectrum.

    In the eigenbasis the n-th pullback carries phase factors
    conj(lambda_i)^n lambda_j^n, which average to zero unless the two
    eigenvalues agree.  Keeping only same-cluster entries of the transformed
    kernel is therefore the exact limit.
    """
    P = dec.eigenvectors
    Pi = invert(P, "eigenvector matrix")
    M = P.conj().T @ kernel @ P
    M = np.where(dec.same_cluster_mask(), M, 0.0)
    return Pi.conj().T @ M @ Pi


def _positive_similarity(
    g_invariant: np.ndarray, h0: HermitianForm
) -> tuple[np.ndarray, np.ndarray]:
    """Q positive for h0 with G0 Q^2 = G_T; returns (Q, Q^{-1})."""
    if h0.is_identity():
        Q = psd_sqrt(g_invariant)
        return Q, invert(Q, "positive similarity")
    W = psd_sqrt(h0.gram)
    Winv = invert(W, "fiducial square root")
    hat = hermitize(Winv @ g_invariant @ Winv)
    Qhat = psd_sqrt(hat)
    Q = Winv @ Qhat @ W
    Qinv = invert(W, "fiducial square root") @ invert(Qhat, "normalized similarity") @ W
    return Q, Qinv


def _unitarization_from_gram(
    T: np.ndarray,
    g_raw: np.ndarray,
    h0: HermitianForm,
    cfg: ToleranceConfig,
    method: str,
    cesaro_residual: float | None,
) -> Unitarization:
    g = hermitize(g_raw)
    form = HermitianForm(g, psd_tol=cfg.psd_tol)
    Q, Qinv = _positive_similarity(g, h0)
    U = Q @ T @ Qinv
    g_norm = np.linalg.norm(g)
    residuals = {
        "invariance": float(np.linalg.norm(T.conj().T @ g @ T - g)) / g_norm,
        "unitarity": float(np.linalg.norm(U.conj().T @ h0.gram @ U - h0.gram))
        / np.linalg.norm(h0.gram),
        "gram_match": float(np.linalg.norm(h0.gram @ Q @ Q - g)) / g_norm,
    }
    return Unitarization(
        invariant_form=form,
        positive_similarity=Q,
        unitarized=U,
        method=method,
        cesaro_residual=cesaro_residual,
        residuals=residuals,
    )


def invariant_metric(
    operator, h0=None, cfg: ToleranceConfig | None = None
) -> Unitarization:
    """Invariant metric and unitarizing similarity for a power-bounded operator.

    Raises NotUniformlyBounded, carrying the reasons, when the power orbit
    of the operator is unbounded.
    """
    cfg = cfg or DEFAULT_TOLERANCES
    T = as_operator(operator)
    h0 = _resolve_fiducial(h0, T.shape[0], cfg)
    report = check_uniformly_bounded(T, cfg)
    if not report.bounded:
        raise NotUniformlyBounded("; ".join(report.reasons))
    dec = eig(T, cfg)
    g = projected_gram(dec, np.asarray(h0.gram))
    return _unitarization_from_gram(T, g, h0, cfg, METHOD_SPECTRAL, None)


def power_pullback_mean(
    operator, kernel, count: int, guard: float | None = DIVERGENCE_FACTOR
) -> np.ndarray:
    """Exact mean of (T^n)* K T^n for n = 0 .. count-1.

    Evaluated by binary double-and-add on the partial sums, using
    S_{2L} = S_L + (T^L)* S_L T^L and S_{L+1} = S_L + (T^L)* K T^L, so the
    result is the literal finite sum reassociated into a fixed-shape tree.
    Cost grows with log(count) rather than count.
    """
    return mixed_pullback_mean(operator, kernel, operator, count, guard)


def mixed_pullback_mean(
    left, kernel, right, count: int, guard: float | None = DIVERGENCE_FACTOR
) -> np.ndarray:
    """Exact mean of (L^n)* K R^n for n = 0 .. count-1 by double-and-add."""
    L = as_operator(left)
    R = as_operator(right)
    K = as_operator(kernel)
    if L.shape != K.shape or R.shape != K.shape:
        raise InvalidInput("operator and kernel dimensions differ")
    if count < 1:
        raise InvalidInput("the horizon must be a positive integer")
    k_norm = max(np.linalg.norm(K), 1e-300)
    n = K.shape[0]
    S = np.zeros((n, n), dtype=np.complex128)
    Lp = np.eye(n, dtype=np.complex128)
    Rp = np.eye(n, dtype=np.complex128)
    length = 0
    for bit in bin(int(count))[2:]:
        if length:
            S = S + Lp.conj().T @ S @ Rp
            Lp = Lp @ Lp
            Rp = Rp @ Rp
            length *= 2
        if bit == "1":
            S = S + Lp.conj().T @ K @ Rp
            Lp = Lp @ L
            Rp = Rp @ R
            length += 1
        if guard is not None and np.linalg.norm(S) > guard * k_norm * max(length, 1):
            raise DivergenceDetected(
                f"partial power averages exceeded {guard:.1e} times the kernel "
                f"norm after {length} terms"
            )
    return S / count


def cesaro_oracle(
    operator,
    h0=None,
    horizon: int | None = None,
    cfg: ToleranceConfig | None = None,
) -> tuple[HermitianForm, float]:
    """Finite Cesaro mean of the pulled-back fiducial metric.

    Returns the mean over the horizon as a form, together with the relative
    drift between the full-horizon mean and the mean at half the horizon.  A
    drift above cesaro_rel_tol raises the SlowConvergence warning; partial
    sums past the divergence guard raise DivergenceDetected.  This path never
    looks at the spectrum, which is what makes it an independent oracle for
    the closed form.
    """
    cfg = cfg or DEFAULT_TOLERANCES
    T = as_operator(operator)
    h0 = _resolve_fiducial(h0, T.shape[0], cfg)
    N = int(horizon if horizon is not None else cfg.cesaro_horizon)
    if N < 1:
        raise InvalidInput("the horizon must be a positive integer")
    G0 = np.asarray(h0.gram)
    mean_full = hermitize(power_pullback_mean(T, G0, N))
    drift = 0.0
    if N >= 2:
        mean_part = hermitize(power_pullback_mean(T, G0, N // 2))
        drift = float(
            np.linalg.norm(mean_full - mean_part) / max(np.linalg.norm(mean_full), 1e-300)
        )
        if drift > cfg.cesaro_rel_tol:
            warnings.warn(
                f"power average still drifting at horizon {N}: relative "
                f"change {drift:.3e}",
                SlowConvergence,
                stacklevel=2,
            )
    form = HermitianForm(mean_full, psd_tol=cfg.psd_tol)
    return form, drift


def cesaro_unitarization(
    operator,
    h0=None,
    horizon: int | None = None,
    cfg: ToleranceConfig | None = None,
) -> Unitarization:
    """Unitarization built from the finite Cesaro mean instead of the closed form."""
    cfg = cfg or DEFAULT_TOLERANCES
    T = as_operator(operator)
    h0 = _resolve_fiducial(h0, T.shape[0], cfg)
    form, drift = cesaro_oracle(T, h0, horizon, cfg)
    return _unitarization_from_gram(
        T, np.asarray(form.gram), h0, cfg, METHOD_CESARO, drift
    )


def cayley(operator) -> np.ndarray:
    """Cayley map H -> (H - iI)(H + iI)^{-1}.

    Sends operators similar to self-adjoint ones to operators similar to
    unitaries, with the eigenvalue map z -> (z - i)/(z + i).  Raises
    SingularShift when H + iI is singular, which happens exactly when -i is
    an eigenvalue.
    """
    H = as_operator(operator)
    n = H.shape[0]
    shift = H + 1j * np.eye(n)
    sv = np.linalg.svd(shift, compute_uv=False)
    if sv[-1] <= SINGULAR_RTOL * (1.0 + sv[0]):
        raise SingularShift("H + iI is numerically singular (eigenvalue -i)")
    return np.linalg.solve(shift.T, (H - 1j * np.eye(n)).T).T


def inverse_cayley(operator) -> np.ndarray:
    """Inverse Cayley map T -> i(I + T)(I - T)^{-1}.

    Raises SingularShift when 1 is an eigenvalue of T.
    """
    T = as_operator(operator)
    n = T.shape[0]
    shift = np.eye(n) - T
    sv = np.linalg.svd(shift, compute_uv=False)
    if sv[-1] <= SINGULAR_RTOL * (1.0 + sv[0]):
        raise SingularShift("I - T is numerically singular (eigenvalue 1)")
    return np.linalg.solve(shift.T, (1j * (np.eye(n) + T)).T).T


def unitary_log(
    operator, unitarization: Unitarization, cfg: ToleranceConfig | None = None
) -> np.ndarray:
    """Generator A with exp(iA) = T and A self-adjoint for the invariant metric.

    Eigenvalue phases are taken in [0, 2pi), with phase 0 (not 2 pi) for the
    eigenvalue 1, and one shared phase per cluster.  The supplied
    unitarization must belong to the same operator; its metric is checked
    for invariance before use.
    """
    cfg = cfg or DEFAULT_TOLERANCES
    T = as_operator(operator)
    g = np.asarray(unitarization.invariant_form.gram)
    if g.shape[0] != T.shape[0]:
        raise InvalidInput("operator and unitarization dimensions differ")
    inv_res = np.linalg.norm(T.conj().T @ g @ T - g) / np.linalg.norm(g)
    if inv_res > 1e-6:
        raise InvalidInput(
            f"the supplied metric is not invariant under this operator "
            f"(residual {inv_res:.3e})"
        )
    dec = eig(T, cfg)
    phases = np.empty(dec.dim)
    for idx in dec.clusters:
        mean = dec.eigenvalues[list(idx)].mean()
        theta = float(np.mod(np.angle(mean), 2.0 * np.pi))
        # An eigenvalue within the cluster radius of 1 gets phase 0, so the
        # wrap point of the angle convention cannot leak a spurious 2 pi.
        if 2.0 * np.pi - theta <= dec.cluster_tol:
            theta = 0.0
        for i in idx:
            phases[i] = theta
    P = dec.eigenvectors
    Pi = invert(P, "eigenvector matrix")
    return P @ (phases[:, None] * Pi)


def flow_invariant_metric(
    generator, h0=None, cfg: ToleranceConfig | None = None
) -> Unitarization:
    """Invariant metric for a bounded one-parameter flow e^{tX}.

    The flow is bounded over all real t exactly when X is diagonalizable
    with purely imaginary spectrum; anything else raises NotBoundedFlow.
    The returned unitarized matrix is Q X Q^{-1}, skew-adjoint for the
    fiducial form, and the invariant form satisfies X* G + G X = 0.
    """
    cfg = cfg or DEFAULT_TOLERANCES
    X = as_operator(generator)
    h0 = _resolve_fiducial(h0, X.shape[0], cfg)
    dec = eig(X, cfg)
    band = max(cfg.unitarity_tol, CLUSTER_FLOOR * (1.0 + spectral_norm(X)))
    off_axis = [lam for lam in dec.eigenvalues if abs(lam.real) > band]
    if off_axis:
        listed = ", ".join(f"{lam:.6g}" for lam in off_axis[:4])
        raise NotBoundedFlow(f"spectrum leaves the imaginary axis: {listed}")
    if not dec.diagonalizable:
        raise NotBoundedFlow("a purely imaginary eigenvalue is defective")
    g = projected_gram(dec, np.asarray(h0.gram))
    g = hermitize(g)
    form = HermitianForm(g, psd_tol=cfg.psd_tol)
    Q, Qinv = _positive_similarity(g, h0)
    skew = Q @ X @ Qinv
    g_norm = np.linalg.norm(g)
    scale = max(1.0, spectral_norm(X))
    residuals = {
        "flow_invariance": float(np.linalg.norm(X.conj().T @ g + g @ X))
        / (g_norm * scale),
        "skewness": float(
            np.linalg.norm(skew.conj().T @ h0.gram + h0.gram @ skew)
        )
        / (np.linalg.norm(h0.gram) * scale),
        "gram_match": float(np.linalg.norm(h0.gram @ Q @ Q - g)) / g_norm,
    }
    return Unitarization(
        invariant_form=form,
        positive_similarity=Q,
        unitarized=skew,
        method=METHOD_SPECTRAL,
        cesaro_residual=None,
        residuals=residuals,
    )


def generator_metric(
    operator, cfg: ToleranceConfig | None = None
) -> tuple[HermitianForm, np.ndarray]:
    """Metric that makes a real-spectrum diagonalizable H self-adjoint.

    Routed through the Cayley map: H is similar to self-adjoint exactly when
    its Cayley image is similar to unitary, and the invariant metric of the
    image does both jobs.  Returns the form and the Cayley image.
    """
    cfg = cfg or DEFAULT_TOLERANCES
    H = as_operator(operator)
    report = check_generator(H, cfg)
    if report.verdict != VERDICT_SELF_ADJOINT_LIKE:
        raise NotBoundedFlow(
            "operator is not similar to a self-adjoint one: "
            + (
                f"off-real eigenvalues {[f'{z:.6g}' for z in report.off_real]}"
                if report.off_real
                else f"defective eigenvalues {[f'{z:.6g}' for z in report.defective]}"
            )
        )
    image = cayley(H)
    result = invariant_metric(image, None, cfg)
    return result.invariant_form, image
