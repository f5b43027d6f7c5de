"""Averaged connecting maps between two power-bounded operators.

Pairing the fiducial metric against powers of two different operators and
averaging leaves exactly the spectral overlap: the limit of the means of
h0(T1^n x, T2^n y) is a sesquilinear form supported on shared eigenvalues.
Its representing matrices, taken in the fiducial metric and in the two
invariant metrics, exchange the operators, so a nonzero limit produces an
explicit intertwiner and a zero limit certifies spectral disjointness.
"""

from __future__ import annotations

import warnings
from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from .boundedness import check_uniformly_bounded
from .core import (
    DEFAULT_TOLERANCES,
    HermitianForm,
    ToleranceConfig,
    as_operator,
    eig,
    invert,
)
from .errors import InvalidInput, NotUniformlyBounded, WeightOnUnmatchedPair
from .metrics import invariant_metric, mixed_pullback_mean

# The averaged pairing counts as zero below this relative size; the closed
# form returns an exact zero for disjoint spectra, so the threshold only has
# to absorb rounding in the nonzero case.
ZERO_RTOL = 1e-10

# Cluster pairs whose means sit between one and this many matching radii
# apart are reported, since a small perturbation could flip the match.
NEAR_MATCH_FACTOR = 10.0


@dataclass(eq=False)
class IntertwineResult:
    """Averaged pairing of two operators in three metric representations.

    in_fiducial_metric   A0 with Lim mean h0(T1^n x, T2^n y) = h0(x, A0 y)
    in_first_metric      A1, the same form written against h_{T1}; satisfies
                         T1 A1 = A1 T2 on the nose
    in_second_metric     A2, the same form written against h_{T2}
    common_eigenvalues   matched cluster means shared by the two spectra
    nonzero              whether the pairing survives the averaging
    rank                 numerical rank of A0 (0 when the pairing vanishes)
    relation_residuals   named relative residuals of the exchange and
                         consistency identities
    """

    in_fiducial_metric: np.ndarray
    in_first_metric: np.ndarray
    in_second_metric: np.ndarray
    common_eigenvalues: tuple[complex, ...]
    nonzero: bool
    rank: int
    relation_residuals: dict[str, float]


def _require_bounded(T: np.ndarray, label: str, cfg: ToleranceConfig) -> None:
    report = check_uniformly_bounded(T, cfg)
    if not report.bounded:
        raise NotUniformlyBounded(f"{label}: " + "; ".join(report.reasons))


def _match_clusters(dec1, dec2) -> tuple[list[tuple[int, int]], float]:
    """Pair clusters of two decompositions whose means agree within tolerance."""
    tol = max(dec1.cluster_tol, dec2.cluster_tol)
    means1 = dec1.cluster_means()
    means2 = dec2.cluster_means()
    pairs = []
    near = 0
    for i, m1 in enumerate(means1):
        for j, m2 in enumerate(means2):
            d = abs(m1 - m2)
            if d <= tol:
                pairs.append((i, j))
            elif d <= NEAR_MATCH_FACTOR * tol:
                near += 1
    if near:
        warnings.warn(
            f"{near} eigenvalue pair(s) of the two spectra almost match "
            f"(within {NEAR_MATCH_FACTOR:g} matching radii); the averaged "
            f"pairing treats them as distinct",
            stacklevel=3,
        )
    return pairs, tol


def intertwiner(
    t1, t2, h0=None, cfg: ToleranceConfig | None = None
) -> IntertwineResult:
    """Averaged connecting map between two power-bounded operators.

    The closed form transforms the fiducial Gram matrix into the two
    eigenbases and keeps exactly the blocks on matched eigenvalue clusters;
    disjoint spectra give an identically zero map, which is a positive
    certificate, not an error.
    """
    cfg = cfg or DEFAULT_TOLERANCES
    T1 = as_operator(t1)
    T2 = as_operator(t2)
    if T1.shape != T2.shape:
        raise InvalidInput("the two operators have different dimensions")
    n = T1.shape[0]
    if h0 is None:
        h0 = HermitianForm(np.eye(n, dtype=np.complex128), psd_tol=cfg.psd_tol)
    elif not isinstance(h0, HermitianForm):
        h0 = HermitianForm(as_operator(h0), psd_tol=cfg.psd_tol)
    if h0.dim != n:
        raise InvalidInput("fiducial form and operator dimensions differ")
    _require_bounded(T1, "t1", cfg)
    _require_bounded(T2, "t2", cfg)

    dec1 = eig(T1, cfg)
    dec2 = eig(T2, cfg)
    pairs, _ = _match_clusters(dec1, dec2)

    G0 = np.asarray(h0.gram)
    P1, P2 = dec1.eigenvectors, dec2.eigenvectors
    mask = np.zeros((n, n), dtype=bool)
    common = []
    for i, j in pairs:
        rows = list(dec1.clusters[i])
        cols = list(dec2.clusters[j])
        mask[np.ix_(rows, cols)] = True
        common.append(
            complex((dec1.cluster_means()[i] + dec2.cluster_means()[j]) / 2.0)
        )

    M = P1.conj().T @ G0 @ P2
    M = np.where(mask, M, 0.0)
    Pi1 = invert(P1, "first eigenvector matrix")
    Pi2 = invert(P2, "second eigenvector matrix")
    Z = Pi1.conj().T @ M @ Pi2  # matrix of the limit form: x* Z y
    A0 = np.linalg.solve(G0, Z)

    G1 = np.asarray(invariant_metric(T1, h0, cfg).invariant_form.gram)
    G2 = np.asarray(invariant_metric(T2, h0, cfg).invariant_form.gram)
    A1 = np.linalg.solve(G1, G0 @ A0)
    A2 = np.linalg.solve(G2, G0 @ A0)

    a_scale = 1.0 + float(np.linalg.norm(A0))
    t_scale = 1.0 + max(float(np.linalg.norm(T1)), float(np.linalg.norm(T2)))
    q1_sq = np.linalg.solve(G0, G1)
    q2_sq = np.linalg.solve(G0, G2)
    adj1_inv = invert(
        np.linalg.solve(G0, T1.conj().T @ G0), "fiducial adjoint of t1"
    )
    adj2_inv = invert(
        np.linalg.solve(G2, T1.conj().T @ G2), "invariant adjoint of t1"
    )
    residuals = {
        "q1_consistency": float(np.linalg.norm(A0 - q1_sq @ A1)) / a_scale,
        "q2_consistency": float(np.linalg.norm(A0 - q2_sq @ A2)) / a_scale,
        "fiducial_exchange": float(np.linalg.norm(A0 @ T2 - adj1_inv @ A0))
        / (a_scale * t_scale),
        "first_metric_exchange": float(np.linalg.norm(A1 @ T2 - T1 @ A1))
        / (a_scale * t_scale),
        "second_metric_exchange": float(np.linalg.norm(A2 @ T2 - adj2_inv @ A2))
        / (a_scale * t_scale),
    }

    norm_a0 = float(np.linalg.norm(A0))
    nonzero = norm_a0 > ZERO_RTOL * max(1.0, float(np.linalg.norm(G0)))
    rank = 0
    if nonzero:
        rank = int(np.linalg.matrix_rank(A0, tol=ZERO_RTOL * max(1.0, norm_a0)))
    return IntertwineResult(
        in_fiducial_metric=A0,
        in_first_metric=A1,
        in_second_metric=A2,
        common_eigenvalues=tuple(common),
        nonzero=nonzero,
        rank=rank,
        relation_residuals=residuals,
    )


def mixed_cesaro(
    t1, t2, h0=None, horizon: int | None = None, cfg: ToleranceConfig | None = None
) -> np.ndarray:
    """Finite mean of (T1^n)* G0 T2^n, the oracle for the averaged pairing.

    Returns the matrix Z_N of the finite pairing; the connecting map at
    horizon N is G0^{-1} Z_N.  Never touches either eigendecomposition.
    """
    cfg = cfg or DEFAULT_TOLERANCES
    T1 = as_operator(t1)
    T2 = as_operator(t2)
    n = T1.shape[0]
    if h0 is None:
        G0 = np.eye(n, dtype=np.complex128)
    elif isinstance(h0, HermitianForm):
        G0 = np.asarray(h0.gram)
    else:
        G0 = np.asarray(HermitianForm(as_operator(h0), psd_tol=cfg.psd_tol).gram)
    N = int(horizon if horizon is not None else cfg.cesaro_horizon)
    return mixed_pullback_mean(T1, G0, T2, N)


def _orthonormal_eigenframe(T, h0: HermitianForm, cfg: ToleranceConfig):
    """Eigenvectors of T mapped to an h0-orthonormal frame of the unitarized
    operator, for multiplicity-free spectra."""
    dec = eig(T, cfg)
    for idx in dec.clusters:
        if len(idx) > 1:
            raise InvalidInput(
                "weighted connecting maps need multiplicity-free spectra; "
                "a degenerate eigenvalue cluster was found"
            )
    result = invariant_metric(T, h0, cfg)
    Q = result.positive_similarity
    G0 = np.asarray(h0.gram)
    frame = Q @ dec.eigenvectors
    for j in range(frame.shape[1]):
        nrm = np.sqrt(max((frame[:, j].conj() @ G0 @ frame[:, j]).real, 1e-300))
        frame[:, j] /= nrm
    return dec, result, frame


def intertwiner_scaled(
    t1, t2, weights, h0=None, cfg: ToleranceConfig | None = None
) -> np.ndarray:
    """Intertwiner with prescribed weights on the matched eigenvalue pairs.

    The averaged pairing fixes one coefficient per shared eigenvalue; this
    constructor replaces those coefficients with arbitrary nonzero weights,
    which still yields T1 A = A T2 because each rank-one term joins an
    eigenvector of T1 to an eigenvector of T2 at the same eigenvalue.
    weights is a scalar applied to every matched pair, or a mapping from
    index pairs (position in t1's sorted spectrum, position in t2's) to
    values; a weight on an unmatched pair raises WeightOnUnmatchedPair.
    Both spectra must be multiplicity-free.
    """
    cfg = cfg or DEFAULT_TOLERANCES
    T1 = as_operator(t1)
    T2 = as_operator(t2)
    if T1.shape != T2.shape:
        raise InvalidInput("the two operators have different dimensions")
    n = T1.shape[0]
    if h0 is None:
        h0 = HermitianForm(np.eye(n, dtype=np.complex128), psd_tol=cfg.psd_tol)
    elif not isinstance(h0, HermitianForm):
        h0 = HermitianForm(as_operator(h0), psd_tol=cfg.psd_tol)
    _require_bounded(T1, "t1", cfg)
    _require_bounded(T2, "t2", cfg)

    dec1, res1, frame1 = _orthonormal_eigenframe(T1, h0, cfg)
    dec2, res2, frame2 = _orthonormal_eigenframe(T2, h0, cfg)
    pairs, _ = _match_clusters(dec1, dec2)
    matched = {(dec1.clusters[i][0], dec2.clusters[j][0]) for i, j in pairs}

    if isinstance(weights, Mapping):
        table = {}
        for key, val in weights.items():
            pair = (int(key[0]), int(key[1]))
            if pair not in matched:
                raise WeightOnUnmatchedPair(
                    f"eigenvalue positions {pair} are not a shared eigenvalue "
                    f"of the two operators"
                )
            table[pair] = complex(val)
    else:
        table = {pair: complex(weights) for pair in matched}

    G0 = np.asarray(h0.gram)
    Q1_inv = invert(res1.positive_similarity, "first positive similarity")
    Q2 = res2.positive_similarity
    A = np.zeros((n, n), dtype=np.complex128)
    for (k, q), c in table.items():
        if c == 0:
            continue
        left = Q1_inv @ frame1[:, k]
        right = (Q2 @ frame2[:, q]).conj() @ G0
        A += c * np.outer(left, right)
    return A


def are_intertwined(t1, t2, connector, cfg: ToleranceConfig | None = None) -> bool:
    """Check T1 A = A T2 up to a relative tolerance.

    An identically zero connector satisfies the relation trivially; that
    case returns True with a warning rather than pretending to certify
    anything.
    """
    cfg = cfg or DEFAULT_TOLERANCES
    T1 = as_operator(t1)
    T2 = as_operator(t2)
    A = as_operator(connector)
    if T1.shape != T2.shape or A.shape != T1.shape:
        raise InvalidInput("dimension mismatch between operators and connector")
    a_norm = float(np.linalg.norm(A))
    t_scale = 1.0 + max(float(np.linalg.norm(T1)), float(np.linalg.norm(T2)))
    if a_norm <= ZERO_RTOL:
        warnings.warn(
            "the connector is numerically zero, so the exchange relation "
            "holds vacuously",
            stacklevel=2,
        )
        return True
    res = float(np.linalg.norm(T1 @ A - A @ T2)) / (a_norm * t_scale)
    return res <= 1e-8
