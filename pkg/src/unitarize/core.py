"""Validated complex operators, Hermitian metrics, and clustered spectra.

Operators are plain complex ndarrays.  A metric is a thin wrapper around its
Gram matrix; the associated scalar product is antilinear in the first slot,
h(x, y) = x* G y.  Eigendecompositions come back sorted, phase-fixed, and
grouped into clusters so that every routine downstream sees the same
deterministic spectral data.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ClusterAmbiguity, InvalidInput, NotPositiveDefinite

# Computed eigenvalues of a defective matrix split at roughly the square root
# of the backward error, so a fixed clustering radius near 1e-8 cannot group
# them back together.  The effective radius is therefore floored at this
# multiple of sqrt(machine eps) times (1 + ||T||).  Calibrated on conjugated
# Jordan blocks up to dimension 8 and conditioning 100, whose eigenvalue
# splits stay below 3e-8 * (1 + ||T||).
CLUSTER_FLOOR = 64.0 * float(np.sqrt(np.finfo(np.float64).eps))

# Relative singular value cutoff for the geometric-multiplicity rank test.
# Sits between exactly degenerate diagonalizable spectra (defect singular
# values below 1e-13 of scale) and conjugated Jordan blocks (above 8e-6).
RANK_RTOL = 1e-8

# Relative cutoff below which an operator counts as numerically singular.
SINGULAR_RTOL = 1e-13


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical policy shared by the decision routines.

    eig_cluster_tol  radius used to merge nearby eigenvalues into clusters
                     (floored at CLUSTER_FLOOR times the operator scale)
    psd_tol          relative threshold for positive definiteness checks
    unitarity_tol    relative threshold for unit-modulus and unitarity checks
    cesaro_horizon   default number of terms in finite power averages
    cesaro_rel_tol   drift threshold above which an average counts as slow
    """

    eig_cluster_tol: float = 1e-8
    psd_tol: float = 1e-10
    unitarity_tol: float = 1e-9
    cesaro_horizon: int = 4096
    cesaro_rel_tol: float = 1e-6


DEFAULT_TOLERANCES = ToleranceConfig()


def as_operator(a) -> np.ndarray:
    """Validate and return a square complex matrix as a fresh ndarray."""
    arr = np.array(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise InvalidInput(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise InvalidInput("matrix entries must be finite")
    return arr


def as_vector(x, dim: int | None = None) -> np.ndarray:
    """Validate and return a complex state vector."""
    vec = np.array(x, dtype=np.complex128).reshape(-1)
    if vec.size == 0:
        raise InvalidInput("state vector is empty")
    if not np.all(np.isfinite(vec.real)) or not np.all(np.isfinite(vec.imag)):
        raise InvalidInput("state vector entries must be finite")
    if dim is not None and vec.size != dim:
        raise InvalidInput(f"state vector has length {vec.size}, expected {dim}")
    return vec


def spectral_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a, 2))


def hermitize(a: np.ndarray) -> np.ndarray:
    """Nearest Hermitian matrix; used to strip anti-Hermitian rounding noise."""
    return (a + a.conj().T) / 2.0


@dataclass(frozen=True, eq=False)
class HermitianForm:
    """Positive definite Hermitian metric h(x, y) = x* gram y."""

    gram: np.ndarray
    psd_tol: float = 1e-10

    def __post_init__(self):
        g = as_operator(self.gram)
        scale = np.linalg.norm(g)
        if scale == 0.0:
            raise NotPositiveDefinite("Gram matrix is zero")
        if np.linalg.norm(g - g.conj().T) > self.psd_tol * scale:
            raise InvalidInput("Gram matrix is not Hermitian")
        g = hermitize(g)
        w = np.linalg.eigvalsh(g)
        if w[0] <= self.psd_tol * max(w[-1], 0.0):
            raise NotPositiveDefinite(
                f"Gram matrix is not positive definite: eigenvalue range "
                f"[{w[0]:.3e}, {w[-1]:.3e}]"
            )
        g.setflags(write=False)
        object.__setattr__(self, "gram", g)

    @classmethod
    def identity(cls, dim: int) -> "HermitianForm":
        return cls(np.eye(dim, dtype=np.complex128))

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    def apply(self, x, y) -> complex:
        """Scalar product h(x, y), antilinear in x."""
        xv = as_vector(x, self.dim)
        yv = as_vector(y, self.dim)
        return complex(xv.conj() @ self.gram @ yv)

    def norm_of(self, x) -> float:
        val = self.apply(x, x).real
        return float(np.sqrt(max(val, 0.0)))

    def is_identity(self, rtol: float = 1e-14) -> bool:
        n = self.dim
        return bool(np.linalg.norm(self.gram - np.eye(n)) <= rtol * n)


def effective_cluster_tol(operator_norm: float, cfg: ToleranceConfig | None = None) -> float:
    """Clustering radius actually used for an operator of the given norm."""
    cfg = cfg or DEFAULT_TOLERANCES
    return max(cfg.eig_cluster_tol, CLUSTER_FLOOR * (1.0 + operator_norm))


def _cluster_labels(values: np.ndarray, tol: float) -> np.ndarray:
    """Transitive closure of the relation |v_i - v_j| <= tol."""
    n = values.size
    labels = np.arange(n)

    def find(i):
        while labels[i] != i:
            labels[i] = labels[labels[i]]
            i = labels[i]
        return i

    dist = np.abs(values[:, None] - values[None, :])
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i, j] <= tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    labels[max(ri, rj)] = min(ri, rj)
    return np.array([find(i) for i in range(n)])


def _fix_column_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its leading significant entry is real positive.

    The anchor is the first entry within a relative 1e-8 of the column's
    largest modulus, so columns whose entries tie in modulus (Fourier-type
    vectors) still get a deterministic phase.
    """
    out = vectors.copy()
    mags = np.abs(out)
    for j in range(out.shape[1]):
        top = mags[:, j].max()
        if top == 0.0:
            continue
        anchor = int(np.argmax(mags[:, j] >= (1.0 - 1e-8) * top))
        pivot = out[anchor, j]
        if pivot != 0:
            out[:, j] *= np.conj(pivot) / abs(pivot)
    return out


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Sorted, clustered spectral data of one operator.

    eigenvalues        sorted by (phase in [0, 2pi), then modulus)
    eigenvectors       unit columns aligned with the eigenvalues, phase-fixed
    clusters           index groups of eigenvalues within the cluster radius
    diagonalizable     True when every cluster has full geometric multiplicity
    defective_clusters positions (into clusters) that fail the rank test
    cluster_tol        effective clustering radius that was used
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    clusters: tuple[tuple[int, ...], ...]
    diagonalizable: bool
    defective_clusters: tuple[int, ...]
    cluster_tol: float

    @property
    def dim(self) -> int:
        return self.eigenvalues.size

    def cluster_means(self) -> np.ndarray:
        return np.array([self.eigenvalues[list(idx)].mean() for idx in self.clusters])

    def labels(self) -> np.ndarray:
        """Cluster position for each eigenvalue index."""
        out = np.empty(self.dim, dtype=int)
        for c, idx in enumerate(self.clusters):
            for i in idx:
                out[i] = c
        return out

    def same_cluster_mask(self) -> np.ndarray:
        """Boolean (dim, dim) mask, True where two indices share a cluster."""
        lab = self.labels()
        return lab[:, None] == lab[None, :]


def eig(operator, cfg: ToleranceConfig | None = None) -> EigenDecomposition:
    """Eigendecomposition with deterministic ordering and clustering.

    Eigenvalues are sorted by phase (wrapped to [0, 2pi)) and then modulus.
    Values closer than the effective cluster radius are merged transitively
    into clusters; each cluster of size m is tested for geometric
    multiplicity m through the singular values of (T - mean*I).  Pairs of
    eigenvalues from different clusters that sit within twice the radius
    trigger a ClusterAmbiguity warning.
    """
    cfg = cfg or DEFAULT_TOLERANCES
    T = as_operator(operator)
    w, v = np.linalg.eig(T)
    phase = np.mod(np.angle(w), 2.0 * np.pi)
    order = np.lexsort((np.abs(w), phase))
    w = w[order]
    v = _fix_column_phases(v[:, order])

    scale = 1.0 + spectral_norm(T)
    tol = effective_cluster_tol(scale - 1.0, cfg)
    labels = _cluster_labels(w, tol)

    clusters = []
    for root in sorted(set(labels.tolist())):
        clusters.append(tuple(int(i) for i in np.nonzero(labels == root)[0]))
    clusters.sort(key=lambda idx: idx[0])
    clusters = tuple(clusters)

    near = 0
    dist = np.abs(w[:, None] - w[None, :])
    cross = labels[:, None] != labels[None, :]
    near = int(np.sum(cross & (dist <= 2.0 * tol)) // 2)
    if near:
        warnings.warn(
            f"{near} eigenvalue pair(s) lie between one and two cluster radii "
            f"apart (radius {tol:.3e}); clustering may be unstable under "
            f"perturbation",
            ClusterAmbiguity,
            stacklevel=2,
        )

    defective = []
    rank_cut = RANK_RTOL * scale
    for c, idx in enumerate(clusters):
        m = len(idx)
        if m < 2:
            continue
        mu = w[list(idx)].mean()
        sv = np.linalg.svd(T - mu * np.eye(T.shape[0]), compute_uv=False)
        null_count = int(np.sum(sv <= rank_cut))
        if null_count < m:
            defective.append(c)

    return EigenDecomposition(
        eigenvalues=w,
        eigenvectors=v,
        clusters=clusters,
        diagonalizable=not defective,
        defective_clusters=tuple(defective),
        cluster_tol=tol,
    )


def psd_sqrt(gram) -> np.ndarray:
    """Unique positive definite square root of a positive definite matrix.

    Accepts a HermitianForm or a raw Hermitian matrix.
    """
    if isinstance(gram, HermitianForm):
        g = np.asarray(gram.gram)
    else:
        g = as_operator(gram)
        if np.linalg.norm(g - g.conj().T) > 1e-10 * max(np.linalg.norm(g), 1e-300):
            raise InvalidInput("matrix is not Hermitian")
        g = hermitize(g)
    w, u = np.linalg.eigh(g)
    if w[0] <= 1e-14 * max(w[-1], 0.0) or w[-1] <= 0.0:
        raise NotPositiveDefinite(
            f"cannot take a positive square root: eigenvalue range "
            f"[{w[0]:.3e}, {w[-1]:.3e}]"
        )
    root = (u * np.sqrt(w)) @ u.conj().T
    return hermitize(root)


def adjoint_wrt(operator, form: HermitianForm) -> np.ndarray:
    """Adjoint of an operator with respect to a Hermitian form.

    Defined by h(A x, y) = h(x, adjoint_wrt(A, form) y), which gives
    G^{-1} A* G for Gram matrix G.
    """
    A = as_operator(operator)
    if A.shape[0] != form.dim:
        raise InvalidInput("operator and form dimensions differ")
    return np.linalg.solve(form.gram, A.conj().T @ form.gram)


def invert(operator, label: str = "operator") -> np.ndarray:
    """Inverse with an explicit singularity check."""
    A = as_operator(operator)
    sv = np.linalg.svd(A, compute_uv=False)
    if sv[-1] <= SINGULAR_RTOL * (1.0 + sv[0]):
        raise InvalidInput(f"{label} is numerically singular")
    return np.linalg.inv(A)
