"""Unitary decomposition of dual complex Hermitian matrices.

For Hermitian ``A = A_st + A_I eps`` the decomposition ``U^* A U = Sigma``
has a dual-number diagonal.  The standard parts of the eigenvalues are the
eigenvalues of ``A_st``, grouped into clusters ``lambda_1 > ... > lambda_r``
of multiplicity ``k_i``.  Within a cluster the infinitesimal parts are the
eigenvalues of the block ``C_ii`` of ``S^* A_I S``.  The infinitesimal part
of ``U`` is ``S P_I^* V`` where ``P_I`` holds the coupling blocks
``C_ij / (lambda_i - lambda_j)``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import classical
from .array import DCMatrix, DCVector, hermitian_defect, vec_norm2
from .exceptions import ClusterGapTooSmall, NotHermitian, ZeroVector
from .scalar import DualNumber, dn_cmp, Ordering


@dataclass(frozen=True)
class DualEigenvalue:
    value: DualNumber
    cluster_index: int
    within_cluster_index: int


@dataclass(frozen=True)
class HermEig:
    """Result of :func:`hermitian_eig`.

    ``U`` holds the eigenvectors as columns, in the order of ``eigenvalues``:
    clusters by standard value descending, then infinitesimal part descending.
    ``clusters`` lists ``(lambda_i, k_i)``.
    """

    U: DCMatrix
    eigenvalues: tuple[DualEigenvalue, ...]
    clusters: tuple[tuple[float, int], ...]

    @property
    def values(self) -> tuple[DualNumber, ...]:
        return tuple(e.value for e in self.eigenvalues)

    @property
    def values_std(self) -> np.ndarray:
        return np.array([e.value.std for e in self.eigenvalues])

    @property
    def values_inf(self) -> np.ndarray:
        return np.array([e.value.inf for e in self.eigenvalues])

    def diagonal(self) -> DCMatrix:
        return DCMatrix.diag(self.values)


class Definiteness(str, Enum):
    POSITIVE_DEFINITE = "positive_definite"
    POSITIVE_SEMIDEFINITE = "positive_semidefinite"
    INDEFINITE = "indefinite"


def default_cluster_tol(values) -> float:
    scale = float(np.max(np.abs(values), initial=0.0))
    return 1e-8 * max(1.0, scale)


def cluster_spectrum(values: np.ndarray, cluster_tol: float, zero_count: int = 0) -> list[tuple[int, int]]:
    """Split descending ``values`` into ``[start, stop)`` runs of near-equal values.

    Consecutive values join a run while their gap is at most ``cluster_tol``.
    The trailing ``zero_count`` entries always form a run of their own.
    """
    n = len(values)
    head = n - zero_count
    runs = []
    start = 0
    for i in range(1, head):
        if values[i - 1] - values[i] > cluster_tol:
            runs.append((start, i))
            start = i
    if head:
        runs.append((start, head))
    if zero_count:
        runs.append((head, n))
    return runs


def unitary_decomposition(
    s: np.ndarray,
    d: np.ndarray,
    a_inf: np.ndarray,
    cluster_tol: float,
    zero_count: int = 0,
    solver: str = "auto",
) -> HermEig:
    """Assemble the dual decomposition from ``A_st = S diag(d) S^*`` and ``A_I``.

    ``d`` must be descending.  The last ``zero_count`` standard eigenvalues
    are taken to be exactly zero.
    """
    n = len(d)
    runs = cluster_spectrum(d, cluster_tol, zero_count)
    reps = np.array([0.0 if (zero_count and stop == n) else float(np.mean(d[start:stop])) for start, stop in runs])
    gaps = -np.diff(reps)
    if gaps.size and np.min(gaps) < 10 * cluster_tol:
        warnings.warn(
            f"standard eigenvalue gap {np.min(gaps):.3g} is below 10*cluster_tol={10 * cluster_tol:.3g}",
            ClusterGapTooSmall,
            stacklevel=3,
        )
    label = np.empty(n, dtype=int)
    for c, (start, stop) in enumerate(runs):
        label[start:stop] = c
    lam = reps[label]

    m = s.conj().T @ a_inf @ s
    diff = lam[:, None] - lam[None, :]
    coupled = label[:, None] != label[None, :]
    p_inf = np.where(coupled, m / np.where(coupled, diff, 1.0), 0.0)

    vhat = np.zeros((n, n), dtype=complex)
    lam_inf = np.zeros(n)
    for start, stop in runs:
        block = m[start:stop, start:stop]
        w, v = classical.hermitian_eig(block, solver)
        vhat[start:stop, start:stop] = v
        lam_inf[start:stop] = w

    u_st = s @ vhat
    u_inf = s @ p_inf.conj().T @ vhat
    u_st, u_inf = _fix_phases(u_st, u_inf)

    eigenvalues = []
    for c, (start, stop) in enumerate(runs):
        for j in range(start, stop):
            eigenvalues.append(DualEigenvalue(DualNumber(reps[c], lam_inf[j]), c, j - start))
    clusters = tuple((float(reps[c]), stop - start) for c, (start, stop) in enumerate(runs))
    return HermEig(DCMatrix(u_st, u_inf), tuple(eigenvalues), clusters)


def _fix_phases(u_st: np.ndarray, u_inf: np.ndarray):
    """Rotate each column so its largest-modulus standard entry is real positive."""
    if u_st.size == 0:
        return u_st, u_inf
    idx = np.argmax(np.abs(u_st), axis=0)
    pivot = u_st[idx, np.arange(u_st.shape[1])]
    mod = np.abs(pivot)
    phase = np.where(mod > 0, pivot.conj() / np.where(mod > 0, mod, 1.0), 1.0)
    return u_st * phase, u_inf * phase


def _checked_hermitian(a: DCMatrix, tol: float) -> DCMatrix:
    ds, di = hermitian_defect(a)
    scale_st = max(1.0, float(np.linalg.norm(a.std)))
    scale_inf = max(1.0, float(np.linalg.norm(a.inf)))
    if ds > tol * scale_st or di > tol * scale_inf:
        raise NotHermitian(f"matrix is not Hermitian (defect std={ds:.3g}, inf={di:.3g})")
    return DCMatrix(0.5 * (a.std + a.std.conj().T), 0.5 * (a.inf + a.inf.conj().T))


def hermitian_eig(
    a: DCMatrix,
    cluster_tol: float | None = None,
    tol: float = 1e-10,
    solver: str = "auto",
) -> HermEig:
    """Unitary eigendecomposition ``U^* A U = diag(lambda_i + lambda_ij eps)`` of a Hermitian matrix.

    Parameters
    ----------
    a : DCMatrix
        Square Hermitian dual complex matrix.  Inputs within ``tol``
        (relative) of Hermitian are symmetrized; others raise NotHermitian.
    cluster_tol : float, optional
        Standard eigenvalues closer than this are treated as one multiple
        eigenvalue.  Defaults to ``1e-8 * max(1, |lambda|_max)``.
    solver : {"auto", "jacobi", "lapack"}
        Backend for the classical Hermitian eigenproblems.

    Warns
    -----
    ClusterGapTooSmall
        When two clusters are closer than ``10 * cluster_tol``.
    """
    a = _checked_hermitian(a, tol)
    d, s = classical.hermitian_eig(a.std, solver)
    if cluster_tol is None:
        cluster_tol = default_cluster_tol(d)
    return unitary_decomposition(s, d, a.inf, cluster_tol, solver=solver)


def gram_eig(
    a: DCMatrix,
    cluster_tol: float | None = None,
    zero_tol: float | None = None,
    solver: str = "auto",
) -> tuple[HermEig, np.ndarray, float]:
    """Decompose ``B = A^* A`` without forming ``B_st`` explicitly.

    The standard eigenpairs of ``B`` come from the right singular vectors of
    ``A_st`` (``lambda = sigma**2``), which keeps the zero/nonzero split
    accurate.  Standard singular values ``<= zero_tol`` are set to exactly
    zero.  Returns ``(eig, sigma_std, zero_tol)``.
    """
    sigma, s = classical.right_singular(a.std, solver)
    m, n = a.shape
    if zero_tol is None:
        zero_tol = 1e-10 * max(m, n) * float(sigma[0] if sigma.size else 0.0)
    zero_count = int(np.count_nonzero(sigma <= zero_tol))
    d = sigma**2
    d[n - zero_count:] = 0.0
    if cluster_tol is None:
        cluster_tol = default_cluster_tol(d)
    b_inf = a.std.conj().T @ a.inf
    b_inf = b_inf + b_inf.conj().T
    eig = unitary_decomposition(s, d, b_inf, cluster_tol, zero_count=zero_count, solver=solver)
    return eig, sigma, zero_tol


def eig_dual_part(a_inf: np.ndarray, x_st: np.ndarray) -> float:
    """Infinitesimal part of the eigenvalue whose eigenvector has standard part ``x_st``.

    ``x_st^* A_I x_st / (x_st^* x_st)``; independent of the decomposition and
    used to cross-check it.
    """
    x_st = np.asarray(x_st, dtype=complex)
    denom = float(np.vdot(x_st, x_st).real)
    if denom == 0:
        raise ZeroVector("standard part of the eigenvector is zero")
    return float((np.vdot(x_st, np.asarray(a_inf) @ x_st) / denom).real)


def eig_residual(a: DCMatrix, value: DualNumber, u: DCVector) -> DualNumber:
    """``||A u - lambda u||_2`` with round-off in the standard part ignored."""
    au = a @ u
    lu = u * value
    r = au - lu
    return vec_norm2(r, tol=1e-12 * max(1.0, float(np.linalg.norm(a.std))))


def classify_definiteness(e: HermEig) -> Definiteness:
    values = e.values
    if all(v.std > 0 for v in values):
        return Definiteness.POSITIVE_DEFINITE
    zero = DualNumber(0.0, 0.0)
    if all(dn_cmp(v, zero) is not Ordering.LESS for v in values):
        return Definiteness.POSITIVE_SEMIDEFINITE
    return Definiteness.INDEFINITE
