"""Singular value decomposition, ranks and truncated low-rank approximation.

``A = V Sigma U^*`` with ``V`` (``m x m``) and ``U`` (``n x n``) dual complex
unitary and ``Sigma`` rectangular diagonal with dual-number entries:
appreciable positive values first, then positive infinitesimal values, then
zeros.  The appreciable block comes from the decomposition of ``A^* A``.  The
infinitesimal block comes from a classical SVD of the residual coupling
``G = V2_st^* A_st U2_I + V2_st^* A_I U2_st`` on the null directions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import classical
from .array import DCMatrix, DCVector, complete_unitary, mat_mul, vec_norm2
from .exceptions import ShapeError
from .scalar import DualNumber
from .spectral import gram_eig


@dataclass(frozen=True)
class SvdResult:
    V: DCMatrix
    U: DCMatrix
    sigma_std: np.ndarray
    sigma_inf: np.ndarray
    rank_t: int
    arank_r: int

    @property
    def shape(self) -> tuple[int, int]:
        return self.V.shape[0], self.U.shape[0]

    @property
    def sigma(self) -> tuple[DualNumber, ...]:
        return tuple(DualNumber(float(s), float(i)) for s, i in zip(self.sigma_std, self.sigma_inf))

    def sigma_matrix(self) -> DCMatrix:
        return DCMatrix.diag(self.sigma, self.shape)

    def reconstruct(self) -> DCMatrix:
        return truncate(self, len(self.sigma_std))


def svd(
    a: DCMatrix,
    cluster_tol: float | None = None,
    zero_tol: float | None = None,
    solver: str = "auto",
) -> SvdResult:
    """Full SVD of a rectangular dual complex matrix.

    Parameters
    ----------
    a : DCMatrix
        ``m x n`` input, ``m, n >= 1``.
    cluster_tol : float, optional
        Gap below which eigenvalues of ``A_st^* A_st`` count as equal.
    zero_tol : float, optional
        Singular values at or below this are treated as zero.  The default,
        ``1e-10 * max(m, n) * s_max``, is applied to the standard parts with
        ``s_max`` the largest standard singular value.  For the infinitesimal
        parts ``s_max`` also covers the largest infinitesimal singular value.
    solver : {"auto", "jacobi", "lapack"}
    """
    m, n = a.shape
    if m == 0 or n == 0:
        raise ShapeError(f"cannot decompose an empty {m}x{n} matrix")
    explicit_zero_tol = zero_tol
    eig, sigma_raw, zero_tol = gram_eig(a, cluster_tol, zero_tol, solver)
    lam = eig.values_std
    lam_inf = eig.values_inf
    r = int(np.count_nonzero(lam > 0))

    u_st, u_inf = eig.U.std, eig.U.inf
    mu = np.sqrt(lam[:r])
    mu_inf = lam_inf[:r] / (2.0 * mu)
    inv_mu = 1.0 / mu
    inv_mu_inf = lam_inf[:r] / (-2.0 * lam[:r] * mu)

    u1_st, u1_inf = u_st[:, :r], u_inf[:, :r]
    a_u1 = a.std @ u1_st
    v1_st = a_u1 * inv_mu
    v1_inf = a_u1 * inv_mu_inf + (a.std @ u1_inf) * inv_mu + (a.inf @ u1_st) * inv_mu
    v = complete_unitary(DCMatrix(v1_st, v1_inf))

    u2_st, u2_inf = u_st[:, r:], u_inf[:, r:]
    v2_st, v2_inf = v.std[:, r:], v.inf[:, r:]
    g = v2_st.conj().T @ (a.std @ u2_inf) + v2_st.conj().T @ (a.inf @ u2_st)
    d, w1, w2 = classical.full_svd(g, solver)

    if explicit_zero_tol is None:
        scale = max(float(sigma_raw[0]), float(d[0]) if d.size else 0.0)
        inf_zero_tol = 1e-10 * max(m, n) * scale
    else:
        inf_zero_tol = explicit_zero_tol
    d = np.where(d > inf_zero_tol, d, 0.0)

    u_full = DCMatrix(np.hstack([u1_st, u2_st @ w2]), np.hstack([u1_inf, u2_inf @ w2]))
    v_full = DCMatrix(np.hstack([v1_st, v2_st @ w1]), np.hstack([v.inf[:, :r], v2_inf @ w1]))
    length = min(m, n)
    sigma_std = np.zeros(length)
    sigma_std[:r] = mu
    sigma_inf = np.concatenate([mu_inf, d])[:length]
    rank_t = r + int(np.count_nonzero(d))
    for arr in (sigma_std, sigma_inf):
        arr.setflags(write=False)
    return SvdResult(v_full, u_full, sigma_std, sigma_inf, rank_t, r)


def rank(a: DCMatrix, **kwargs) -> int:
    """Number of nonzero dual singular values."""
    return svd(a, **kwargs).rank_t


def arank(a: DCMatrix, **kwargs) -> int:
    """Number of appreciable singular values; equals the rank of ``A_st``."""
    return svd(a, **kwargs).arank_r


def _check_k(s: SvdResult, k: int) -> int:
    length = len(s.sigma_std)
    if not 0 <= k <= length:
        raise IndexError(f"k must lie in [0, {length}], got {k}")
    return int(k)


def truncate_indices(s: SvdResult, indices) -> DCMatrix:
    """``V[:, idx] Sigma[idx, idx] U[:, idx]^*`` for an arbitrary index set."""
    idx = np.asarray(list(indices), dtype=int)
    vs, vi = s.V.std[:, idx], s.V.inf[:, idx]
    us, ui = s.U.std[:, idx], s.U.inf[:, idx]
    left = DCMatrix(vs * s.sigma_std[idx], vs * s.sigma_inf[idx] + vi * s.sigma_std[idx])
    return mat_mul(left, DCMatrix(us.conj().T, ui.conj().T))


def truncate(s: SvdResult, k: int) -> DCMatrix:
    """Best rank-``<= k`` approximation ``V[:, :k] Sigma_k U[:, :k]^*``."""
    return truncate_indices(s, range(_check_k(s, k)))


def truncate_factors(s: SvdResult, k: int) -> tuple[DCMatrix, tuple[DualNumber, ...], DCMatrix]:
    k = _check_k(s, k)
    return s.V[:, :k], s.sigma[:k], s.U[:, :k]


def lowrank_error(s: SvdResult, k: int) -> DualNumber:
    """``||A - A_k||_F`` as the dual 2-norm of the discarded singular values."""
    k = _check_k(s, k)
    return vec_norm2(DCVector(s.sigma_std[k:], s.sigma_inf[k:]))
