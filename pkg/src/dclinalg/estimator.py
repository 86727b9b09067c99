"""scikit-learn style wrapper around the truncated dual SVD."""

from __future__ import annotations

import numbers

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .array import DCMatrix, mat_mul
from .exceptions import ShapeError
from .svd import svd
from .validation import check_dual_array, check_solver, check_tolerance


class DualTruncatedSVD(TransformerMixin, BaseEstimator):
    """Rank-``n_components`` projection of a dual complex data matrix.

    ``fit`` decomposes ``X = V Sigma U^*``.  ``transform`` maps rows onto the
    leading right singular directions, ``X @ U_k``, and ``inverse_transform``
    maps back with ``Z @ U_k^*``.  On the training matrix the round trip is
    the best rank-``k`` approximation.

    Parameters
    ----------
    n_components : int
        Number of singular triplets kept.  Must not exceed ``min(m, n)``.
    cluster_tol, zero_tol : float or None
        Forwarded to :func:`dclinalg.svd`.
    solver : {"auto", "jacobi", "lapack"}

    Attributes
    ----------
    singular_values_ : tuple of DualNumber
        Leading ``n_components`` dual singular values.
    components_ : DCMatrix
        ``U_k^*``, shape ``(n_components, n_features)``.
    rank_, arank_ : int
        Rank and appreciable rank of the training matrix.
    svd_ : SvdResult
        The full decomposition.
    n_features_in_ : int
    """

    def __init__(self, n_components=2, cluster_tol=None, zero_tol=None, solver="auto"):
        self.n_components = n_components
        self.cluster_tol = cluster_tol
        self.zero_tol = zero_tol
        self.solver = solver

    def fit(self, X, y=None):
        a = check_dual_array(X)
        k = self.n_components
        if isinstance(k, bool) or not isinstance(k, numbers.Integral) or k < 1:
            raise ValueError(f"n_components must be a positive integer, got {k!r}")
        if k > min(a.shape):
            raise ValueError(f"n_components={k} exceeds min(n_samples, n_features)={min(a.shape)}")
        s = svd(
            a,
            cluster_tol=check_tolerance(self.cluster_tol, "cluster_tol"),
            zero_tol=check_tolerance(self.zero_tol, "zero_tol"),
            solver=check_solver(self.solver),
        )
        self.svd_ = s
        self.singular_values_ = s.sigma[:k]
        self.components_ = s.U[:, :k].H
        self.rank_ = s.rank_t
        self.arank_ = s.arank_r
        self.n_features_in_ = a.shape[1]
        return self

    def _check_features(self, a: DCMatrix, expected: int):
        if a.shape[1] != expected:
            raise ShapeError(f"X has {a.shape[1]} features, expected {expected}")

    def transform(self, X) -> DCMatrix:
        check_is_fitted(self, "components_")
        a = check_dual_array(X)
        self._check_features(a, self.n_features_in_)
        return mat_mul(a, self.components_.H)

    def inverse_transform(self, X) -> DCMatrix:
        check_is_fitted(self, "components_")
        z = check_dual_array(X)
        self._check_features(z, self.components_.shape[0])
        return mat_mul(z, self.components_)
