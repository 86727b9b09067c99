"""Solver dispatch for the classical (complex) factorizations used by the dual algorithms.

``"jacobi"`` runs the in-house deterministic Jacobi kernels, ``"lapack"``
delegates to :mod:`numpy.linalg`, and ``"auto"`` picks Jacobi for matrices
whose largest dimension is at most :data:`AUTO_JACOBI_MAX_DIM`.
"""

from __future__ import annotations

import numpy as np

from . import _jacobi

SOLVERS = ("auto", "jacobi", "lapack")
AUTO_JACOBI_MAX_DIM = 128


def resolve_solver(solver: str, *dims: int) -> str:
    if solver not in SOLVERS:
        raise ValueError(f"solver must be one of {SOLVERS}, got {solver!r}")
    if solver == "auto":
        return "jacobi" if max(dims, default=0) <= AUTO_JACOBI_MAX_DIM else "lapack"
    return solver


def hermitian_eig(a: np.ndarray, solver: str = "auto") -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and eigenvectors of a complex Hermitian matrix."""
    a = np.asarray(a, dtype=complex)
    if resolve_solver(solver, a.shape[0]) == "jacobi":
        return _jacobi.hermitian_jacobi(a)
    w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    return w[::-1].copy(), v[:, ::-1].copy()


def right_singular(a: np.ndarray, solver: str = "auto") -> tuple[np.ndarray, np.ndarray]:
    """``(sigma, s)`` with ``a^H a = s diag(sigma**2) s^H``.

    ``sigma`` has length ``n`` (zero padded when ``m < n``) and is descending;
    ``s`` is ``n x n`` unitary.
    """
    a = np.asarray(a, dtype=complex)
    m, n = a.shape
    if resolve_solver(solver, m, n) == "jacobi":
        sigma, w, _ = _jacobi.one_sided_jacobi(a)
        sigma[m:] = 0.0  # rank is at most m
        return sigma, w
    if m == 0:
        return np.zeros(n), np.eye(n, dtype=complex)
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    sigma = np.zeros(n)
    sigma[: s.size] = s
    return sigma, vh.conj().T


def full_svd(g: np.ndarray, solver: str = "auto") -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(sigma, w1, w2)`` with ``w1^H g w2`` rectangular diagonal, ``sigma`` descending."""
    g = np.asarray(g, dtype=complex)
    m, n = g.shape
    if min(m, n) == 0:
        return np.zeros(0), np.eye(m, dtype=complex), np.eye(n, dtype=complex)
    if resolve_solver(solver, m, n) == "jacobi":
        return _jacobi.classical_svd(g)
    u, s, vh = np.linalg.svd(g, full_matrices=True)
    return s, u, vh.conj().T


def orthogonal_complement(q: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    return _jacobi.complement(q, tol=tol)
