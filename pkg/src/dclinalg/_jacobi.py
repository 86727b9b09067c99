"""Classical complex kernels: Hermitian Jacobi eigensolver, one-sided Jacobi SVD,
and deterministic orthogonal complements.

Rotations are applied in parallel (round-robin) order: every round rotates
``n // 2`` disjoint index pairs at once, so one round is a handful of
vectorized numpy operations.  The schedule is fixed, which makes every result
a deterministic function of the input.
"""

from __future__ import annotations

import numpy as np

from .exceptions import ConvergenceError, ShapeError

MAX_SWEEPS = 60


def round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pair schedule covering every ``(p, q)``, ``p < q``, once per sweep."""
    players = list(range(n + (n % 2)))
    size = len(players)
    rounds = []
    for _ in range(size - 1):
        ps, qs = [], []
        for i in range(size // 2):
            a, b = players[i], players[size - 1 - i]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        if ps:
            rounds.append((np.array(ps), np.array(qs)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def _rotation(app, aqq, apq, active):
    """Parameters ``(c, s*e)`` of the unitary that annihilates ``apq``.

    The 2x2 block is ``[[c, s*e], [-s*conj(e), c]]`` with ``e = apq/|apq|``.
    """
    mag = np.abs(apq)
    safe = np.where(active, mag, 1.0)
    tau = (aqq - app) / (2.0 * safe)
    t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    se = t * c * (apq / safe)
    c = np.where(active, c, 1.0)
    se = np.where(active, se, 0.0)
    return c, se


def hermitian_jacobi(a: np.ndarray, tol: float = 1e-13) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a complex Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(w, v)`` with ``w`` sorted in descending order and
    ``a @ v ~= v @ diag(w)``.  Converges when the off-diagonal Frobenius mass
    drops below ``tol * ||a||_F``.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    if n <= 1:
        return a.real.diagonal().copy(), v
    scale = np.linalg.norm(a)
    if scale == 0:
        return np.zeros(n), v
    schedule = round_robin(n)
    for _ in range(MAX_SWEEPS):
        off = np.linalg.norm(a - np.diag(a.diagonal()))
        if off <= tol * scale:
            break
        for p, q in schedule:
            apq = a[p, q]
            active = np.abs(apq) > 1e-300
            if not active.any():
                continue
            c, se = _rotation(a[p, p].real, a[q, q].real, apq, active)
            sc = se.conj()
            # columns: A <- A J
            colp, colq = a[:, p], a[:, q]
            a[:, p] = colp * c - colq * sc
            a[:, q] = colp * se + colq * c
            # rows: A <- J^H A
            rowp, rowq = a[p, :], a[q, :]
            a[p, :] = rowp * c[:, None] - rowq * se[:, None]
            a[q, :] = rowp * sc[:, None] + rowq * c[:, None]
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p], v[:, q]
            v[:, p] = vp * c - vq * sc
            v[:, q] = vp * se + vq * c
    else:
        raise ConvergenceError("Hermitian Jacobi did not converge")
    w = a.diagonal().real
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def one_sided_jacobi(g: np.ndarray, tol: float = 1e-15) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Hestenes one-sided Jacobi: ``g @ w = h`` with mutually orthogonal columns of ``h``.

    Returns ``(sigma, w, h)`` where ``w`` is ``n x n`` unitary, ``sigma`` are
    the column norms of ``h`` and columns are sorted by ``sigma`` descending.
    Singular values come out with high relative accuracy, which is what the
    zero/nonzero split downstream relies on.
    """
    h = np.array(g, dtype=complex)
    if h.ndim != 2:
        raise ShapeError(f"expected a matrix, got shape {h.shape}")
    m, n = h.shape
    w = np.eye(n, dtype=complex)
    if n == 0:
        return np.zeros(0), w, h
    if n > 1 and m > 0:
        scale2 = np.linalg.norm(h) ** 2
        floor = (np.finfo(float).eps * scale2) ** 2
        schedule = round_robin(n)
        for _ in range(MAX_SWEEPS):
            rotated = False
            for p, q in schedule:
                hp, hq = h[:, p], h[:, q]
                alpha = np.einsum("ij,ij->j", hp.conj(), hp).real
                beta = np.einsum("ij,ij->j", hq.conj(), hq).real
                gamma = np.einsum("ij,ij->j", hp.conj(), hq)
                mag2 = (gamma * gamma.conj()).real
                active = (mag2 > (tol * tol) * alpha * beta) & (mag2 > floor)
                if not active.any():
                    continue
                rotated = True
                c, se = _rotation(alpha, beta, gamma, active)
                sc = se.conj()
                h[:, p] = hp * c - hq * sc
                h[:, q] = hp * se + hq * c
                wp, wq = w[:, p], w[:, q]
                w[:, p] = wp * c - wq * sc
                w[:, q] = wp * se + wq * c
            if not rotated:
                break
        else:
            raise ConvergenceError("one-sided Jacobi did not converge")
    sigma = np.sqrt(np.einsum("ij,ij->j", h.conj(), h).real)
    order = np.argsort(-sigma, kind="stable")
    return sigma[order], w[:, order], h[:, order]


def orthonormalize(cols: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt with one re-orthogonalization pass, column order kept."""
    q = np.array(cols, dtype=complex)
    for j in range(q.shape[1]):
        for _ in range(2):
            if j:
                q[:, j] -= q[:, :j] @ (q[:, :j].conj().T @ q[:, j])
        q[:, j] /= np.linalg.norm(q[:, j])
    return q


def complement(q: np.ndarray, count: int | None = None, tol: float = 1e-8) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of the columns of ``q``.

    ``q`` (``n x k``) must have orthonormal columns.  Candidates are the
    standard basis vectors projected off ``span(q)``; at each step the
    candidate with the largest residual norm is taken (lowest index on ties),
    which is column-pivoted Gram-Schmidt on ``I - q q^H``.
    """
    q = np.asarray(q, dtype=complex)
    n, k = q.shape
    if k > n:
        raise ShapeError(f"{k} columns cannot be orthonormal in dimension {n}")
    count = n - k if count is None else count
    resid = np.eye(n, dtype=complex)
    for _ in range(2):
        if k:
            resid -= q @ (q.conj().T @ resid)
    basis = np.zeros((n, count), dtype=complex)
    threshold = tol * np.sqrt(n)
    for j in range(count):
        norms = np.linalg.norm(resid, axis=0)
        pivot = int(np.argmax(norms))
        if norms[pivot] <= threshold:
            raise ShapeError("input columns are not orthonormal; complement is rank deficient")
        vec = resid[:, pivot] / norms[pivot]
        for _ in range(2):
            if k:
                vec -= q @ (q.conj().T @ vec)
            if j:
                vec -= basis[:, :j] @ (basis[:, :j].conj().T @ vec)
            vec /= np.linalg.norm(vec)
        basis[:, j] = vec
        resid -= np.outer(vec, vec.conj() @ resid)
    return basis


def classical_svd(g: np.ndarray, rank_tol: float | None = None):
    """Full complex SVD ``w1^H g w2 = diag(sigma)`` from one-sided Jacobi.

    Returns ``(sigma, w1, w2)`` with ``len(sigma) == min(g.shape)``, ``w1``
    ``m x m`` and ``w2`` ``n x n`` unitary.  Columns whose singular value is at
    most ``rank_tol`` do not seed left vectors; their left vectors come from
    the orthogonal complement instead.
    """
    g = np.asarray(g, dtype=complex)
    m, n = g.shape
    sigma, w2, h = one_sided_jacobi(g)
    length = min(m, n)
    sigma = sigma[:length]
    if rank_tol is None:
        rank_tol = max(m, n) * np.finfo(float).eps * (sigma[0] if length else 0.0)
    keep = int(np.count_nonzero(sigma > rank_tol))
    left = orthonormalize(h[:, :keep] / sigma[:keep]) if keep else np.zeros((m, 0), dtype=complex)
    w1 = np.hstack([left, complement(left)]) if keep < m else left
    return sigma, w1, w2
