"""Dual complex vectors and matrices.

Arrays are stored as a pair of complex numpy arrays ``(std, inf)`` standing
for ``std + inf*eps``.  Both are copied and frozen on construction.
"""

from __future__ import annotations

from numbers import Complex

import numpy as np

from . import classical
from .exceptions import ConstructionError, NotPartiallyUnitary, ShapeError
from .scalar import DualComplex, DualNumber, dn_sqrt


def _frozen(values, name, ndim=None):
    arr = np.array(values, dtype=complex)
    if ndim is not None and arr.ndim != ndim:
        raise ShapeError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ConstructionError(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


def _coerce_scalar(value) -> DualComplex | None:
    if isinstance(value, (DualComplex, DualNumber)):
        return DualComplex.coerce(value)
    if isinstance(value, Complex) and not isinstance(value, bool):
        return DualComplex(complex(value), 0j)
    return None


class _DualArray:
    __slots__ = ("std", "inf")
    _ndim: int = 0

    def __init__(self, std, inf=None):
        std_arr = _frozen(std, "std", self._ndim)
        inf_arr = _frozen(np.zeros_like(std_arr) if inf is None else inf, "inf", self._ndim)
        if std_arr.shape != inf_arr.shape:
            raise ShapeError(f"std {std_arr.shape} and inf {inf_arr.shape} shapes differ")
        object.__setattr__(self, "std", std_arr)
        object.__setattr__(self, "inf", inf_arr)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def shape(self):
        return self.std.shape

    def __len__(self):
        return self.std.shape[0]

    def is_appreciable(self, tol: float = 0.0) -> bool:
        return bool(np.any(np.abs(self.std) > tol))

    def conj(self):
        return type(self)(self.std.conj(), self.inf.conj())

    def _like(self, other):
        if isinstance(other, type(self)):
            if other.shape != self.shape:
                raise ShapeError(f"shapes {self.shape} and {other.shape} differ")
            return other
        return None

    def __add__(self, other):
        other = self._like(other)
        if other is None:
            return NotImplemented
        return type(self)(self.std + other.std, self.inf + other.inf)

    def __sub__(self, other):
        other = self._like(other)
        if other is None:
            return NotImplemented
        return type(self)(self.std - other.std, self.inf - other.inf)

    def __neg__(self):
        return type(self)(-self.std, -self.inf)

    def __mul__(self, other):
        q = _coerce_scalar(other)
        if q is None:
            return NotImplemented
        return type(self)(q.std * self.std, q.std * self.inf + q.inf * self.std)

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (
            self.shape == other.shape
            and bool(np.array_equal(self.std, other.std))
            and bool(np.array_equal(self.inf, other.inf))
        )

    __hash__ = None

    def allclose(self, other, tol_std: float = 1e-12, tol_inf: float | None = None) -> bool:
        """Maximum absolute deviation of each part within its tolerance."""
        tol_inf = tol_std if tol_inf is None else tol_inf
        other = self._like(other)
        if other is None:
            return False
        return bool(
            np.max(np.abs(self.std - other.std), initial=0.0) <= tol_std
            and np.max(np.abs(self.inf - other.inf), initial=0.0) <= tol_inf
        )

    def __repr__(self):
        return f"{type(self).__name__}(std={self.std!r}, inf={self.inf!r})"


class DCVector(_DualArray):
    """Dual complex vector ``x_st + x_I eps`` of length ``n``."""

    __slots__ = ()
    _ndim = 1

    @classmethod
    def zeros(cls, n: int) -> "DCVector":
        return cls(np.zeros(n, dtype=complex))

    @classmethod
    def basis(cls, n: int, i: int) -> "DCVector":
        e = np.zeros(n, dtype=complex)
        e[i] = 1.0
        return cls(e)

    @classmethod
    def from_scalars(cls, values) -> "DCVector":
        values = [DualComplex.coerce(v) for v in values]
        return cls([v.std for v in values], [v.inf for v in values])

    def __getitem__(self, idx):
        if isinstance(idx, (int, np.integer)):
            return DualComplex(self.std[idx], self.inf[idx])
        return DCVector(self.std[idx], self.inf[idx])

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    def norm(self, tol: float = 0.0) -> DualNumber:
        return vec_norm2(self, tol)


class DCMatrix(_DualArray):
    """Dual complex matrix ``A_st + A_I eps`` of shape ``(m, n)``."""

    __slots__ = ()
    _ndim = 2

    @classmethod
    def zeros(cls, m: int, n: int) -> "DCMatrix":
        return cls(np.zeros((m, n), dtype=complex))

    @classmethod
    def identity(cls, n: int) -> "DCMatrix":
        return cls(np.eye(n, dtype=complex))

    @classmethod
    def from_scalars(cls, rows) -> "DCMatrix":
        rows = [[DualComplex.coerce(v) for v in row] for row in rows]
        return cls([[v.std for v in r] for r in rows], [[v.inf for v in r] for r in rows])

    @classmethod
    def from_columns(cls, columns) -> "DCMatrix":
        columns = list(columns)
        return cls(np.stack([c.std for c in columns], axis=1), np.stack([c.inf for c in columns], axis=1))

    @classmethod
    def diag(cls, values, shape: tuple[int, int] | None = None) -> "DCMatrix":
        """(Rectangular) diagonal matrix from dual numbers or dual complex numbers."""
        values = [DualComplex.coerce(v) for v in values]
        m, n = shape if shape is not None else (len(values), len(values))
        if len(values) > min(m, n):
            raise ShapeError(f"{len(values)} diagonal values do not fit shape {(m, n)}")
        std = np.zeros((m, n), dtype=complex)
        inf = np.zeros((m, n), dtype=complex)
        idx = np.arange(len(values))
        std[idx, idx] = [v.std for v in values]
        inf[idx, idx] = [v.inf for v in values]
        return cls(std, inf)

    @property
    def H(self) -> "DCMatrix":
        return adjoint(self)

    @property
    def T(self) -> "DCMatrix":
        return transpose(self)

    def __getitem__(self, idx):
        std, inf = self.std[idx], self.inf[idx]
        if std.ndim == 0:
            return DualComplex(complex(std), complex(inf))
        if std.ndim == 1:
            return DCVector(std, inf)
        return DCMatrix(std, inf)

    def column(self, j: int) -> DCVector:
        return DCVector(self.std[:, j], self.inf[:, j])

    def __matmul__(self, other):
        if isinstance(other, DCMatrix):
            return mat_mul(self, other)
        if isinstance(other, DCVector):
            return mat_vec(self, other)
        return NotImplemented

    def flatten(self) -> DCVector:
        return DCVector(self.std.ravel(), self.inf.ravel())

    def norm(self, tol: float = 0.0) -> DualNumber:
        return fro_norm(self, tol)


def _dual_root_of_sum_squares(std: np.ndarray, inf: np.ndarray, tol: float) -> DualNumber:
    # sum |q|^2 in dual arithmetic: (|q_st|^2, 2 Re(conj(q_st) q_I)); infinitesimal entries add zero
    if np.any(np.abs(std) > tol):
        mask = np.abs(std) > tol
        s = std[mask]
        total = DualNumber(float(np.sum(np.abs(s) ** 2)), float(2.0 * np.sum((s.conj() * inf[mask]).real)))
        return dn_sqrt(total)
    return DualNumber(0.0, float(np.linalg.norm(inf)))


def vec_norm2(x: DCVector, tol: float = 0.0) -> DualNumber:
    """2-norm of a dual complex vector.

    ``tol`` treats standard parts with modulus ``<= tol`` as zero, which is
    useful for residuals whose standard part is pure round-off.
    """
    return _dual_root_of_sum_squares(x.std, x.inf, tol)


def fro_norm(a: DCMatrix, tol: float = 0.0) -> DualNumber:
    """Frobenius norm, i.e. the 2-norm of the vectorized matrix."""
    return _dual_root_of_sum_squares(a.std.ravel(), a.inf.ravel(), tol)


def inner(x: DCVector, y: DCVector) -> DualComplex:
    """``x^* y``."""
    if x.shape != y.shape:
        raise ShapeError(f"vector lengths {x.shape} and {y.shape} differ")
    xs = x.std.conj()
    return DualComplex(complex(xs @ y.std), complex(xs @ y.inf + x.inf.conj() @ y.std))


def mat_mul(a: DCMatrix, b: DCMatrix) -> DCMatrix:
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return DCMatrix(a.std @ b.std, a.std @ b.inf + a.inf @ b.std)


def mat_vec(a: DCMatrix, x: DCVector) -> DCVector:
    if a.shape[1] != x.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by vector of length {x.shape[0]}")
    return DCVector(a.std @ x.std, a.std @ x.inf + a.inf @ x.std)


def adjoint(a: DCMatrix) -> DCMatrix:
    return DCMatrix(a.std.conj().T, a.inf.conj().T)


def transpose(a: DCMatrix) -> DCMatrix:
    return DCMatrix(a.std.T, a.inf.T)


def conj(a):
    return a.conj()


def hstack(blocks) -> DCMatrix:
    blocks = list(blocks)
    return DCMatrix(np.hstack([b.std for b in blocks]), np.hstack([b.inf for b in blocks]))


def vstack(blocks) -> DCMatrix:
    blocks = list(blocks)
    return DCMatrix(np.vstack([b.std for b in blocks]), np.vstack([b.inf for b in blocks]))


def _part_norms(std: np.ndarray, inf: np.ndarray) -> tuple[float, float]:
    return float(np.linalg.norm(std)), float(np.linalg.norm(inf))


def _square(a: DCMatrix, what: str):
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"{what} requires a square matrix, got {a.shape}")


def hermitian_defect(a: DCMatrix) -> tuple[float, float]:
    _square(a, "hermitian check")
    return _part_norms(a.std - a.std.conj().T, a.inf - a.inf.conj().T)


def unitarity_defect(a: DCMatrix) -> tuple[float, float]:
    """Frobenius norms of the two parts of ``A^* A - I``."""
    g = adjoint(a) @ a
    return _part_norms(g.std - np.eye(a.shape[1]), g.inf)


def is_hermitian(a: DCMatrix, tol: float = 1e-10, tol_inf: float | None = None) -> bool:
    ds, di = hermitian_defect(a)
    return ds <= tol and di <= (tol if tol_inf is None else tol_inf)


def is_unitary(a: DCMatrix, tol: float = 1e-10, tol_inf: float | None = None) -> bool:
    _square(a, "unitary check")
    ds, di = unitarity_defect(a)
    return ds <= tol and di <= (tol if tol_inf is None else tol_inf)


def is_partially_unitary(a: DCMatrix, tol: float = 1e-10, tol_inf: float | None = None) -> bool:
    n, k = a.shape
    if k > n:
        raise ShapeError(f"an {n}x{k} matrix cannot have orthonormal columns")
    ds, di = unitarity_defect(a)
    return ds <= tol and di <= (tol if tol_inf is None else tol_inf)


def complete_unitary(u: DCMatrix, tol: float = 1e-8) -> DCMatrix:
    """Append columns to ``u`` so the result is square unitary (no precondition check).

    The standard part of the new columns spans the orthogonal complement of
    ``span(U_st)``.  Each new column gets the infinitesimal part
    ``-sum_j (u_Ij^* v_st) u_st,j`` that makes it orthogonal to every column
    of ``u``, and is then scaled to unit dual norm.  The corrections for
    successive new columns do not interact, so all are formed at once.
    """
    n, k = u.shape
    if k > n:
        raise ShapeError(f"an {n}x{k} matrix cannot have orthonormal columns")
    if k == n:
        return u
    v_st = classical.orthogonal_complement(u.std, tol=tol)
    v_inf = -u.std @ (u.inf.conj().T @ v_st)
    # unit dual norm: (1 + 2 Re(v_st^* v_I) eps)^(1/2) per column
    cross = np.einsum("ij,ij->j", v_st.conj(), v_inf).real
    std_norm = np.linalg.norm(v_st, axis=0)
    inf_norm = cross / std_norm
    v_inf = v_inf / std_norm - v_st * (inf_norm / std_norm**2)
    v_st = v_st / std_norm
    return DCMatrix(np.hstack([u.std, v_st]), np.hstack([u.inf, v_inf]))


def extend_to_unitary(u: DCMatrix, tol: float = 1e-10) -> DCMatrix:
    """Complete a partially unitary ``n x k`` matrix to an ``n x n`` unitary matrix ``(U, V)``."""
    n, k = u.shape
    if k > n:
        raise ShapeError(f"an {n}x{k} matrix cannot have orthonormal columns")
    if not is_partially_unitary(u, tol):
        ds, di = unitarity_defect(u)
        raise NotPartiallyUnitary(f"columns are not orthonormal (defect std={ds:.3g}, inf={di:.3g})")
    return complete_unitary(u, tol=max(tol, 1e-8))
