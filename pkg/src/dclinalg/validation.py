"""Input coercion helpers shared by the estimator and the CLI."""

from __future__ import annotations

import numbers

import numpy as np

from .array import DCMatrix
from .classical import SOLVERS
from .exceptions import ConstructionError, ShapeError


def check_dual_array(x, *, min_rows: int = 1, min_cols: int = 1, name: str = "X") -> DCMatrix:
    """Coerce ``x`` into a :class:`DCMatrix`.

    Accepted forms: a ``DCMatrix``; a ``(std, inf)`` pair of 2-D arrays; a
    stacked array of shape ``(2, m, n)``; or a plain 2-D array (zero
    infinitesimal part).
    """
    if isinstance(x, DCMatrix):
        a = x
    elif isinstance(x, tuple):
        if len(x) != 2:
            raise ShapeError(f"{name}: expected a (std, inf) pair, got a tuple of length {len(x)}")
        a = DCMatrix(*x)
    else:
        arr = np.asarray(x)
        if arr.dtype == object:
            raise ConstructionError(f"{name}: cannot interpret object array as a dual matrix")
        if arr.ndim == 3 and arr.shape[0] == 2:
            a = DCMatrix(arr[0], arr[1])
        elif arr.ndim == 2:
            a = DCMatrix(arr)
        else:
            raise ShapeError(f"{name}: expected a 2-D or (2, m, n) array, got shape {arr.shape}")
    m, n = a.shape
    if m < min_rows or n < min_cols:
        raise ShapeError(f"{name}: shape {a.shape} needs at least {min_rows} rows and {min_cols} columns")
    return a


def check_tolerance(value, name: str) -> float | None:
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise TypeError(f"{name} must be a real number or None, got {type(value).__name__}")
    value = float(value)
    if not np.isfinite(value) or value < 0:
        raise ValueError(f"{name} must be finite and non-negative, got {value}")
    return value


def check_solver(solver) -> str:
    if solver not in SOLVERS:
        raise ValueError(f"solver must be one of {SOLVERS}, got {solver!r}")
    return solver
