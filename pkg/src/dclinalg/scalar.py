"""Dual numbers and dual complex numbers.

A dual number is ``a + b*eps`` with real ``a`` (standard part), real ``b``
(infinitesimal part) and ``eps**2 == 0``.  A dual complex number has complex
parts instead.  Both types are immutable value objects; the free functions
(``dn_mul``, ``dc_magnitude``, ...) are the canonical implementations and the
operator overloads delegate to them.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import IntEnum
from numbers import Complex, Real

from .exceptions import ConstructionError, DomainError, NotAppreciable


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _finite_real(value, name):
    if isinstance(value, bool) or not isinstance(value, Real):
        raise ConstructionError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConstructionError(f"{name} must be finite, got {value!r}")
    return value


def _finite_complex(value, name):
    if isinstance(value, bool) or not isinstance(value, Complex):
        raise ConstructionError(f"{name} must be a complex number, got {value!r}")
    value = complex(value)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ConstructionError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class DualNumber:
    """``std + inf*eps`` with real parts, totally ordered lexicographically."""

    std: float = 0.0
    inf: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "std", _finite_real(self.std, "std"))
        object.__setattr__(self, "inf", _finite_real(self.inf, "inf"))

    @classmethod
    def coerce(cls, value) -> "DualNumber":
        if isinstance(value, DualNumber):
            return value
        if isinstance(value, Real):
            return cls(value, 0.0)
        raise TypeError(f"cannot interpret {value!r} as a dual number")

    @property
    def is_appreciable(self) -> bool:
        return self.std != 0.0

    def __add__(self, other):
        try:
            other = DualNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return DualNumber(self.std + other.std, self.inf + other.inf)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = DualNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return DualNumber(self.std - other.std, self.inf - other.inf)

    def __rsub__(self, other):
        try:
            other = DualNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __neg__(self):
        return DualNumber(-self.std, -self.inf)

    def __mul__(self, other):
        try:
            other = DualNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return dn_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = DualNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return dn_mul(self, dn_inv(other))

    def __rtruediv__(self, other):
        try:
            other = DualNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return dn_mul(other, dn_inv(self))

    def _cmp(self, other):
        try:
            other = DualNumber.coerce(other)
        except TypeError:
            return None
        return dn_cmp(self, other)

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c is Ordering.LESS

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c is not Ordering.GREATER

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c is Ordering.GREATER

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c is not Ordering.LESS

    def sqrt(self) -> "DualNumber":
        return dn_sqrt(self)

    def inverse(self) -> "DualNumber":
        return dn_inv(self)

    def format(self, precision: int = 4) -> str:
        return format_dual(self, precision)

    def __str__(self):
        return format_dual(self, 4)


@dataclass(frozen=True)
class DualComplex:
    """``std + inf*eps`` with complex parts ``q1 + q2 i`` and ``q3 + q4 i``."""

    std: complex = 0j
    inf: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "std", _finite_complex(self.std, "std"))
        object.__setattr__(self, "inf", _finite_complex(self.inf, "inf"))

    @classmethod
    def coerce(cls, value) -> "DualComplex":
        if isinstance(value, DualComplex):
            return value
        if isinstance(value, DualNumber):
            return cls(value.std, value.inf)
        if isinstance(value, Complex):
            return cls(value, 0j)
        raise TypeError(f"cannot interpret {value!r} as a dual complex number")

    @property
    def is_appreciable(self) -> bool:
        return self.std != 0

    def __add__(self, other):
        try:
            other = DualComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return dc_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = DualComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return DualComplex(self.std - other.std, self.inf - other.inf)

    def __rsub__(self, other):
        try:
            other = DualComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __neg__(self):
        return DualComplex(-self.std, -self.inf)

    def __mul__(self, other):
        try:
            other = DualComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return dc_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = DualComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return dc_mul(self, dc_inv(other))

    def conjugate(self) -> "DualComplex":
        return dc_conj(self)

    def magnitude(self) -> DualNumber:
        return dc_magnitude(self)

    __abs__ = magnitude

    def inverse(self) -> "DualComplex":
        return dc_inv(self)

    def __str__(self):
        return f"({self.std:g}) + ({self.inf:g})eps"


def dn_cmp(p: DualNumber, q: DualNumber) -> Ordering:
    """Lexicographic total order: standard parts first, exact tie -> infinitesimal parts."""
    if p.std < q.std:
        return Ordering.LESS
    if p.std > q.std:
        return Ordering.GREATER
    if p.inf < q.inf:
        return Ordering.LESS
    if p.inf > q.inf:
        return Ordering.GREATER
    return Ordering.EQUAL


def dn_approx_eq(p: DualNumber, q: DualNumber, tol_std: float = 1e-12, tol_inf: float = 1e-12) -> bool:
    """Tolerance comparison for test harnesses; not an order relation."""
    return abs(p.std - q.std) <= tol_std and abs(p.inf - q.inf) <= tol_inf


def dn_mul(p: DualNumber, q: DualNumber) -> DualNumber:
    return DualNumber(p.std * q.std, p.std * q.inf + p.inf * q.std)


def dn_sqrt(q: DualNumber) -> DualNumber:
    """Square root of a positive dual number; ``sqrt(0) = 0`` by convention."""
    if q.std > 0:
        root = math.sqrt(q.std)
        return DualNumber(root, q.inf / (2.0 * root))
    if q.std == 0 and q.inf == 0:
        return DualNumber(0.0, 0.0)
    raise DomainError(f"square root undefined for {q!r}")


def dn_inv(q: DualNumber) -> DualNumber:
    if q.std == 0:
        raise NotAppreciable(f"{q!r} is infinitesimal and has no inverse")
    return DualNumber(1.0 / q.std, -q.inf / (q.std * q.std))


def dc_conj(q: DualComplex) -> DualComplex:
    return DualComplex(q.std.conjugate(), q.inf.conjugate())


def dc_add(p: DualComplex, q: DualComplex) -> DualComplex:
    return DualComplex(p.std + q.std, p.inf + q.inf)


def dc_mul(p: DualComplex, q: DualComplex) -> DualComplex:
    return DualComplex(p.std * q.std, p.std * q.inf + p.inf * q.std)


def dc_inv(q: DualComplex) -> DualComplex:
    if q.std == 0:
        raise NotAppreciable(f"{q!r} is infinitesimal and has no inverse")
    return DualComplex(1.0 / q.std, -q.inf / (q.std * q.std))


def dc_magnitude(q: DualComplex) -> DualNumber:
    """Magnitude ``|q|``, a nonnegative dual number.

    For appreciable ``q`` this is ``sqrt(q * conj(q))``; for infinitesimal
    ``q`` it is ``|q_I| eps``.
    """
    if q.std != 0:
        modulus = abs(q.std)
        cross = q.std.real * q.inf.real + q.std.imag * q.inf.imag
        return DualNumber(modulus, cross / modulus)
    return DualNumber(0.0, abs(q.inf))


def dc_squared_magnitude(q: DualComplex) -> DualNumber:
    """``q * conj(q)`` as a dual number (zero for infinitesimal ``q``)."""
    prod = dc_mul(q, dc_conj(q))
    return DualNumber(prod.std.real, prod.inf.real)


def format_dual(q: DualNumber, precision: int = 4) -> str:
    """Render as ``"<std> + <inf>*eps"`` with fixed decimals; inverse of :func:`parse_dual`."""
    std = f"{q.std:.{precision}f}"
    inf = f"{abs(q.inf):.{precision}f}"
    sign = "-" if math.copysign(1.0, q.inf) < 0 and float(inf) != 0 else "+"
    return f"{std} {sign} {inf}*eps"


_DUAL_RE = re.compile(
    r"^\s*(?P<std>[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*"
    r"(?P<sign>[-+])\s*(?P<inf>(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*\*?\s*eps\s*$"
)


def parse_dual(text: str) -> DualNumber:
    match = _DUAL_RE.match(text)
    if match is None:
        raise ValueError(f"not a dual number literal: {text!r}")
    inf = float(match["inf"])
    if match["sign"] == "-":
        inf = -inf
    return DualNumber(float(match["std"]), inf)


__all__ = [
    "DualNumber",
    "DualComplex",
    "Ordering",
    "dn_cmp",
    "dn_approx_eq",
    "dn_mul",
    "dn_sqrt",
    "dn_inv",
    "dc_conj",
    "dc_add",
    "dc_mul",
    "dc_inv",
    "dc_magnitude",
    "dc_squared_magnitude",
    "format_dual",
    "parse_dual",
]
