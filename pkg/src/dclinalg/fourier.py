"""Two-dimensional discrete Fourier transform.

Convention: the forward transform is unnormalized,
``F[u, v] = sum_{y, x} f[y, x] exp(-2 pi i (u y / h + v x / w))``, and the
inverse carries the ``1 / (w h)`` factor.  Axes whose length is a power of
two use an iterative radix-2 FFT; other lengths use the direct ``O(n^2)``
transform.
"""

from __future__ import annotations

import numpy as np

from .pgm import GrayImage


def _is_pow2(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def _fft_axis0(x: np.ndarray, sign: float) -> np.ndarray:
    """Radix-2 decimation-in-time FFT along axis 0, vectorized over axis 1."""
    n = x.shape[0]
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=int)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    y = x[rev].astype(complex)
    size = 2
    while size <= n:
        half = size // 2
        tw = np.exp(sign * 2j * np.pi * np.arange(half) / size)[:, None]
        y = y.reshape(n // size, size, -1)
        even = y[:, :half].copy()
        odd = y[:, half:] * tw
        y[:, :half] = even + odd
        y[:, half:] = even - odd
        y = y.reshape(n, -1)
        size *= 2
    return y


def _dft_axis0(x: np.ndarray, sign: float) -> np.ndarray:
    n = x.shape[0]
    k = np.arange(n)
    kernel = np.exp(sign * 2j * np.pi * np.outer(k, k) / n)
    return kernel @ x


def _transform(x: np.ndarray, sign: float) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    for _ in range(2):
        op = _fft_axis0 if _is_pow2(x.shape[0]) else _dft_axis0
        x = op(x, sign).T
    return x


def dft2(image) -> np.ndarray:
    """Forward 2-D DFT of a :class:`GrayImage` or a 2-D array."""
    px = image.pixels if isinstance(image, GrayImage) else np.asarray(image)
    return _transform(px, -1.0)


def idft2_complex(f: np.ndarray) -> np.ndarray:
    f = np.asarray(f, dtype=complex)
    return _transform(f, 1.0) / f.size


def idft2(f: np.ndarray) -> GrayImage:
    """Inverse 2-D DFT; the real part becomes the image (clamped only on write)."""
    return GrayImage(idft2_complex(f).real)
