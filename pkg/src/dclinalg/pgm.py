"""Grayscale PGM images (``P2`` ASCII and ``P5`` binary)."""

from __future__ import annotations

import os
import re
from dataclasses import dataclass

import numpy as np

from .exceptions import ParseError


@dataclass(frozen=True)
class GrayImage:
    """Row-major grayscale pixels, shape ``(height, width)``, nominal range 0..255."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.array(self.pixels, dtype=float)
        if px.ndim != 2 or px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError(f"image must be a non-empty 2-D array, got shape {px.shape}")
        if not np.all(np.isfinite(px)):
            raise ValueError("image pixels must be finite")
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    def to_bytes(self) -> np.ndarray:
        """Pixels rounded and clamped into ``uint8``."""
        return np.clip(np.rint(self.pixels), 0, 255).astype(np.uint8)


_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def _header(data: bytes, source: str):
    pos = 0
    fields = []
    for _ in range(4):
        match = _TOKEN.match(data, pos)
        if not match:
            raise ParseError(f"{source}: truncated PGM header")
        fields.append(match.group(1))
        pos = match.end()
    magic = fields[0]
    if magic not in (b"P2", b"P5"):
        raise ParseError(f"{source}: unsupported magic {magic!r}, expected P2 or P5")
    try:
        width, height, maxval = (int(f) for f in fields[1:])
    except ValueError:
        raise ParseError(f"{source}: non-integer PGM header field") from None
    if width < 1 or height < 1 or not 0 < maxval < 65536:
        raise ParseError(f"{source}: invalid PGM header {width}x{height} maxval={maxval}")
    return magic, width, height, maxval, pos


def decode_pgm(data: bytes, source: str = "<bytes>") -> GrayImage:
    magic, width, height, maxval, pos = _header(data, source)
    count = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates the header from the raster
        start = pos + 1
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        raster = data[start:start + count * dtype.itemsize]
        if len(raster) != count * dtype.itemsize:
            raise ParseError(f"{source}: raster has {len(raster)} bytes, expected {count * dtype.itemsize}")
        values = np.frombuffer(raster, dtype=dtype).astype(float)
    else:
        tokens = re.sub(rb"#[^\n]*", b"", data[pos:]).split()
        if len(tokens) != count:
            raise ParseError(f"{source}: found {len(tokens)} pixel values, expected {count}")
        try:
            values = np.array([int(t) for t in tokens], dtype=float)
        except ValueError:
            raise ParseError(f"{source}: non-integer pixel value") from None
    if values.size and values.max() > maxval:
        raise ParseError(f"{source}: pixel value exceeds maxval {maxval}")
    if maxval != 255:
        values = values * (255.0 / maxval)
    return GrayImage(values.reshape(height, width))


def encode_pgm(image: GrayImage, binary: bool = True) -> bytes:
    px = image.to_bytes()
    header = f"{'P5' if binary else 'P2'}\n{image.width} {image.height}\n255\n".encode("ascii")
    if binary:
        return header + px.tobytes()
    rows = "\n".join(" ".join(str(int(v)) for v in row) for row in px)
    return header + rows.encode("ascii") + b"\n"


def read_pgm(path: str | os.PathLike) -> GrayImage:
    with open(path, "rb") as fh:
        return decode_pgm(fh.read(), source=os.fspath(path))


def write_pgm(image: GrayImage, path: str | os.PathLike, binary: bool = True) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_pgm(image, binary))
