"""``.dcmx`` text serialization of dual complex matrices.

Layout (UTF-8, LF line endings, ``#`` starts a comment line)::

    DCMX 1
    shape <m> <n>
    std_re
    <m lines of n floats>
    std_im
    <m lines of n floats>
    inf_re
    <m lines of n floats>
    inf_im
    <m lines of n floats>

Floats are written with ``repr`` so ``load(save(A)) == A`` bit for bit.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .array import DCMatrix
from .exceptions import ParseError

FORMAT_VERSION = 1
SECTIONS = ("std_re", "std_im", "inf_re", "inf_im")


def dumps_dcmx(a: DCMatrix) -> str:
    m, n = a.shape
    blocks = {
        "std_re": a.std.real,
        "std_im": a.std.imag,
        "inf_re": a.inf.real,
        "inf_im": a.inf.imag,
    }
    lines = [f"DCMX {FORMAT_VERSION}", f"shape {m} {n}"]
    for name in SECTIONS:
        lines.append(name)
        for row in blocks[name]:
            lines.append(" ".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"


def loads_dcmx(text: str, source: str = "<string>") -> DCMatrix:
    lines = [
        (no, raw.strip())
        for no, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    pos = 0

    def take(what):
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"{source}: unexpected end of file, missing {what}")
        item = lines[pos]
        pos += 1
        return item

    no, header = take("header")
    parts = header.split()
    if len(parts) != 2 or parts[0] != "DCMX":
        raise ParseError(f"{source}:{no}: expected 'DCMX <version>' header, got {header!r}")
    if parts[1] != str(FORMAT_VERSION):
        raise ParseError(f"{source}:{no}: unsupported format version {parts[1]!r}")

    no, dims = take("shape line")
    parts = dims.split()
    try:
        if len(parts) != 3 or parts[0] != "shape":
            raise ValueError
        m, n = int(parts[1]), int(parts[2])
        if m < 0 or n < 0:
            raise ValueError
    except ValueError:
        raise ParseError(f"{source}:{no}: expected 'shape <m> <n>', got {dims!r}") from None

    blocks = {}
    for name in SECTIONS:
        no, label = take(f"section '{name}'")
        if label != name:
            raise ParseError(f"{source}:{no}: expected section '{name}', got {label!r}")
        block = np.empty((m, n))
        for i in range(m):
            no, row = take(f"row {i + 1} of section '{name}'")
            fields = row.split()
            if len(fields) != n:
                raise ParseError(f"{source}:{no}: section '{name}' row {i + 1} has {len(fields)} fields, expected {n}")
            for j, field in enumerate(fields):
                try:
                    value = float(field)
                except ValueError:
                    raise ParseError(f"{source}:{no}: field {j + 1} {field!r} is not a number") from None
                if not math.isfinite(value):
                    raise ParseError(f"{source}:{no}: field {j + 1} {field!r} is not finite")
                block[i, j] = value
        blocks[name] = block
    if pos != len(lines):
        no, extra = lines[pos]
        raise ParseError(f"{source}:{no}: trailing content {extra!r}")
    return DCMatrix(_complex(blocks["std_re"], blocks["std_im"]), _complex(blocks["inf_re"], blocks["inf_im"]))


def _complex(re: np.ndarray, im: np.ndarray) -> np.ndarray:
    # assign the planes directly: ``re + 1j * im`` would turn -0.0 into 0.0
    out = np.empty(re.shape, dtype=complex)
    out.real = re
    out.imag = im
    return out


def save_dcmx(a: DCMatrix, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_dcmx(a))


def load_dcmx(path: str | os.PathLike) -> DCMatrix:
    with open(path, encoding="utf-8") as fh:
        return loads_dcmx(fh.read(), source=os.fspath(path))
