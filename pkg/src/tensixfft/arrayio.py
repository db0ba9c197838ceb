"""Binary 2D array file format.

Layout, all little-endian: a header of three u32 words (rows, cols,
planes=2), then the real plane row-major as FP32, then the imaginary
plane. Used by the CLI to accept external 2D inputs and to emit transform
results.
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import InvalidDimensionError
from .fftcore import ComplexBuffer

_HEADER = struct.Struct("<III")
PLANES = 2


def write_array2d(path, buf: ComplexBuffer, rows: int, cols: int) -> None:
    if buf.n != rows * cols:
        raise InvalidDimensionError(f"buffer of {buf.n} elements is not {rows}x{cols}")
    re = np.ascontiguousarray(buf.re.reshape(rows, cols), dtype="<f4")
    im = np.ascontiguousarray(buf.im.reshape(rows, cols), dtype="<f4")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(rows, cols, PLANES))
        fh.write(re.tobytes())
        fh.write(im.tobytes())


def read_array2d(path):
    """Returns (buffer, rows, cols)."""
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
        if len(header) != _HEADER.size:
            raise InvalidDimensionError(f"{path}: truncated header")
        rows, cols, planes = _HEADER.unpack(header)
        if planes != PLANES:
            raise InvalidDimensionError(f"{path}: expected {PLANES} planes, found {planes}")
        count = rows * cols
        payload = np.frombuffer(fh.read(), dtype="<f4")
    if payload.size != PLANES * count:
        raise InvalidDimensionError(
            f"{path}: expected {PLANES * count} FP32 values, found {payload.size}"
        )
    re = payload[:count].reshape(rows, cols).astype(np.float32)
    im = payload[count:].reshape(rows, cols).astype(np.float32)
    return ComplexBuffer(re, im), rows, cols
