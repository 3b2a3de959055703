"""Flat binary snapshots of grid fields.

Layout: a little-endian header (dims int32, points int32, half_width float64)
followed by the samples as interleaved real/imag float64 in row-major order.
"""

import logging
import os
import tempfile
from pathlib import Path
from typing import Union

import numpy as np

from ..core.errors import ParameterError
from ..lorentz.grid import GridFunction, GridSpec

logger = logging.getLogger(__name__)

HEADER_DTYPE = np.dtype([("dims", "<i4"), ("points", "<i4"), ("half_width", "<f8")])
PAYLOAD_DTYPE = np.dtype("<c16")

PathLike = Union[str, Path]


def snapshot_bytes(f: GridFunction) -> bytes:
    f.require_finite()
    header = np.array([(f.grid.n, f.grid.points, f.grid.half_width)], dtype=HEADER_DTYPE)
    payload = np.ascontiguousarray(f.values, dtype=PAYLOAD_DTYPE)
    return header.tobytes() + payload.tobytes()


def save_snapshot(f: GridFunction, path: PathLike) -> Path:
    """Write ``f`` atomically: temp file in the same directory, then ``os.replace``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".snapshot-")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(snapshot_bytes(f))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    logger.debug("Snapshot written to %s", path)
    return path


def load_snapshot(path: PathLike) -> GridFunction:
    """Read a snapshot back as a complex field.

    Raises:
        ParameterError: If the payload length does not match the header
    """
    data = Path(path).read_bytes()
    if len(data) < HEADER_DTYPE.itemsize:
        raise ParameterError(f"{path}: truncated snapshot header", tag="snapshot")
    if (len(data) - HEADER_DTYPE.itemsize) % PAYLOAD_DTYPE.itemsize:
        raise ParameterError(f"{path}: payload is not a whole number of samples", tag="snapshot")
    header = np.frombuffer(data, dtype=HEADER_DTYPE, count=1)[0]
    grid = GridSpec(int(header["dims"]), int(header["points"]), float(header["half_width"]))
    payload = np.frombuffer(data, dtype=PAYLOAD_DTYPE, offset=HEADER_DTYPE.itemsize)
    if payload.size != grid.total_points:
        raise ParameterError(
            f"{path}: payload holds {payload.size} samples, header needs {grid.total_points}", tag="snapshot"
        )
    return GridFunction(grid, payload.astype(np.complex128).reshape(grid.shape))
