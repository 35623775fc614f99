"""
Sample file loading and saving.

Formats:
    text   one sample per line, "re<TAB>im" in decimal
    f64le  interleaved little-endian float64 pairs (re, im, re, im, ...)
"""

import logging
import sys
from pathlib import Path
from typing import Optional, Union

import numpy as np

from scbench.errors import InvalidArgumentError, SampleFormatError
from scbench.transforms import SampleBuffer, as_buffer

logger = logging.getLogger(__name__)

FORMATS = ["text", "f64le"]

PathLike = Union[str, Path]


def _check_format(fmt: str):
    if fmt not in FORMATS:
        raise SampleFormatError(f"Unknown sample format '{fmt}'; choose one of {FORMATS}")


def load_samples(path: PathLike, fmt: str = "text") -> SampleBuffer:
    """
    Load a sample file.

    Args:
        path: File to read
        fmt: "text" or "f64le"

    Returns:
        SampleBuffer (1-D complex128)
    """
    _check_format(fmt)
    file_path = Path(path)
    if not file_path.exists():
        raise FileNotFoundError(f"Sample file not found: {file_path}")

    if fmt == "text":
        try:
            data = np.loadtxt(file_path, dtype=np.float64, ndmin=2)
        except ValueError as e:
            raise SampleFormatError(f"{file_path}: {e}") from e
        if data.size == 0:
            raise SampleFormatError(f"{file_path}: no samples")
        if data.shape[1] != 2:
            raise SampleFormatError(
                f"{file_path}: expected 2 columns (re, im) per line, got {data.shape[1]}"
            )
        values = data[:, 0] + 1j * data[:, 1]
    else:
        raw = file_path.read_bytes()
        if len(raw) == 0 or len(raw) % 16 != 0:
            raise SampleFormatError(
                f"{file_path}: f64le size must be a non-zero multiple of 16 bytes, got {len(raw)}"
            )
        pairs = np.frombuffer(raw, dtype="<f8").reshape(-1, 2)
        values = pairs[:, 0] + 1j * pairs[:, 1]

    try:
        buf = as_buffer(values)
    except InvalidArgumentError as e:
        raise SampleFormatError(f"{file_path}: {e}") from e
    logger.info(f"Loaded {len(buf)} samples from {file_path}")
    return buf


def save_samples(samples: SampleBuffer, path: Optional[PathLike] = None, fmt: str = "text"):
    """Write samples to path, or to stdout when path is None"""
    _check_format(fmt)
    x = np.asarray(samples, dtype=np.complex128)

    if fmt == "text":
        table = np.column_stack([x.real, x.imag])
        if path is None:
            np.savetxt(sys.stdout, table, fmt="%.17g", delimiter="\t")
            return
        np.savetxt(Path(path), table, fmt="%.17g", delimiter="\t")
    else:
        raw = np.column_stack([x.real, x.imag]).astype("<f8").tobytes()
        if path is None:
            sys.stdout.buffer.write(raw)
            sys.stdout.flush()
            return
        Path(path).write_bytes(raw)
    logger.info(f"Saved {len(x)} samples to {path}")
