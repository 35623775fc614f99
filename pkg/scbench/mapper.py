"""
Constellation mapping and the bits-per-symbol accounting B(N).

Square Gray-coded constellations with unit average energy. A point's
integer label is read MSB-first from its bits; the first half of the
bits picks the in-phase level and the second half the quadrature level
(BPSK has only the in-phase bit). Label bits of 0 map to the positive
amplitude, so BPSK is 0 → +1, 1 → -1 and QPSK 00 → (1+j)/√2.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from scbench.errors import InvalidArgumentError
from scbench.transforms import SampleBuffer, SampleLike, as_buffer

logger = logging.getLogger(__name__)


def _gray_pam(bits_per_axis: int) -> np.ndarray:
    """Amplitude of each Gray label on one axis (label 0 → largest positive level)"""
    levels = 1 << bits_per_axis
    labels = np.arange(levels)
    # Gray → binary: b = g ^ (g >> 1) ^ (g >> 2) ...
    binary = labels.copy()
    shift = labels >> 1
    while np.any(shift):
        binary ^= shift
        shift >>= 1
    return (levels - 1) - 2 * binary.astype(np.float64)


def _build_points(size_m: int) -> np.ndarray:
    k = int(math.log2(size_m))
    if k == 1:
        return np.array([1.0 + 0j, -1.0 + 0j])

    k_axis = k // 2
    pam = _gray_pam(k_axis)
    labels = np.arange(size_m)
    i_amp = pam[labels >> k_axis]
    q_amp = pam[labels & ((1 << k_axis) - 1)]
    points = i_amp + 1j * q_amp
    # Average energy of a square M-QAM grid is 2(M-1)/3
    return points / np.sqrt(2.0 * (size_m - 1) / 3.0)


@dataclass(frozen=True)
class Constellation:
    """A signal mapper of size_m points carrying bits_per_point bits each"""
    name: str
    size_m: int
    points: np.ndarray = field(repr=False, compare=False)

    @property
    def bits_per_point(self) -> int:
        return self.size_m.bit_length() - 1


def _make(name: str, size_m: int) -> Constellation:
    return Constellation(name=name, size_m=size_m, points=_build_points(size_m))


BPSK = _make("BPSK", 2)
QPSK = _make("QPSK", 4)
QAM16 = _make("16-QAM", 16)
QAM64 = _make("64-QAM", 64)
QAM256 = _make("256-QAM", 256)

CONSTELLATIONS: Tuple[Constellation, ...] = (BPSK, QPSK, QAM16, QAM64, QAM256)

_BY_KEY: Dict[str, Constellation] = {
    c.name.replace("-", "").lower(): c for c in CONSTELLATIONS
}
_BY_KEY["4qam"] = QPSK


def get_constellation(name: str) -> Constellation:
    """Look up a constellation by name ("BPSK", "qpsk", "16-QAM", "64qam", ...)"""
    key = str(name).strip().replace("-", "").replace("_", "").lower()
    if key not in _BY_KEY:
        raise InvalidArgumentError(
            f"Unknown constellation '{name}'; choose one of {[c.name for c in CONSTELLATIONS]}"
        )
    return _BY_KEY[key]


def bits_per_symbol(n: int, c: Constellation) -> int:
    """B(N) = N·log2 M useful bits per symbol"""
    if n < 1:
        raise InvalidArgumentError(f"N must be >= 1, got N={n}")
    return n * c.bits_per_point


def _as_bits(bits) -> np.ndarray:
    arr = np.asarray(bits).reshape(-1)
    if arr.size and not np.all((arr == 0) | (arr == 1)):
        raise InvalidArgumentError("Bits must be 0 or 1")
    return arr.astype(np.int64)


def map_bits(bits, c: Constellation) -> SampleBuffer:
    """
    Map a bit sequence onto constellation points.

    Raises:
        InvalidArgumentError: bit count not a non-zero multiple of bits_per_point
    """
    arr = _as_bits(bits)
    k = c.bits_per_point
    if arr.size == 0 or arr.size % k != 0:
        raise InvalidArgumentError(
            f"{c.name} needs a non-zero multiple of {k} bits, got {arr.size}"
        )
    labels = arr.reshape(-1, k).dot(1 << np.arange(k)[::-1])
    return c.points[labels].astype(np.complex128)


def demap_samples(samples: SampleLike, c: Constellation) -> np.ndarray:
    """Hard nearest-point decision, returning the bits as an int8 array"""
    x = as_buffer(samples)
    d2 = np.abs(x[:, None] - c.points[None, :]) ** 2
    labels = d2.argmin(axis=1)
    k = c.bits_per_point
    bits = (labels[:, None] >> np.arange(k)[::-1]) & 1
    return bits.reshape(-1).astype(np.int8)
