"""
Frequency-time transforms on flat sample buffers.

Reference DFT/IDFT and an iterative radix-2 decimation-in-time FFT,
each reporting its arithmetic work to a caller-owned OpCounter.

Conventions:
    - forward kernel e^{-j2πkt/N}, inverse kernel e^{+j2πkt/N}
    - 1/N is applied on the inverse only (forward∘inverse = identity)
    - twiddle tables are setup work and are never counted
    - the 1/N normalization scale is never counted

Kernels are scalar loops over Python complex numbers: one counted
operation is one executed operation, so measured runtimes follow the
operation counts.
"""

import cmath
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np

from scbench.errors import InvalidArgumentError, UnsupportedSizeError

logger = logging.getLogger(__name__)

# A SampleBuffer is a 1-D complex128 array; each element is one ComplexSample
SampleBuffer = np.ndarray
SampleLike = Union[SampleBuffer, Iterable[complex]]

FORWARD = -1
INVERSE = +1


@dataclass
class OpCounter:
    """
    Complex arithmetic performed by a transform.

    Twiddle precomputation and normalization scaling are not counted:
    they are setup / bookkeeping, not per-symbol work.
    """
    complex_mults: int = 0
    complex_adds: int = 0

    def add(self, mults: int = 0, adds: int = 0):
        if mults < 0 or adds < 0:
            raise InvalidArgumentError("OpCounter increments must be non-negative")
        self.complex_mults += mults
        self.complex_adds += adds

    def merge(self, other: "OpCounter"):
        """Fold another counter (e.g. a per-task counter) into this one"""
        self.add(other.complex_mults, other.complex_adds)

    def reset(self):
        self.complex_mults = 0
        self.complex_adds = 0

    def snapshot(self) -> Tuple[int, int]:
        return self.complex_mults, self.complex_adds

    @property
    def total(self) -> int:
        return self.complex_mults + self.complex_adds


def as_buffer(values: SampleLike) -> SampleBuffer:
    """
    Validate and convert input to a SampleBuffer.

    Raises:
        InvalidArgumentError: empty, non 1-D, or non-finite input
    """
    try:
        buf = np.asarray(values, dtype=np.complex128)
    except (TypeError, ValueError) as e:
        raise InvalidArgumentError(f"Samples must be complex numbers: {e}") from e

    if buf.ndim != 1:
        raise InvalidArgumentError(f"Samples must be a flat sequence, got shape {buf.shape}")
    if buf.size == 0:
        raise InvalidArgumentError("Transform input must hold at least one sample (N >= 1)")
    if not np.all(np.isfinite(buf)):
        raise InvalidArgumentError("Samples must be finite (no NaN/Inf)")
    return buf


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@lru_cache(maxsize=64)
def roots_of_unity(n: int, sign: int) -> Tuple[complex, ...]:
    """The n-th roots of unity e^{sign·j2πr/n}, r = 0..n-1"""
    return tuple(cmath.exp(sign * 2j * cmath.pi * r / n) for r in range(n))


@lru_cache(maxsize=32)
def _bit_reversal(n: int) -> Tuple[int, ...]:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return tuple(rev.tolist())


def _dft(xs: List[complex], sign: int, counter: OpCounter) -> List[complex]:
    n = len(xs)
    w = roots_of_unity(n, sign)
    out = []
    for k in range(n):
        acc = 0j
        for t in range(n):
            acc += xs[t] * w[(k * t) % n]
        out.append(acc)
    counter.add(mults=n * n, adds=n * n)
    return out


def _fft_radix2(xs: List[complex], sign: int, counter: OpCounter) -> List[complex]:
    """
    Iterative in-place radix-2 DIT.

    Stage s merges pairs of 2^s-point transforms (E_k, O_k) with the
    butterflies X_k = E_k + w^k·O_k, X_{k+h} = E_k - w^k·O_k. Every stage
    does N/2 twiddle multiplications (w^0 included) and N additions.
    """
    n = len(xs)
    rev = _bit_reversal(n)
    a = [xs[i] for i in rev]
    w = roots_of_unity(n, sign)

    half = 1
    while half < n:
        step = n // (2 * half)
        for start in range(0, n, 2 * half):
            for k in range(half):
                i = start + k
                j = i + half
                t = a[j] * w[k * step]
                u = a[i]
                a[i] = u + t
                a[j] = u - t
        counter.add(mults=n // 2, adds=n)
        half *= 2
    return a


def _finish(values: List[complex], scale: Optional[float]) -> SampleBuffer:
    out = np.array(values, dtype=np.complex128)
    if scale is not None:
        out *= scale
    return out


def dft_forward(samples: SampleLike, counter: Optional[OpCounter] = None) -> SampleBuffer:
    """
    Reference N-point DFT: X_k = Σ_t Y_t·e^{-j2πkt/N}.

    Records exactly N² complex multiplications (and N² additions).
    """
    x = as_buffer(samples)
    counter = counter if counter is not None else OpCounter()
    return _finish(_dft(x.tolist(), FORWARD, counter), None)


def dft_inverse(
    samples: SampleLike,
    counter: Optional[OpCounter] = None,
    normalize: bool = True,
) -> SampleBuffer:
    """Reference N-point IDFT: Y_t = (1/N)·Σ_k X_k·e^{+j2πkt/N}"""
    x = as_buffer(samples)
    counter = counter if counter is not None else OpCounter()
    n = len(x)
    return _finish(_dft(x.tolist(), INVERSE, counter), 1.0 / n if normalize else None)


def _check_fft_size(n: int):
    if not is_power_of_two(n):
        raise UnsupportedSizeError(f"FFT requires N = 2^i, got N={n}")


def fft_forward(samples: SampleLike, counter: Optional[OpCounter] = None) -> SampleBuffer:
    """
    Radix-2 FFT, same map as dft_forward.

    Records exactly (N/2)·log2 N complex multiplications and N·log2 N
    additions.

    Raises:
        UnsupportedSizeError: N is not a power of two
    """
    x = as_buffer(samples)
    _check_fft_size(len(x))
    counter = counter if counter is not None else OpCounter()
    return _finish(_fft_radix2(x.tolist(), FORWARD, counter), None)


def fft_inverse(
    samples: SampleLike,
    counter: Optional[OpCounter] = None,
    normalize: bool = True,
) -> SampleBuffer:
    """Radix-2 inverse FFT through the same butterflies with the conjugate kernel"""
    x = as_buffer(samples)
    n = len(x)
    _check_fft_size(n)
    counter = counter if counter is not None else OpCounter()
    return _finish(_fft_radix2(x.tolist(), INVERSE, counter), 1.0 / n if normalize else None)
