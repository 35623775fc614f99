"""
Vector-OFDM block arrangement and the Parameterized DFT (PDFT).

An N-sample symbol is split into L vector blocks of 𝓜 = N/L samples;
block l, offset m lives at flat index l·𝓜 + m. The PDFT replaces the
N-point transform by 𝓜 independent L-point transforms taken across the
blocks at a fixed offset m:

    y[q𝓜+m] = (1/L) Σ_{l=0..L-1} x[l𝓜+m]·e^{+j2πql/L}     (inverse)
    x[l𝓜+m] =       Σ_{q=0..L-1} y[q𝓜+m]·e^{-j2πql/L}     (forward)

q and l run over 0..L-1 (an upper index of L would address a
nonexistent block). 1/L sits on the inverse only, so the round trip is
the identity; `normalize=False` gives the literal unnormalized loop.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np

from scbench.errors import InvalidArgumentError, InvalidSpecError
from scbench.transforms import (
    FORWARD,
    INVERSE,
    OpCounter,
    SampleBuffer,
    SampleLike,
    roots_of_unity,
    as_buffer,
)

logger = logging.getLogger(__name__)


class Direction(str, Enum):
    FORWARD = "forward"
    INVERSE = "inverse"


@dataclass(frozen=True)
class SymbolSpec:
    """V-OFDM numerology: N points split into L blocks of block_len samples"""
    n: int
    l_blocks: int
    block_len: int = field(default=0)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSpecError(f"N must be >= 1, got N={self.n}")
        if not 1 <= self.l_blocks <= self.n:
            raise InvalidSpecError(f"L must satisfy 1 <= L <= N, got L={self.l_blocks}, N={self.n}")
        if self.n % self.l_blocks != 0:
            raise InvalidSpecError(
                f"N must be divisible by L (N/L samples per block), got N={self.n}, L={self.l_blocks}"
            )
        expected = self.n // self.l_blocks
        if self.block_len == 0:
            object.__setattr__(self, "block_len", expected)
        elif self.block_len != expected:
            raise InvalidSpecError(
                f"block_len must equal N/L={expected}, got {self.block_len}"
            )

    @classmethod
    def from_n(cls, n: int, l_blocks: int) -> "SymbolSpec":
        return cls(n=n, l_blocks=l_blocks)


@dataclass
class VectorBlocks:
    """L ordered blocks of block_len samples (row l is vector block l)"""
    spec: SymbolSpec
    blocks: np.ndarray

    def __post_init__(self):
        shape = (self.spec.l_blocks, self.spec.block_len)
        if self.blocks.shape != shape:
            raise InvalidSpecError(f"Blocks must have shape {shape}, got {self.blocks.shape}")


def _check_length(x: SampleBuffer, spec: SymbolSpec):
    if len(x) != spec.n:
        raise InvalidSpecError(f"Buffer length {len(x)} does not match spec N={spec.n}")


def to_blocks(samples: SampleLike, spec: SymbolSpec) -> VectorBlocks:
    """blocks[l][m] = samples[l·𝓜 + m]"""
    x = as_buffer(samples)
    _check_length(x, spec)
    return VectorBlocks(spec=spec, blocks=x.reshape(spec.l_blocks, spec.block_len).copy())


def from_blocks(blocks: VectorBlocks) -> SampleBuffer:
    """Flatten vector blocks back into the transmitting sequence"""
    return blocks.blocks.reshape(-1).copy()


def _pdft_offsets(
    xs: List[complex],
    ys: List[complex],
    offsets: Sequence[int],
    spec: SymbolSpec,
    w: Sequence[complex],
) -> OpCounter:
    """
    L-point transforms for the given intra-block offsets.

    Each output y[q𝓜+m] depends only on x[·𝓜+m], so any partition or
    ordering of the offsets yields the same values.
    """
    L, M = spec.l_blocks, spec.block_len
    for m in offsets:
        for q in range(L):
            acc = 0j
            for l in range(L):
                acc += xs[l * M + m] * w[(q * l) % L]
            ys[q * M + m] = acc
    counted = OpCounter()
    counted.add(mults=L * L * len(offsets), adds=L * L * len(offsets))
    return counted


def _resolve_schedule(schedule: Optional[Sequence[int]], spec: SymbolSpec) -> List[int]:
    if schedule is None:
        return list(range(spec.block_len))
    order = [int(m) for m in schedule]
    if sorted(order) != list(range(spec.block_len)):
        raise InvalidArgumentError(
            f"schedule must be a permutation of 0..{spec.block_len - 1}"
        )
    return order


def _pdft(
    samples: SampleLike,
    spec: SymbolSpec,
    sign: int,
    counter: Optional[OpCounter],
    workers: int,
    schedule: Optional[Sequence[int]],
) -> List[complex]:
    x = as_buffer(samples)
    _check_length(x, spec)
    if workers < 1:
        raise InvalidArgumentError(f"workers must be >= 1, got {workers}")
    counter = counter if counter is not None else OpCounter()

    xs = x.tolist()
    ys = [0j] * spec.n
    w = roots_of_unity(spec.l_blocks, sign)
    order = _resolve_schedule(schedule, spec)

    if workers == 1 or len(order) < 2:
        counter.merge(_pdft_offsets(xs, ys, order, spec, w))
        return ys

    # Disjoint offset chunks write disjoint output slots; counters merge after join
    chunks = [order[i::workers] for i in range(workers) if order[i::workers]]
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        partials = list(pool.map(lambda c: _pdft_offsets(xs, ys, c, spec, w), chunks))
    for part in partials:
        counter.merge(part)
    logger.debug(f"PDFT over {len(chunks)} tasks (N={spec.n}, L={spec.l_blocks})")
    return ys


def pdft_inverse(
    freq: SampleLike,
    spec: SymbolSpec,
    counter: Optional[OpCounter] = None,
    normalize: bool = True,
    workers: int = 1,
    schedule: Optional[Sequence[int]] = None,
) -> SampleBuffer:
    """
    Parameterized inverse DFT (frequency → time).

    Records exactly L²·𝓜 complex multiplications for every L, including
    the trivial twiddles ±1 that the loop still executes.

    Args:
        freq: N frequency-domain samples
        spec: Symbol numerology (N, L)
        counter: Receives the operation counts
        normalize: Apply 1/L (False: literal unnormalized loop)
        workers: Threads sharing the 𝓜 per-offset transforms
        schedule: Processing order of the offsets (a permutation)
    """
    ys = _pdft(freq, spec, INVERSE, counter, workers, schedule)
    out = np.array(ys, dtype=np.complex128)
    if normalize:
        out *= 1.0 / spec.l_blocks
    return out


def pdft_forward(
    time: SampleLike,
    spec: SymbolSpec,
    counter: Optional[OpCounter] = None,
    workers: int = 1,
    schedule: Optional[Sequence[int]] = None,
) -> SampleBuffer:
    """Parameterized forward DFT (time → frequency), inverse of pdft_inverse"""
    xs = _pdft(time, spec, FORWARD, counter, workers, schedule)
    return np.array(xs, dtype=np.complex128)


def pdft_l2(
    samples: SampleLike,
    direction: Direction = Direction.INVERSE,
    counter: Optional[OpCounter] = None,
    normalize: bool = True,
) -> SampleBuffer:
    """
    Multiplierless PDFT for L = 2.

    With two blocks the twiddles collapse to e^0 = 1 and e^{jπ} = -1:
        y_0 = x_0 + x_1,  y_1 = x_0 - x_1
    so the whole symbol costs N complex additions and no multiplications.
    The direction only matters for normalization (1/2 on the inverse).

    Raises:
        InvalidSpecError: odd N
    """
    x = as_buffer(samples)
    n = len(x)
    if n % 2 != 0:
        raise InvalidSpecError(f"L=2 path requires an even N, got N={n}")
    direction = Direction(direction)
    counter = counter if counter is not None else OpCounter()

    half = n // 2
    xs = x.tolist()
    x0, x1 = xs[:half], xs[half:]
    y = [a + b for a, b in zip(x0, x1)]
    y.extend([a - b for a, b in zip(x0, x1)])
    counter.add(adds=n)

    out = np.array(y, dtype=np.complex128)
    if direction is Direction.INVERSE and normalize:
        out *= 0.5
    return out
