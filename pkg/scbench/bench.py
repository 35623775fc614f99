"""
Benchmark harness: runtime of one transform with a sequential stopping
rule, and the SC throughput derived from it.

Each sample times one whole-symbol transform over a fixed input drawn
from MT19937-64. After a warm-up stage the harness keeps repeating
until the Student-t confidence half-width falls below max_rel_error of
the mean, or until max_repetitions samples exist.
"""

import logging
import math
import sys
import time
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Union

import pandas as pd
from scipy import stats
from tqdm import tqdm

from scbench.config import bench_defaults
from scbench.errors import InvalidConfigError, ScBenchError
from scbench.kernels import Algorithm, kernel_registry, parse_algorithm
from scbench.mapper import BPSK, Constellation, bits_per_symbol, get_constellation, map_bits
from scbench.mt64 import MT64
from scbench.sc_model import sc_throughput
from scbench.transforms import OpCounter, SampleBuffer

logger = logging.getLogger(__name__)

Clock = Callable[[], float]

RESULT_COLUMNS = [
    "n", "algorithm", "l_blocks", "runtime_us", "throughput_mbps",
    "delta_us", "variance", "samples", "stopped_by",
]

TABLE2_EXPONENTS = range(1, 19)
TABLE3_SIZES = [100000, 200000, 300000, 400000, 500000, 600000]
TABLE3_BLOCKS = [2, 3, 4, 5]
TABLE3_FFT_EXPONENTS = [17, 18, 19]


class StopReason(str, Enum):
    CONVERGED = "converged"
    MAX_REPS = "max_reps"


def effective_n(n: int, l_blocks: Optional[int]) -> int:
    """Largest N' <= N divisible by L (N reduced by N mod L)"""
    if l_blocks is None or l_blocks <= 1:
        return n
    reduced = n - (n % l_blocks)
    if reduced < 1:
        raise InvalidConfigError(f"N={n} leaves no complete block for L={l_blocks}")
    return reduced


@dataclass
class BenchConfig:
    """One (algorithm, N, L) measurement point plus its stopping rule"""
    algorithm: Union[Algorithm, str]
    n: int
    l_blocks: Optional[int] = None
    constellation: str = bench_defaults.CONSTELLATION
    confidence_level: float = bench_defaults.CONFIDENCE_LEVEL
    max_rel_error: float = bench_defaults.MAX_REL_ERROR
    warmup_discard: int = bench_defaults.WARMUP_DISCARD
    warmup_seconds: float = bench_defaults.WARMUP_SECONDS
    min_repetitions: int = bench_defaults.MIN_REPETITIONS
    max_repetitions: int = bench_defaults.MAX_REPETITIONS
    prng_seed: int = bench_defaults.PRNG_SEED
    normalize: bool = False
    # N before the divisibility reduction, when one was applied
    requested_n: Optional[int] = field(default=None)

    def __post_init__(self):
        self.algorithm = parse_algorithm(self.algorithm)
        if self.algorithm is Algorithm.PDFT_L2:
            if self.l_blocks not in (None, 2):
                raise InvalidConfigError(f"pdft_l2 always uses L=2, got L={self.l_blocks}")
            self.l_blocks = 2
        elif self.algorithm is not Algorithm.PDFT:
            self.l_blocks = None
        if self.requested_n is None:
            self.requested_n = self.n
        self.validate()

    def validate(self):
        """
        Raise InvalidConfigError on any out-of-range setting.

        PDFT sizes are checked after the N mod L reduction; run_bench
        itself requires N divisible by L.
        """
        if not 0.0 < self.max_rel_error < 1.0:
            raise InvalidConfigError(f"max_rel_error must be in (0, 1), got {self.max_rel_error}")
        if not 0.5 < self.confidence_level < 1.0:
            raise InvalidConfigError(f"confidence_level must be in (0.5, 1), got {self.confidence_level}")
        if self.max_repetitions < 30:
            raise InvalidConfigError(f"max_repetitions must be >= 30, got {self.max_repetitions}")
        if not 2 <= self.min_repetitions <= self.max_repetitions:
            raise InvalidConfigError(
                f"min_repetitions must be in [2, max_repetitions], got {self.min_repetitions}"
            )
        if self.warmup_discard < 0 or self.warmup_seconds < 0:
            raise InvalidConfigError("Warm-up settings must be non-negative")
        try:
            get_constellation(self.constellation)
        except ScBenchError as e:
            raise InvalidConfigError(str(e)) from e

        n = effective_n(self.n, self.l_blocks) if self.l_blocks else self.n
        kernel_registry.get(self.algorithm).check_size(n, self.l_blocks)

    @property
    def mapper(self) -> Constellation:
        return get_constellation(self.constellation)


@dataclass
class BenchResult:
    algorithm: Algorithm
    n: int
    requested_n: int
    l_blocks: Optional[int]
    mapper: str
    mean_runtime_seconds: float
    half_width_delta_seconds: float
    # Sample variance (ddof=1) in s²
    variance: float
    sample_count: int
    throughput_bps: float
    stopped_by: StopReason
    confidence_level: float
    resolution_warning: bool = False
    complex_mults: int = 0
    complex_adds: int = 0

    @property
    def runtime_us(self) -> float:
        return self.mean_runtime_seconds * 1e6

    @property
    def delta_us(self) -> float:
        return self.half_width_delta_seconds * 1e6

    @property
    def variance_us2(self) -> float:
        return self.variance * 1e12

    @property
    def throughput_mbps(self) -> float:
        return self.throughput_bps / 1e6

    def to_row(self) -> dict:
        return {
            "n": self.n,
            "algorithm": self.algorithm.value,
            "l_blocks": self.l_blocks if self.l_blocks is not None else "",
            "runtime_us": self.runtime_us,
            "throughput_mbps": self.throughput_mbps,
            "delta_us": self.delta_us,
            "variance": self.variance_us2,
            "samples": self.sample_count,
            "stopped_by": self.stopped_by.value,
        }


def generate_input(n: int, seed: int = bench_defaults.PRNG_SEED, c: Constellation = BPSK) -> SampleBuffer:
    """
    Deterministic transform input: N·log2 M bits from MT19937-64, mapped
    through the constellation, so the symbol carries exactly B(N) bits.
    """
    if n < 1:
        raise InvalidConfigError(f"N must be >= 1, got N={n}")
    rng = MT64(seed)
    bits = rng.random_bits(bits_per_symbol(n, c))
    return map_bits(bits, c)


def _half_width(std: float, count: int, confidence_level: float) -> float:
    quantile = stats.t.ppf((1.0 + confidence_level) / 2.0, count - 1)
    return float(quantile * std / math.sqrt(count))


def run_bench(
    config: BenchConfig,
    clock: Optional[Clock] = None,
    clock_resolution: Optional[float] = None,
) -> BenchResult:
    """
    Measure one configuration.

    Args:
        config: Validated benchmark configuration
        clock: Zero-argument callable returning seconds (default time.perf_counter)
        clock_resolution: Timer resolution in seconds (default: perf_counter's)

    Returns:
        BenchResult with mean, half-width, variance and SC throughput
    """
    clock = clock or time.perf_counter
    if clock_resolution is None:
        clock_resolution = time.get_clock_info("perf_counter").resolution

    kernel = kernel_registry.get(config.algorithm)
    kernel.check_size(config.n, config.l_blocks)
    mapper = config.mapper
    x = generate_input(config.n, config.prng_seed, mapper)

    counter = OpCounter()

    def sample() -> float:
        counter.reset()
        start = clock()
        kernel.run(x, counter, config.l_blocks, config.normalize)
        return clock() - start

    # Transient stage: bounded by sample count and by wall time
    warm_elapsed = 0.0
    warm_count = 0
    while warm_count < config.warmup_discard and warm_elapsed <= config.warmup_seconds:
        warm_elapsed += sample()
        warm_count += 1
    logger.debug(f"Discarded {warm_count} warm-up samples ({warm_elapsed:.3f}s)")

    samples: List[float] = []
    # Welford running mean / sum of squared deviations
    mean = 0.0
    m2 = 0.0
    stopped_by = StopReason.MAX_REPS
    while len(samples) < config.max_repetitions:
        d = sample()
        samples.append(d)
        count = len(samples)
        delta = d - mean
        mean += delta / count
        m2 += delta * (d - mean)

        if count >= config.min_repetitions:
            std = math.sqrt(max(m2, 0.0) / (count - 1))
            if _half_width(std, count, config.confidence_level) <= config.max_rel_error * mean:
                stopped_by = StopReason.CONVERGED
                break

    count = len(samples)
    mean_runtime = mean
    variance = max(m2, 0.0) / (count - 1)
    half = _half_width(math.sqrt(variance), count, config.confidence_level)

    if stopped_by is StopReason.MAX_REPS:
        logger.warning(
            f"{config.algorithm.value} N={config.n}: stopped at {count} repetitions "
            f"without reaching {config.max_rel_error:.0%} relative error"
        )
    resolution_warning = mean_runtime <= 0.0 or clock_resolution > mean_runtime
    if resolution_warning:
        logger.warning(
            f"Timer resolution {clock_resolution:.3g}s is coarser than the mean runtime {mean_runtime:.3g}s"
        )

    # Every sample below one clock tick: no runtime to divide by
    throughput = math.nan
    if mean_runtime > 0.0:
        throughput = sc_throughput(bits_per_symbol(config.n, mapper), mean_runtime)

    result = BenchResult(
        algorithm=config.algorithm,
        n=config.n,
        requested_n=config.requested_n,
        l_blocks=config.l_blocks,
        mapper=mapper.name,
        mean_runtime_seconds=mean_runtime,
        half_width_delta_seconds=half,
        variance=variance,
        sample_count=count,
        throughput_bps=throughput,
        stopped_by=stopped_by,
        confidence_level=config.confidence_level,
        resolution_warning=resolution_warning,
        complex_mults=counter.complex_mults,
        complex_adds=counter.complex_adds,
    )
    logger.info(
        f"{config.algorithm.value} N={config.n} L={config.l_blocks}: "
        f"{result.runtime_us:.2f} us ± {result.delta_us:.2f}, {result.sample_count} samples, {stopped_by.value}"
    )
    return result


def sweep(
    configs: Sequence[BenchConfig],
    clock: Optional[Clock] = None,
    clock_resolution: Optional[float] = None,
    show_progress: bool = True,
) -> List[BenchResult]:
    """
    Run configurations one after another, in order.

    N is reduced by N mod L for block transforms before running; the
    result records both the requested and the effective N.
    """
    if not configs:
        raise InvalidConfigError("Sweep needs at least one configuration")

    results = []
    for config in tqdm(configs, desc="Sweep", file=sys.stderr, disable=not show_progress):
        n = effective_n(config.n, config.l_blocks)
        if n != config.n:
            logger.info(f"L={config.l_blocks}: N={config.n} reduced to {n}")
            config = replace(config, n=n, requested_n=config.n)
        results.append(run_bench(config, clock=clock, clock_resolution=clock_resolution))
    return results


def table2_configs(**overrides) -> List[BenchConfig]:
    """Power-of-two sweep N = 2^1..2^18, multiplierless PDFT and FFT"""
    configs = []
    for i in TABLE2_EXPONENTS:
        n = 2 ** i
        configs.append(BenchConfig(algorithm=Algorithm.PDFT_L2, n=n, **overrides))
        configs.append(BenchConfig(algorithm=Algorithm.FFT, n=n, **overrides))
    return configs


def table3_configs(with_fft: bool = False, **overrides) -> List[BenchConfig]:
    """
    Non-power-of-two sweep N = 1e5..6e5 for L = 2..5.

    with_fft appends the FFT at the surrounding powers of two 2^17..2^19.
    """
    configs = []
    for n in TABLE3_SIZES:
        for l_blocks in TABLE3_BLOCKS:
            algo = Algorithm.PDFT_L2 if l_blocks == 2 else Algorithm.PDFT
            configs.append(BenchConfig(algorithm=algo, n=n, l_blocks=l_blocks, **overrides))
    if with_fft:
        for i in TABLE3_FFT_EXPONENTS:
            configs.append(BenchConfig(algorithm=Algorithm.FFT, n=2 ** i, **overrides))
    return configs


def results_to_frame(results: Sequence[BenchResult]) -> pd.DataFrame:
    return pd.DataFrame([r.to_row() for r in results], columns=RESULT_COLUMNS)


def write_results(results: Sequence[BenchResult], path: Optional[Union[str, Path]] = None):
    """Write the results CSV to path, or to stdout when path is None"""
    df = results_to_frame(results)
    if path is None:
        df.to_csv(sys.stdout, index=False)
        return
    output_path = Path(path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(output_path, index=False)
    logger.info(f"Saved {len(df)} rows to {output_path}")
