"""
Closed-form complexity models, spectro-computational (SC) throughput and
the Nyquist deadline calculator.

SC throughput is B(N) / T(N): useful bits per symbol over the cost of
computing the symbol. With the cost measured in instructions times a
fixed per-instruction time, an algorithm whose cost grows faster than N
sees its SC throughput vanish as N grows, while a fixed-L PDFT keeps it
constant.
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Iterable, List, Optional, Sequence

import pandas as pd

from scbench.config import model_defaults
from scbench.errors import InvalidArgumentError, UnsupportedSizeError
from scbench.kernels import Algorithm, parse_algorithm
from scbench.mapper import Constellation, bits_per_symbol
from scbench.transforms import is_power_of_two
from scbench.vofdm import SymbolSpec

logger = logging.getLogger(__name__)

# Relative tolerance under which a deadline margin counts as exactly zero
_MARGIN_RTOL = 1e-12

CURVE_COLUMNS = ["n", "bits", "instr_count", "model_seconds", "sc_bps"]


@dataclass(frozen=True)
class InstructionModel:
    """Arithmetic cost T(N) of one algorithm at one size"""
    algorithm: Algorithm
    n: int
    l_blocks: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "algorithm", parse_algorithm(self.algorithm))
        if self.n < 1:
            raise InvalidArgumentError(f"N must be >= 1, got N={self.n}")

        if self.algorithm is Algorithm.FFT:
            # N=1 has zero work, and the model must stay positive
            if self.n < 2 or not is_power_of_two(self.n):
                raise UnsupportedSizeError(f"FFT model requires N = 2^i with i >= 1, got N={self.n}")
        elif self.algorithm is Algorithm.PDFT:
            if self.l_blocks is None:
                raise InvalidArgumentError("PDFT model needs the number of blocks L")
            SymbolSpec.from_n(self.n, self.l_blocks)
        elif self.algorithm is Algorithm.PDFT_L2:
            if self.n % 2 != 0:
                raise UnsupportedSizeError(f"L=2 path requires an even N, got N={self.n}")


@dataclass(frozen=True)
class InstructionCount:
    mults: int
    adds: int
    # Cost figure used by sc_curve and nyquist_check
    instructions: int


def instruction_count(
    model: InstructionModel,
    fft_constant: int = model_defaults.FFT_INSTRUCTION_CONSTANT,
) -> InstructionCount:
    """
    Closed-form operation counts.

        DFT      N² mults, N² adds, N² instructions
        FFT      (N/2)·log2 N mults, N·log2 N adds, 5·N·log2 N instructions
        PDFT     L²·(N/L) mults and adds
        PDFT_L2  0 mults, N adds

    Mult (and add) counts equal what OpCounter records on a live run.
    """
    n = model.n
    algo = model.algorithm

    if algo is Algorithm.DFT:
        return InstructionCount(mults=n * n, adds=n * n, instructions=n * n)

    if algo is Algorithm.FFT:
        stages = n.bit_length() - 1
        return InstructionCount(
            mults=(n // 2) * stages,
            adds=n * stages,
            instructions=fft_constant * n * stages,
        )

    if algo is Algorithm.PDFT:
        L = model.l_blocks
        work = L * L * (n // L)
        return InstructionCount(mults=work, adds=work, instructions=work)

    return InstructionCount(mults=0, adds=n, instructions=n)


def sc_throughput(bits: int, cost_seconds: float) -> float:
    """SC throughput in bits per second"""
    if not cost_seconds > 0:
        raise InvalidArgumentError(f"Cost must be positive, got {cost_seconds}")
    return bits / cost_seconds


@dataclass(frozen=True)
class ScPoint:
    n: int
    bits: int
    instr_count: int
    model_seconds: float
    sc_bps: float
    mapper: str = ""


def power_of_two_range(n_min: int, n_max: int) -> List[int]:
    """All powers of two in [n_min, n_max]"""
    if n_min < 1 or n_max < n_min:
        raise InvalidArgumentError(f"Invalid range: n_min={n_min}, n_max={n_max}")
    values = []
    n = 1
    while n <= n_max:
        if n >= n_min:
            values.append(n)
        n *= 2
    if not values:
        raise InvalidArgumentError(f"No power of two in [{n_min}, {n_max}]")
    return values


def sc_curve(
    algorithm,
    n_values: Iterable[int],
    c: Constellation,
    l_blocks: Optional[int] = None,
    per_instruction_seconds: Optional[float] = None,
) -> List[ScPoint]:
    """
    Model SC throughput over a range of N.

    SC(N) = B(N) / (instructions(N) · per-instruction time)
    """
    per_instr = (
        model_defaults.PER_INSTRUCTION_SECONDS
        if per_instruction_seconds is None else per_instruction_seconds
    )
    if not per_instr > 0:
        raise InvalidArgumentError(f"Per-instruction time must be positive, got {per_instr}")

    points = []
    for n in n_values:
        count = instruction_count(InstructionModel(algorithm, int(n), l_blocks))
        bits = bits_per_symbol(int(n), c)
        seconds = count.instructions * per_instr
        points.append(ScPoint(
            n=int(n),
            bits=bits,
            instr_count=count.instructions,
            model_seconds=seconds,
            sc_bps=sc_throughput(bits, seconds),
            mapper=c.name,
        ))
    if not points:
        raise InvalidArgumentError("SC curve needs at least one N")
    logger.debug(f"SC curve: {len(points)} points for {parse_algorithm(algorithm).value} / {c.name}")
    return points


def curve_to_frame(points: Sequence[ScPoint], include_mapper: bool = False) -> pd.DataFrame:
    columns = CURVE_COLUMNS + (["mapper"] if include_mapper else [])
    return pd.DataFrame([asdict(p) for p in points], columns=columns)


@dataclass(frozen=True)
class NyquistSpec:
    """N subcarriers spaced delta_f Hz apart"""
    n: int
    delta_f: float

    def __post_init__(self):
        if self.n < 1:
            raise InvalidArgumentError(f"N must be >= 1, got N={self.n}")
        if not self.delta_f > 0 or math.isinf(self.delta_f):
            raise InvalidArgumentError(f"Subcarrier spacing must be positive, got {self.delta_f}")

    @property
    def bandwidth_hz(self) -> float:
        return self.n * self.delta_f

    @property
    def t_nyq(self) -> float:
        """Nyquist interval between IQ samples, 1/(N·Δf)"""
        return 1.0 / (self.n * self.delta_f)

    @property
    def t_sym(self) -> float:
        """Symbol duration, N·T_NYQ (= 1/Δf)"""
        return self.n * self.t_nyq


@dataclass(frozen=True)
class NyquistVerdict:
    spec: NyquistSpec
    instructions: int
    cost_seconds: float
    margin_seconds: float
    meets: bool

    def to_row(self) -> dict:
        return {
            "n": self.spec.n,
            "delta_f": self.spec.delta_f,
            "bandwidth_hz": self.spec.bandwidth_hz,
            "t_nyq": self.spec.t_nyq,
            "t_sym": self.spec.t_sym,
            "instr_count": self.instructions,
            "cost_seconds": self.cost_seconds,
            "margin_seconds": self.margin_seconds,
            "meets": self.meets,
        }


def nyquist_check(
    spec: NyquistSpec,
    model: InstructionModel,
    per_instruction_seconds: Optional[float] = None,
) -> NyquistVerdict:
    """
    Does the transform fit in one symbol duration?

    The symbol must be computed before the DAC needs it: the verdict is
    "meets" iff instructions · per-instruction time <= T_SYM.
    """
    per_instr = (
        model_defaults.PER_INSTRUCTION_SECONDS
        if per_instruction_seconds is None else per_instruction_seconds
    )
    if not per_instr > 0:
        raise InvalidArgumentError(f"Per-instruction time must be positive, got {per_instr}")
    if model.n != spec.n:
        raise InvalidArgumentError(f"Model N={model.n} does not match Nyquist spec N={spec.n}")

    count = instruction_count(model)
    cost = count.instructions * per_instr
    margin = spec.t_sym - cost
    if abs(margin) <= _MARGIN_RTOL * spec.t_sym:
        margin = 0.0

    return NyquistVerdict(
        spec=spec,
        instructions=count.instructions,
        cost_seconds=cost,
        margin_seconds=margin,
        meets=margin >= 0.0,
    )


def max_feasible_n(
    algorithm,
    delta_f: float,
    n_values: Iterable[int],
    per_instruction_seconds: Optional[float] = None,
    l_blocks: Optional[int] = None,
) -> Optional[int]:
    """
    Largest candidate N whose transform still meets the symbol deadline.

    T_SYM = 1/Δf does not grow with N while every transform's cost does,
    so past some N no algorithm keeps up. Returns None when no candidate
    is feasible.
    """
    best = None
    for n in sorted(int(v) for v in n_values):
        model = InstructionModel(algorithm, n, l_blocks)
        verdict = nyquist_check(NyquistSpec(n, delta_f), model, per_instruction_seconds)
        if verdict.meets:
            best = n
    logger.info(f"Largest feasible N for {parse_algorithm(algorithm).value} at Δf={delta_f}: {best}")
    return best
