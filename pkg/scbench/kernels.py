"""
Kernel Registry
Named transmitter-side (inverse) transforms that the CLI and the
benchmark harness look up by algorithm name.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional

from scbench.errors import InvalidConfigError, ScBenchError
from scbench.transforms import (
    OpCounter,
    SampleBuffer,
    dft_inverse,
    fft_inverse,
    is_power_of_two,
)
from scbench.vofdm import Direction, SymbolSpec, pdft_inverse, pdft_l2

logger = logging.getLogger(__name__)


class Algorithm(str, Enum):
    DFT = "dft"
    FFT = "fft"
    PDFT = "pdft"
    PDFT_L2 = "pdft_l2"


ALGORITHM_NAMES = [a.value for a in Algorithm]


def parse_algorithm(name) -> Algorithm:
    if isinstance(name, Algorithm):
        return name
    try:
        return Algorithm(str(name).strip().lower().replace("-", "_"))
    except ValueError:
        raise InvalidConfigError(
            f"Unknown algorithm '{name}'; choose one of {ALGORITHM_NAMES}"
        ) from None


# (buffer, l_blocks, counter, normalize) -> transformed buffer
KernelFunc = Callable[[SampleBuffer, Optional[int], OpCounter, bool], SampleBuffer]


@dataclass
class Kernel:
    """A transform the harness can run on one symbol."""
    algorithm: Algorithm
    description: str
    func: KernelFunc
    uses_blocks: bool = False

    def check_size(self, n: int, l_blocks: Optional[int] = None):
        """
        Raise InvalidConfigError if (n, l_blocks) cannot run on this kernel.
        """
        if n < 1:
            raise InvalidConfigError(f"N must be >= 1, got N={n}")
        if self.algorithm is Algorithm.FFT and not is_power_of_two(n):
            raise InvalidConfigError(f"FFT requires N = 2^i, got N={n}")
        if self.algorithm is Algorithm.PDFT_L2 and n % 2 != 0:
            raise InvalidConfigError(f"L=2 path requires an even N, got N={n}")
        if self.uses_blocks:
            if l_blocks is None:
                raise InvalidConfigError("PDFT needs the number of blocks L")
            try:
                SymbolSpec.from_n(n, l_blocks)
            except ScBenchError as e:
                raise InvalidConfigError(str(e)) from e

    def run(
        self,
        samples: SampleBuffer,
        counter: OpCounter,
        l_blocks: Optional[int] = None,
        normalize: bool = False,
    ) -> SampleBuffer:
        return self.func(samples, l_blocks, counter, normalize)


def _run_pdft(samples, l_blocks, counter, normalize):
    spec = SymbolSpec.from_n(len(samples), l_blocks)
    return pdft_inverse(samples, spec, counter=counter, normalize=normalize)


class KernelRegistry:
    """Registry of benchmarkable transforms."""

    def __init__(self):
        self.kernels: Dict[Algorithm, Kernel] = {}
        self._register_default_kernels()

    def _register_default_kernels(self):
        self.register(Kernel(
            algorithm=Algorithm.DFT,
            description="Reference N-point IDFT, N^2 multiplications",
            func=lambda x, l, c, norm: dft_inverse(x, counter=c, normalize=norm),
        ))
        self.register(Kernel(
            algorithm=Algorithm.FFT,
            description="Radix-2 DIT inverse FFT, N = 2^i",
            func=lambda x, l, c, norm: fft_inverse(x, counter=c, normalize=norm),
        ))
        self.register(Kernel(
            algorithm=Algorithm.PDFT,
            description="Parameterized IDFT over L vector blocks, L^2*(N/L) multiplications",
            func=_run_pdft,
            uses_blocks=True,
        ))
        self.register(Kernel(
            algorithm=Algorithm.PDFT_L2,
            description="Multiplierless L=2 parameterized IDFT, N additions",
            func=lambda x, l, c, norm: pdft_l2(x, Direction.INVERSE, counter=c, normalize=norm),
        ))

    def register(self, kernel: Kernel):
        self.kernels[kernel.algorithm] = kernel
        logger.debug(f"Registered kernel: {kernel.algorithm.value}")

    def get(self, algorithm) -> Kernel:
        algo = algorithm if isinstance(algorithm, Algorithm) else parse_algorithm(algorithm)
        kernel = self.kernels.get(algo)
        if kernel is None:
            raise InvalidConfigError(
                f"Kernel '{algo.value}' not registered. Available kernels: {self.get_names()}"
            )
        return kernel

    def get_names(self) -> List[str]:
        return [a.value for a in self.kernels]

    def get_descriptions(self) -> str:
        return "\n".join(f"{a.value}: {k.description}" for a, k in self.kernels.items())


# Global kernel registry
kernel_registry = KernelRegistry()
