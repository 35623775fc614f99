# scbench Configuration
import os
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict

from dotenv import load_dotenv, dotenv_values

from scbench.errors import InvalidConfigError

logger = logging.getLogger(__name__)

# Load .env file from package directory
env_path = Path(__file__).parent / ".env"
load_dotenv(env_path)


@dataclass
class BenchDefaults:
    """Defaults of the measurement harness"""
    # Stopping rule: relative error below 5% at 95% confidence
    CONFIDENCE_LEVEL: float = float(os.getenv("SCBENCH_CONFIDENCE", "0.95"))
    MAX_REL_ERROR: float = float(os.getenv("SCBENCH_MAX_REL_ERROR", "0.05"))

    # Transient stage
    WARMUP_DISCARD: int = int(os.getenv("SCBENCH_WARMUP", "500"))
    WARMUP_SECONDS: float = float(os.getenv("SCBENCH_WARMUP_SECONDS", "1.0"))

    # Repetition bounds
    MIN_REPETITIONS: int = int(os.getenv("SCBENCH_MIN_REPS", "10"))
    MAX_REPETITIONS: int = int(os.getenv("SCBENCH_MAX_REPS", "70000"))

    # Input generation
    PRNG_SEED: int = int(os.getenv("SCBENCH_SEED", "1973272912"))
    CONSTELLATION: str = os.getenv("SCBENCH_CONSTELLATION", "BPSK")


@dataclass
class ModelDefaults:
    """Defaults of the closed-form complexity models"""
    # 1 ps per instruction, as in the asymptotic FFT throughput curve
    PER_INSTRUCTION_SECONDS: float = float(os.getenv("SCBENCH_PER_INSTRUCTION_SECONDS", "1e-12"))
    # Cooley-Tukey total arithmetic instructions: 5 N log2 N
    FFT_INSTRUCTION_CONSTANT: int = 5


def load_config_file(path: str, allowed_keys) -> Dict[str, str]:
    """
    Load a `key = value` file for the CLI.

    Keys mirror the long flag names; dashes and underscores are
    interchangeable. Unknown keys are rejected.

    Args:
        path: Path to the config file
        allowed_keys: Iterable of accepted keys (argparse dest names)

    Returns:
        Dict mapping dest names to raw string values
    """
    file_path = Path(path)
    if not file_path.exists():
        raise InvalidConfigError(f"Config file not found: {file_path}")

    raw = dotenv_values(file_path)
    allowed = set(allowed_keys)

    values: Dict[str, str] = {}
    for key, value in raw.items():
        dest = key.strip().replace("-", "_")
        if dest not in allowed:
            raise InvalidConfigError(
                f"Unknown config key '{key}' in {file_path}; accepted keys: {sorted(allowed)}"
            )
        if value is None:
            raise InvalidConfigError(f"Config key '{key}' in {file_path} has no value")
        values[dest] = value.strip()

    logger.info(f"Loaded {len(values)} settings from {file_path}")
    return values


# Global config instances
bench_defaults = BenchDefaults()
model_defaults = ModelDefaults()
