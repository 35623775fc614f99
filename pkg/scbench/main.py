#!/usr/bin/env python3
"""
scbench - Main Orchestrator

Usage:
    python -m scbench.main transform    - Run one transform on a sample file
    python -m scbench.main bench        - Measure one (algorithm, N, L) point
    python -m scbench.main sweep        - Measure a list of points / a preset table
    python -m scbench.main sc-curve     - Model SC throughput over N
    python -m scbench.main nyquist      - Check a transform against the symbol deadline
    python -m scbench.main instr-count  - Closed-form instruction counts
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd

from scbench.bench import BenchConfig, sweep, table2_configs, table3_configs, write_results
from scbench.config import bench_defaults, load_config_file, model_defaults
from scbench.errors import InvalidConfigError, ScBenchError
from scbench.kernels import ALGORITHM_NAMES, Algorithm, kernel_registry, parse_algorithm
from scbench.mapper import CONSTELLATIONS, get_constellation
from scbench.samples_io import FORMATS, load_samples, save_samples
from scbench.sc_model import (
    InstructionModel,
    NyquistSpec,
    curve_to_frame,
    instruction_count,
    max_feasible_n,
    nyquist_check,
    power_of_two_range,
    sc_curve,
)
from scbench.transforms import OpCounter, dft_forward, dft_inverse, fft_forward, fft_inverse
from scbench.vofdm import Direction, SymbolSpec, pdft_forward, pdft_inverse, pdft_l2

logger = logging.getLogger("scbench")

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def banner(title: str):
    print("=" * 60, file=sys.stderr)
    print(title, file=sys.stderr)
    print("=" * 60, file=sys.stderr)


def emit_frame(df: pd.DataFrame, output: Optional[str]):
    """Write a CSV table to the output file, or to stdout"""
    if output is None:
        df.to_csv(sys.stdout, index=False)
        return
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False)
    logger.info(f"Saved {len(df)} rows to {path}")


def _require_l(args) -> int:
    if args.l is None:
        raise InvalidConfigError("--l is required for --algo pdft")
    return args.l


def cmd_transform(args) -> int:
    """Transform a sample file; op counts go to stderr"""
    x = load_samples(args.input, args.format)
    algo = parse_algorithm(args.algo)
    direction = Direction(args.direction)
    normalize = not args.unnormalized
    inverse = direction is Direction.INVERSE
    counter = OpCounter()

    banner(f"Transform: {algo.value} {direction.value}, N={len(x)}")

    if algo is Algorithm.DFT:
        out = dft_inverse(x, counter, normalize) if inverse else dft_forward(x, counter)
    elif algo is Algorithm.FFT:
        out = fft_inverse(x, counter, normalize) if inverse else fft_forward(x, counter)
    elif algo is Algorithm.PDFT:
        spec = SymbolSpec.from_n(len(x), _require_l(args))
        if inverse:
            out = pdft_inverse(x, spec, counter, normalize=normalize, workers=args.parallel)
        else:
            out = pdft_forward(x, spec, counter, workers=args.parallel)
    else:
        out = pdft_l2(x, direction, counter, normalize=normalize)

    save_samples(out, args.output, args.format)
    print(f"complex_mults={counter.complex_mults} complex_adds={counter.complex_adds}", file=sys.stderr)
    return 0


def _stat_overrides(args) -> Dict:
    return {
        "constellation": args.mapper,
        "confidence_level": args.confidence,
        "max_rel_error": args.max_rel_error,
        "warmup_discard": args.warmup,
        "warmup_seconds": args.warmup_seconds,
        "min_repetitions": args.min_reps,
        "max_repetitions": args.max_reps,
        "prng_seed": args.seed,
    }


def cmd_bench(args) -> int:
    config = BenchConfig(algorithm=args.algo, n=args.n, l_blocks=args.l, **_stat_overrides(args))
    banner(f"Benchmark: {config.algorithm.value}, N={config.n}, L={config.l_blocks}")
    results = sweep([config], show_progress=False)
    write_results(results, args.output)
    return 0


def cmd_sweep(args) -> int:
    overrides = _stat_overrides(args)
    if args.preset == "table2":
        configs = table2_configs(**overrides)
    elif args.preset == "table3":
        configs = table3_configs(with_fft=args.with_fft, **overrides)
    else:
        if args.algo is None or not args.n_list:
            raise InvalidConfigError("sweep needs --preset, or --algo with --n-list")
        configs = [
            BenchConfig(algorithm=args.algo, n=n, l_blocks=args.l, **overrides)
            for n in args.n_list
        ]

    banner(f"Sweep: {len(configs)} configurations")
    results = sweep(configs)
    write_results(results, args.output)
    return 0


def _block_sizes(algo: Algorithm, n_values: List[int], args) -> List[int]:
    """Drop sizes the block count does not divide"""
    if not kernel_registry.get(algo).uses_blocks:
        return n_values
    l_blocks = _require_l(args)
    return [n for n in n_values if n % l_blocks == 0]


def _n_values(args) -> List[int]:
    if args.n_list:
        return list(args.n_list)
    return _block_sizes(parse_algorithm(args.algo), power_of_two_range(args.n_min, args.n_max), args)


def cmd_sc_curve(args) -> int:
    names = args.mapper or [bench_defaults.CONSTELLATION]
    if any(name.lower() == "all" for name in names):
        mappers = list(CONSTELLATIONS)
    else:
        mappers = [get_constellation(name) for name in names]

    n_values = _n_values(args)
    points = []
    for c in mappers:
        points.extend(sc_curve(args.algo, n_values, c, args.l, args.per_instruction))

    emit_frame(curve_to_frame(points, include_mapper=len(mappers) > 1), args.output)
    return 0


def cmd_nyquist(args) -> int:
    if args.find_max:
        algo = parse_algorithm(args.algo)
        candidates = _block_sizes(algo, power_of_two_range(2, args.n), args)
        best = max_feasible_n(algo, args.delta_f, candidates, args.per_instruction, args.l)
        row = {
            "algorithm": algo.value,
            "delta_f": args.delta_f,
            "per_instruction_seconds": args.per_instruction,
            "max_feasible_n": best if best is not None else "",
        }
        emit_frame(pd.DataFrame([row]), args.output)
        return 0

    spec = NyquistSpec(args.n, args.delta_f)
    verdict = nyquist_check(spec, InstructionModel(args.algo, args.n, args.l), args.per_instruction)
    emit_frame(pd.DataFrame([verdict.to_row()]), args.output)
    return 0


def cmd_instr_count(args) -> int:
    if args.n_list:
        rows = []
        for n in args.n_list:
            count = instruction_count(InstructionModel(args.algo, n, args.l))
            rows.append({"n": n, "mults": count.mults, "adds": count.adds, "instructions": count.instructions})
        emit_frame(pd.DataFrame(rows, columns=["n", "mults", "adds", "instructions"]), args.output)
        return 0

    if args.n is None:
        raise InvalidConfigError("instr-count needs --n or --n-list")
    count = instruction_count(InstructionModel(args.algo, args.n, args.l))
    print(count.instructions)
    return 0


def _add_stat_args(p: argparse.ArgumentParser):
    p.add_argument("--mapper", type=str, default=bench_defaults.CONSTELLATION,
                   help=f"Constellation (default: {bench_defaults.CONSTELLATION})")
    p.add_argument("--seed", type=int, default=bench_defaults.PRNG_SEED,
                   help="MT19937-64 seed for the input bits")
    p.add_argument("--confidence", type=float, default=bench_defaults.CONFIDENCE_LEVEL,
                   help="Confidence level of the stopping rule")
    p.add_argument("--max-rel-error", type=float, default=bench_defaults.MAX_REL_ERROR,
                   help="Target half-width / mean")
    p.add_argument("--warmup", type=int, default=bench_defaults.WARMUP_DISCARD,
                   help="Warm-up samples to discard")
    p.add_argument("--warmup-seconds", type=float, default=bench_defaults.WARMUP_SECONDS,
                   help="Wall-time cap of the warm-up stage")
    p.add_argument("--min-reps", type=int, default=bench_defaults.MIN_REPETITIONS,
                   help="Samples required before the stopping rule is checked")
    p.add_argument("--max-reps", type=int, default=bench_defaults.MAX_REPETITIONS,
                   help="Hard cap on timed repetitions")
    p.add_argument("--output", type=str, default=None, help="Results CSV (default: stdout)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="scbench",
        description="Transform algorithms, SC-throughput models and benchmarks for OFDM / V-OFDM",
        epilog="algorithms:\n" + kernel_registry.get_descriptions(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--config", type=str, default=None,
                        help="File of `key = value` lines overriding subcommand defaults")
    parser.add_argument("--verbose", action="store_true", help="Debug logging")
    subparsers = parser.add_subparsers(dest="command", required=True)

    # transform
    p = subparsers.add_parser("transform", help="Transform a sample file")
    p.add_argument("--algo", choices=ALGORITHM_NAMES, required=True)
    p.add_argument("--direction", choices=[d.value for d in Direction], default=Direction.INVERSE.value)
    p.add_argument("--l", type=int, default=None, help="Number of vector blocks (pdft)")
    p.add_argument("--input", type=str, required=True, help="Sample file to read")
    p.add_argument("--output", type=str, default=None, help="Sample file to write (default: stdout)")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--unnormalized", action="store_true", help="Skip the 1/N (1/L) inverse scale")
    p.add_argument("--parallel", type=int, default=1, help="Threads for the pdft block transforms")
    p.set_defaults(handler=cmd_transform)

    # bench
    p = subparsers.add_parser("bench", help="Measure one configuration")
    p.add_argument("--algo", choices=ALGORITHM_NAMES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, default=None)
    _add_stat_args(p)
    p.set_defaults(handler=cmd_bench)

    # sweep
    p = subparsers.add_parser("sweep", help="Measure a preset table or a list of sizes")
    p.add_argument("--preset", choices=["table2", "table3"], default=None)
    p.add_argument("--with-fft", action="store_true", help="table3: add FFT at 2^17..2^19")
    p.add_argument("--algo", choices=ALGORITHM_NAMES, default=None)
    p.add_argument("--n-list", type=int, nargs="+", default=None)
    p.add_argument("--l", type=int, default=None)
    _add_stat_args(p)
    p.set_defaults(handler=cmd_sweep)

    # sc-curve
    p = subparsers.add_parser("sc-curve", help="Model SC throughput over N")
    p.add_argument("--algo", choices=ALGORITHM_NAMES, required=True)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--mapper", type=str, nargs="+", default=None,
                   help="One or more constellations, or `all`")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=2 ** 20)
    p.add_argument("--n-list", type=int, nargs="+", default=None)
    p.add_argument("--per-instruction", type=float, default=model_defaults.PER_INSTRUCTION_SECONDS,
                   help="Seconds per instruction")
    p.add_argument("--output", type=str, default=None)
    p.set_defaults(handler=cmd_sc_curve)

    # nyquist
    p = subparsers.add_parser("nyquist", help="Check the symbol deadline")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta-f", type=float, required=True, help="Subcarrier spacing in Hz")
    p.add_argument("--algo", choices=ALGORITHM_NAMES, default=Algorithm.FFT.value)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--per-instruction", type=float, default=model_defaults.PER_INSTRUCTION_SECONDS)
    p.add_argument("--find-max", action="store_true",
                   help="Report the largest feasible power-of-two N up to --n")
    p.add_argument("--output", type=str, default=None)
    p.set_defaults(handler=cmd_nyquist)

    # instr-count
    p = subparsers.add_parser("instr-count", help="Closed-form instruction counts")
    p.add_argument("--algo", choices=ALGORITHM_NAMES, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--n-list", type=int, nargs="+", default=None)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--output", type=str, default=None)
    p.set_defaults(handler=cmd_instr_count)

    return parser, subparsers


def _coerce(action: argparse.Action, key: str, raw: str):
    """Convert a config-file string the way the flag would be parsed"""
    if action.nargs == 0:
        value = raw.lower()
        if value in _TRUE:
            return True
        if value in _FALSE:
            return False
        raise InvalidConfigError(f"Config key '{key}' expects a boolean, got '{raw}'")

    convert = action.type or str
    parts = raw.replace(",", " ").split() if action.nargs in ("+", "*") else [raw]
    try:
        values = [convert(part) for part in parts]
    except (TypeError, ValueError):
        raise InvalidConfigError(f"Config key '{key}' has an invalid value '{raw}'") from None
    if action.choices is not None:
        for v in values:
            if v not in action.choices:
                raise InvalidConfigError(f"Config key '{key}' must be one of {list(action.choices)}, got '{v}'")
    return values if action.nargs in ("+", "*") else values[0]


def apply_config_file(path: str, subparser: argparse.ArgumentParser):
    """Install config-file values as subcommand defaults (flags still win)"""
    actions = {
        a.dest: a for a in subparser._actions
        if a.dest not in ("help", "handler") and a.option_strings
    }
    raw = load_config_file(path, actions.keys())
    defaults = {key: _coerce(actions[key], key, value) for key, value in raw.items()}
    for key in defaults:
        # a config value satisfies a required flag
        actions[key].required = False
    subparser.set_defaults(**defaults)


def main(argv: Optional[List[str]] = None) -> int:
    parser, subparsers = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)

    # --config is known before the subcommand flags are checked
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config", default=None)
    pre.add_argument("--verbose", action="store_true")
    pre_args, _ = pre.parse_known_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if pre_args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        if pre_args.config:
            command = next((a for a in argv if a in subparsers.choices), None)
            if command is None:
                raise InvalidConfigError("--config needs a subcommand")
            apply_config_file(pre_args.config, subparsers.choices[command])
        args = parser.parse_args(argv)
        return args.handler(args)
    except ScBenchError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"File error: {e}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        print("Interrupted", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
