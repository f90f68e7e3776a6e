"""Command-line front end: simulate, fit, crossover, place, energy.

Reports go to stdout as JSON by default; ``--out`` redirects them to a file
(written to a temp file and renamed, so failures never leave partial output).
``--format csv`` swaps the stdout report for plot-ready CSV.  Exit codes are
stable: 0 ok, 1 internal error, 2 bad input format, 3 insufficient data,
4 wrong profile kind, 5 exhaustive size limit exceeded.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from typing import Optional

from . import analysis, fitting, placement, profiles, simulate, traceio
from .errors import (
    ConfigError,
    DegenerateDesignError,
    DomainError,
    InputError,
    InsufficientDataError,
    MismatchError,
    OrderingError,
    ProcwattError,
    ProfileKindError,
    SizeLimitError,
    TraceFormatError,
    TraceParseError,
    TraceValidationError,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_NO_DATA = 3
EXIT_KIND = 4
EXIT_SIZE = 5

_EXIT_BY_ERROR = (
    (SizeLimitError, EXIT_SIZE),
    (ProfileKindError, EXIT_KIND),
    ((InsufficientDataError, DegenerateDesignError), EXIT_NO_DATA),
    (
        (
            TraceFormatError,
            TraceParseError,
            TraceValidationError,
            ConfigError,
            InputError,
            OrderingError,
            DomainError,
            MismatchError,
        ),
        EXIT_INPUT,
    ),
)


@dataclass(frozen=True)
class CommandOutcome:
    exit_code: int
    report_path: Optional[str] = None
    plot_csv_path: Optional[str] = None


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".procwatt-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit_report(args, json_doc: dict, csv_text: Optional[str]) -> Optional[str]:
    """Write the JSON report to --out, or print JSON/CSV to stdout."""
    text = json.dumps(json_doc, indent=2) + "\n"
    if args.out:
        _atomic_write(args.out, text)
        return args.out
    if args.format == "csv" and csv_text is not None:
        sys.stdout.write(csv_text)
    else:
        sys.stdout.write(text)
    return None


def _parse_columns(text: Optional[str]):
    if text is None:
        return None
    mapping = {}
    for part in text.split(","):
        if "=" not in part:
            raise InputError(
                f"--columns entries must look like canonical=actual, got {part!r}"
            )
        canonical, actual = part.split("=", 1)
        mapping[canonical.strip()] = actual.strip()
    return mapping


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _load_profile(path: str):
    return profiles.profile_from_dict(_load_json(path))


def _read_trace(args) -> traceio.TraceFile:
    return traceio.read_trace(args.trace, columns=_parse_columns(args.columns))


def cmd_fit(args) -> CommandOutcome:
    trace = _read_trace(args)
    if args.raw:
        points = fitting.points_from_samples(trace.samples)
    else:
        points = fitting.aggregate(trace.samples, bin_width=args.bin_width)
    linear = fitting.fit_linear(points)
    nroot = fitting.fit_nroot(points, n_grid=range(args.n_min, args.n_max + 1))
    selection = fitting.select_model(linear, nroot, tie_tolerance=args.tie_tolerance)

    buf = io.StringIO()
    buf.write("competition_pct,observed_w,fitted_linear_w,fitted_nroot_w\n")
    for pt in points:
        buf.write(
            f"{pt.competition!r},{pt.power!r},"
            f"{profiles.evaluate(linear.profile, pt.competition)!r},"
            f"{profiles.evaluate(nroot.profile, pt.competition)!r}\n"
        )
    csv_text = buf.getvalue()

    plot_path = None
    if args.plot_csv:
        _atomic_write(args.plot_csv, csv_text)
        plot_path = args.plot_csv
    report_path = _emit_report(args, fitting.selection_to_dict(selection), csv_text)
    return CommandOutcome(EXIT_OK, report_path, plot_path)


def cmd_crossover(args) -> CommandOutcome:
    lin = _load_profile(args.linear_profile)
    root = _load_profile(args.nroot_profile)
    if not isinstance(lin, profiles.LinearProfile):
        raise ProfileKindError("first profile must be linear")
    if not isinstance(root, profiles.NRootProfile):
        raise ProfileKindError("second profile must be n-root")
    result = analysis.find_crossovers(lin, root, p_max=args.p_max, cells=args.cells)

    buf = io.StringIO()
    buf.write("competition_pct,linear_w,nroot_w,difference_w\n")
    for i in range(1, args.cells + 1):
        p = args.p_max * i / args.cells
        w_lin = profiles.evaluate(lin, p)
        w_rt = profiles.evaluate(root, p)
        buf.write(f"{p!r},{w_lin!r},{w_rt!r},{w_lin - w_rt!r}\n")
    csv_text = buf.getvalue()

    plot_path = None
    if args.plot_csv:
        _atomic_write(args.plot_csv, csv_text)
        plot_path = args.plot_csv
    report_path = _emit_report(args, analysis.crossover_result_to_dict(result), csv_text)
    return CommandOutcome(EXIT_OK, report_path, plot_path)


def cmd_place(args) -> CommandOutcome:
    problem = placement.problem_from_dict(_load_json(args.problem))
    if args.strategy == "greedy":
        result = placement.place_greedy(problem)
    else:
        result = placement.place_exhaustive(
            problem, max_vnfs=args.max_vnfs, max_machines=args.max_machines
        )

    buf = io.StringIO()
    buf.write("slice_id,power_w\n")
    for slice_id, watts in result.per_slice_power.items():
        buf.write(f"{slice_id},{watts!r}\n")
    csv_text = buf.getvalue()

    report_path = _emit_report(args, placement.result_to_dict(result), csv_text)
    if report_path is not None:
        for slice_id, watts in result.per_slice_power.items():
            print(f"slice {slice_id}: {watts:.6f} W")
        print(f"total: {result.total_power:.6f} W")
    return CommandOutcome(EXIT_OK, report_path, None)


def _config_from_args(args) -> simulate.ProtocolConfig:
    if args.config:
        doc = _load_json(args.config)
        if not isinstance(doc, dict):
            raise ConfigError("config document must be a JSON object")
        allowed = {
            "baseline_load_q",
            "noise_sigma",
            "seed",
            "start_pct",
            "step_pct",
            "dwell_seconds",
            "sample_interval_seconds",
            "cycles",
        }
        unknown = set(doc) - allowed
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        try:
            config = simulate.ProtocolConfig(**doc)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc
    else:
        config = simulate.ProtocolConfig(
            baseline_load_q=args.q,
            noise_sigma=args.sigma,
            seed=args.seed if args.seed is not None else 0,
            start_pct=args.start,
            step_pct=args.step,
            dwell_seconds=args.dwell,
            sample_interval_seconds=args.interval,
            cycles=args.cycles,
        )
    if args.seed is not None and config.seed != args.seed:
        config = simulate.ProtocolConfig(
            baseline_load_q=config.baseline_load_q,
            noise_sigma=config.noise_sigma,
            seed=args.seed,
            start_pct=config.start_pct,
            step_pct=config.step_pct,
            dwell_seconds=config.dwell_seconds,
            sample_interval_seconds=config.sample_interval_seconds,
            cycles=config.cycles,
        )
    return config


def cmd_simulate(args) -> CommandOutcome:
    config = _config_from_args(args)
    truth = _load_profile(args.truth_profile)
    trace = simulate.generate_trace(config, truth)
    text = traceio.trace_to_string(trace)
    if args.out:
        _atomic_write(args.out, text)
        print(f"{len(trace.samples)} samples written to {args.out}")
        return CommandOutcome(EXIT_OK, args.out, None)
    sys.stdout.write(text)
    print(f"{len(trace.samples)} samples", file=sys.stderr)
    return CommandOutcome(EXIT_OK, None, None)


def cmd_energy(args) -> CommandOutcome:
    trace = _read_trace(args)
    pairs = [(s.t, s.power) for s in trace.samples]
    joules = profiles.integrate_energy(pairs)
    duration = pairs[-1][0] - pairs[0][0]
    mean_watts = joules / duration
    doc = {"energy_joules": joules, "mean_power_w": mean_watts}
    csv_text = f"energy_joules,mean_power_w\n{joules!r},{mean_watts!r}\n"
    report_path = _emit_report(args, doc, csv_text)
    if report_path is not None:
        print(f"energy: {joules:.6f} J over {duration:.3f} s, mean {mean_watts:.6f} W")
    return CommandOutcome(EXIT_OK, report_path, None)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the primary report/output to this path")
    common.add_argument(
        "--format",
        choices=("json", "csv"),
        default="json",
        help="stdout format when --out is not given",
    )
    common.add_argument("--seed", type=int, default=None, help="random seed override")

    parser = argparse.ArgumentParser(
        prog="procwatt",
        description="Process power profiles under CPU competition: "
        "simulate, fit, analyze crossovers, place VNFs, integrate energy.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", parents=[common], help="fit linear and n-root profiles to a trace")
    p_fit.add_argument("trace", help="trace CSV path")
    p_fit.add_argument("--bin-width", type=float, default=fitting.DEFAULT_BIN_WIDTH)
    p_fit.add_argument("--n-min", type=int, default=2)
    p_fit.add_argument("--n-max", type=int, default=8)
    p_fit.add_argument("--tie-tolerance", type=float, default=fitting.DEFAULT_TIE_TOLERANCE)
    p_fit.add_argument("--raw", action="store_true", help="fit raw samples instead of binned points")
    p_fit.add_argument("--columns", help="column remap, e.g. timestamp_s=time,power_w=watts")
    p_fit.add_argument("--plot-csv", help="also write plot-ready CSV to this path")
    p_fit.set_defaults(handler=cmd_fit)

    p_cross = sub.add_parser(
        "crossover", parents=[common], help="analyze where a linear and an n-root profile cross"
    )
    p_cross.add_argument("linear_profile", help="linear profile JSON path")
    p_cross.add_argument("nroot_profile", help="n-root profile JSON path")
    p_cross.add_argument("--p-max", type=float, default=100.0)
    p_cross.add_argument("--cells", type=int, default=analysis.DEFAULT_SCAN_CELLS)
    p_cross.add_argument("--plot-csv", help="also write plot-ready CSV to this path")
    p_cross.set_defaults(handler=cmd_crossover)

    p_place = sub.add_parser("place", parents=[common], help="solve a VNF placement problem")
    p_place.add_argument("problem", help="placement problem JSON path")
    p_place.add_argument("--strategy", choices=("greedy", "exhaustive"), default="greedy")
    p_place.add_argument("--max-vnfs", type=int, default=placement.MAX_EXHAUSTIVE_VNFS)
    p_place.add_argument("--max-machines", type=int, default=placement.MAX_EXHAUSTIVE_MACHINES)
    p_place.set_defaults(handler=cmd_place)

    p_sim = sub.add_parser("simulate", parents=[common], help="generate a synthetic trace")
    p_sim.add_argument("truth_profile", help="ground-truth profile JSON path")
    p_sim.add_argument("--config", help="protocol config JSON path (overrides the flags below)")
    p_sim.add_argument("--q", type=float, default=5.0, help="baseline process load, percent")
    p_sim.add_argument("--sigma", type=float, default=0.0, help="noise standard deviation, watts")
    p_sim.add_argument("--cycles", type=int, default=8)
    p_sim.add_argument("--step", type=float, default=5.0)
    p_sim.add_argument("--dwell", type=float, default=360.0)
    p_sim.add_argument("--interval", type=float, default=5.0)
    p_sim.add_argument("--start", type=float, default=0.0)
    p_sim.set_defaults(handler=cmd_simulate)

    p_energy = sub.add_parser("energy", parents=[common], help="integrate a trace's energy")
    p_energy.add_argument("trace", help="trace CSV path")
    p_energy.add_argument("--columns", help="column remap, e.g. timestamp_s=time,power_w=watts")
    p_energy.set_defaults(handler=cmd_energy)

    return parser


def _exit_code_for(exc: Exception) -> int:
    for types, code in _EXIT_BY_ERROR:
        if isinstance(exc, types):
            return code
    if isinstance(exc, (json.JSONDecodeError, OSError)):
        return EXIT_INPUT
    return EXIT_INTERNAL


def run(argv=None) -> CommandOutcome:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except Exception as exc:  # noqa: BLE001  (map every failure to a stable code)
        code = _exit_code_for(exc)
        if code == EXIT_INTERNAL and not isinstance(exc, ProcwattError):
            print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return CommandOutcome(code, None, None)


def main(argv=None) -> int:
    return run(argv).exit_code


if __name__ == "__main__":
    raise SystemExit(main())
