"""Command-line front end: run simulations and scans, emit CSV or JSON.

All angles on the command line are degrees, including the initial coin
phase ``--eta-deg``. Exit codes: 0 on success, 2 for usage errors, 3 for
I/O failures, 4 when a computation exceeds its lattice or size budget.
"""

from __future__ import annotations

import argparse
import io as stringio
import sys
from dataclasses import dataclass

from .errors import CapacityError, InvalidParameterError
from .io import (
    write_region_json,
    write_scan_json,
    write_trajectory_csv,
    write_trajectory_json,
)
from .scan import (
    GridAxis,
    ScanConfig,
    game_trajectory,
    run_scan,
    scan_region_grid,
)
from .walk import CoinParams, GameSequence

__all__ = ["CliConfig", "parse_cli", "main"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_CAPACITY = 4

_DEFAULTS = {
    "steps": 240,
    "max_period": 6,
    "epsilon": 1e-9,
    "max_cells": 1024,
    "workers": 1,
}


@dataclass(frozen=True)
class CliConfig:
    """Validated invocation: subcommand plus every resolved option."""

    command: str
    coin_a: CoinParams
    coin_b: CoinParams
    eta_deg: float
    steps: int
    max_period: int
    epsilon: float
    fmt: str
    out: str | None
    sequence: GameSequence | None = None
    axes: tuple[GridAxis, ...] = ()
    max_cells: int = 1024
    workers: int = 1
    verdict_each_step: bool = False


def _coin_triple(text: str) -> CoinParams:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"expected three comma-separated angles in degrees, got {text!r}"
        )
    try:
        values = [float(part) for part in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"angles must be numbers, got {text!r}") from None
    try:
        return CoinParams(*values)
    except InvalidParameterError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _sequence(text: str) -> GameSequence:
    try:
        return GameSequence(text)
    except InvalidParameterError:
        raise argparse.ArgumentTypeError(
            f"sequence must be a non-empty string over 'A' and 'B', got {text!r}"
        ) from None


def _axis(text: str) -> GridAxis:
    try:
        parameter, spec = text.split("=", 1)
        start_s, stop_s, count_s = spec.split(":")
        axis = GridAxis.linspace(parameter, float(start_s), float(stop_s), int(count_s))
    except (ValueError, InvalidParameterError) as exc:
        raise argparse.ArgumentTypeError(
            f"axis must look like PARAM=START:STOP:COUNT, got {text!r} ({exc})"
        ) from None
    return axis


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _format_name(text: str) -> str:
    if text not in ("csv", "json"):
        raise argparse.ArgumentTypeError(f"format must be csv or json, got {text!r}")
    return text


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--coin-a", type=_coin_triple, default=None, metavar="A,B,G",
                        help="coin A angles alpha,beta,gamma in degrees")
    parser.add_argument("--coin-b", type=_coin_triple, default=None, metavar="A,B,G",
                        help="coin B angles alpha,beta,gamma in degrees")
    parser.add_argument("--eta-deg", type=float, default=None, metavar="V",
                        help="initial coin phase eta in degrees")
    parser.add_argument("--steps", type=_positive_int, default=None, metavar="N",
                        help=f"number of elementary steps (default {_DEFAULTS['steps']})")
    parser.add_argument("--epsilon", type=float, default=None, metavar="E",
                        help="draw threshold for verdicts (default 1e-9)")
    parser.add_argument("--out", default=None, metavar="PATH",
                        help="output path (default: stdout)")
    parser.add_argument("--format", dest="fmt", choices=("csv", "json"), default=None,
                        help="output format")
    parser.add_argument("--config", default=None, metavar="PATH",
                        help="flat key=value file mirroring the flags; flags win")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qparrondo",
        description="Coin-driven walk games: simulate sequences, scan for "
                    "paradox points, sweep coin-parameter regions.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", help="run one game and emit its trajectory")
    _add_common_arguments(simulate)
    simulate.add_argument("--sequence", type=_sequence, default=None, metavar="S",
                          help="coin schedule such as ABB (applied left to right)")

    scan = commands.add_parser("scan", help="classify every sequence up to a period")
    _add_common_arguments(scan)
    scan.add_argument("--max-period", type=_positive_int, default=None, metavar="K",
                      help=f"largest sequence period (default {_DEFAULTS['max_period']})")
    scan.add_argument("--verdict-each-step", action="store_true", default=None,
                      help="require the verdict condition at every elementary step "
                           "instead of at whole-period boundaries")

    regions = commands.add_parser("regions", help="sweep coin parameters over a grid")
    _add_common_arguments(regions)
    regions.add_argument("--max-period", type=_positive_int, default=None, metavar="K")
    regions.add_argument("--verdict-each-step", action="store_true", default=None)
    regions.add_argument("--axis", type=_axis, action="append", default=None,
                         metavar="P=S:E:N",
                         help="swept parameter, e.g. beta_a=10:30:5; repeat for 2-D")
    regions.add_argument("--max-cells", type=_positive_int, default=None, metavar="N",
                         help=f"grid cell budget (default {_DEFAULTS['max_cells']})")
    regions.add_argument("--workers", type=_positive_int, default=None, metavar="N",
                         help="parallel processes for grid cells (default 1)")

    return parser


def _read_config_file(path: str) -> dict[str, list[str]]:
    entries: dict[str, list[str]] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise InvalidParameterError(
                    f"{path}:{lineno}: expected key=value, got {line!r}"
                )
            key, value = line.split("=", 1)
            entries.setdefault(key.strip(), []).append(value.strip())
    return entries


_CONFIG_PARSERS = {
    "coin-a": ("coin_a", _coin_triple),
    "coin-b": ("coin_b", _coin_triple),
    "eta-deg": ("eta_deg", float),
    "sequence": ("sequence", _sequence),
    "steps": ("steps", _positive_int),
    "max-period": ("max_period", _positive_int),
    "epsilon": ("epsilon", float),
    "out": ("out", str),
    "format": ("fmt", _format_name),
    "axis": ("axis", _axis),
    "max-cells": ("max_cells", _positive_int),
    "workers": ("workers", _positive_int),
    "verdict-each-step": ("verdict_each_step", lambda s: s.lower() in ("1", "true", "yes")),
}


def _merge_config_file(parser: argparse.ArgumentParser, ns: argparse.Namespace) -> None:
    if ns.config is None:
        return
    try:
        entries = _read_config_file(ns.config)
    except OSError as exc:
        parser.error(f"cannot read --config {ns.config}: {exc}")
    except InvalidParameterError as exc:
        parser.error(f"--config: {exc}")
    for key, raw_values in entries.items():
        if key not in _CONFIG_PARSERS:
            parser.error(f"--config {ns.config}: unknown key {key!r}")
        dest, converter = _CONFIG_PARSERS[key]
        if not hasattr(ns, dest) or getattr(ns, dest) is not None:
            continue  # flag given on the command line, or key not for this subcommand
        try:
            values = [converter(raw) for raw in raw_values]
        except (argparse.ArgumentTypeError, ValueError) as exc:
            parser.error(f"--config {ns.config}: invalid value for {key}: {exc}")
        setattr(ns, dest, values if key == "axis" else values[-1])


def parse_cli(argv: list[str] | None = None) -> CliConfig:
    """Parse and validate an invocation; exits with a usage error otherwise."""
    parser = build_parser()
    ns = parser.parse_args(argv)
    _merge_config_file(parser, ns)

    for flag, dest in (("--coin-a", "coin_a"), ("--coin-b", "coin_b"), ("--eta-deg", "eta_deg")):
        if getattr(ns, dest) is None:
            parser.error(f"{flag} is required (flag or config file)")

    fmt = ns.fmt
    if ns.command == "simulate":
        if ns.sequence is None:
            parser.error("--sequence is required (flag or config file)")
        fmt = fmt or "csv"
    else:
        fmt = fmt or "json"
        if fmt != "json":
            parser.error(f"--format {fmt} is not available for {ns.command}; use json")

    axes: tuple[GridAxis, ...] = ()
    if ns.command == "regions":
        if not getattr(ns, "axis", None):
            parser.error("--axis is required for regions (flag or config file)")
        axes = tuple(ns.axis)

    return CliConfig(
        command=ns.command,
        coin_a=ns.coin_a,
        coin_b=ns.coin_b,
        eta_deg=ns.eta_deg,
        steps=ns.steps if ns.steps is not None else _DEFAULTS["steps"],
        max_period=(getattr(ns, "max_period", None) or _DEFAULTS["max_period"]),
        epsilon=ns.epsilon if ns.epsilon is not None else _DEFAULTS["epsilon"],
        fmt=fmt,
        out=ns.out,
        sequence=getattr(ns, "sequence", None),
        axes=axes,
        max_cells=(getattr(ns, "max_cells", None) or _DEFAULTS["max_cells"]),
        workers=(getattr(ns, "workers", None) or _DEFAULTS["workers"]),
        verdict_each_step=bool(getattr(ns, "verdict_each_step", None)),
    )


def _scan_config(config: CliConfig) -> ScanConfig:
    return ScanConfig(
        coin_a=config.coin_a,
        coin_b=config.coin_b,
        eta_deg=config.eta_deg,
        max_period=config.max_period,
        horizon_steps=config.steps,
        epsilon=config.epsilon,
        verdict_each_step=config.verdict_each_step,
    )


def _render(config: CliConfig) -> str:
    sink = stringio.StringIO()
    if config.command == "simulate":
        trajectory = game_trajectory(
            config.coin_a, config.coin_b, config.eta_deg, config.sequence, config.steps
        )
        if config.fmt == "csv":
            write_trajectory_csv(trajectory, sink)
        else:
            write_trajectory_json(trajectory, sink)
    elif config.command == "scan":
        write_scan_json(run_scan(_scan_config(config)), sink)
    else:
        base = _scan_config(config)
        grid = scan_region_grid(
            base, config.axes, max_cells=config.max_cells, workers=config.workers
        )
        write_region_json(grid, base, sink)
    return sink.getvalue()


def main(argv: list[str] | None = None) -> int:
    try:
        config = parse_cli(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK

    try:
        text = _render(config)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InvalidParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if config.out is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(config.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except OSError as exc:
        print(f"error: cannot write {config.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
