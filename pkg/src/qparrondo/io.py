"""CSV and JSON emitters for trajectories, scan reports, and region grids.

Output is deterministic byte-for-byte: fixed key order, fixed float
formatting, ``\\n`` line endings. CSV carries full-precision decimals so
external plotting loses nothing.
"""

from __future__ import annotations

import json
from typing import Any, TextIO

from .errors import InvalidParameterError
from .metrics import BiasTrajectory, BiasSample, GameVerdict
from .scan import RegionGrid, ScanConfig, ScanReport, SequenceResult
from .walk import CoinParams, GameSequence

__all__ = [
    "TRAJECTORY_CSV_HEADER",
    "write_trajectory_csv",
    "write_trajectory_json",
    "write_scan_json",
    "read_scan_json",
    "write_region_json",
]

TRAJECTORY_CSV_HEADER = "step,p_left,p_origin,p_right,bias,entropy"

_FLOAT_FORMAT = ".12e"  # 13 significant digits


def _fmt(value: float) -> str:
    return format(value, _FLOAT_FORMAT)


def write_trajectory_csv(trajectory: BiasTrajectory, sink: TextIO) -> None:
    """Write one row per step under a fixed header.

    Every sample must carry an entropy value; build trajectories with
    ``trajectory_with_entropy``.
    """
    sink.write(TRAJECTORY_CSV_HEADER + "\n")
    for sample in trajectory.samples:
        if sample.entropy is None:
            raise InvalidParameterError(
                f"sample at step {sample.step} has no entropy; "
                "build the trajectory with trajectory_with_entropy"
            )
        sink.write(
            f"{sample.step},{_fmt(sample.p_left)},{_fmt(sample.p_origin)},"
            f"{_fmt(sample.p_right)},{_fmt(sample.bias)},{_fmt(sample.entropy)}\n"
        )


def _sample_to_dict(sample: BiasSample) -> dict[str, Any]:
    return {
        "step": sample.step,
        "p_left": sample.p_left,
        "p_origin": sample.p_origin,
        "p_right": sample.p_right,
        "bias": sample.bias,
        "entropy": sample.entropy,
    }


def write_trajectory_json(trajectory: BiasTrajectory, sink: TextIO) -> None:
    """JSON equivalent of the CSV trajectory, plus run metadata."""
    document = {
        "metadata": dict(trajectory.metadata),
        "samples": [_sample_to_dict(s) for s in trajectory.samples],
    }
    json.dump(document, sink, indent=2)
    sink.write("\n")


def _config_to_dict(config: ScanConfig) -> dict[str, Any]:
    return {
        "coin_a": [config.coin_a.alpha_deg, config.coin_a.beta_deg, config.coin_a.gamma_deg],
        "coin_b": [config.coin_b.alpha_deg, config.coin_b.beta_deg, config.coin_b.gamma_deg],
        "eta_deg": config.eta_deg,
        "max_period": config.max_period,
        "horizon_steps": config.horizon_steps,
        "epsilon": config.epsilon,
        "verdict_each_step": config.verdict_each_step,
    }


def _config_from_dict(data: dict[str, Any]) -> ScanConfig:
    return ScanConfig(
        coin_a=CoinParams(*data["coin_a"]),
        coin_b=CoinParams(*data["coin_b"]),
        eta_deg=data["eta_deg"],
        max_period=data["max_period"],
        horizon_steps=data["horizon_steps"],
        epsilon=data["epsilon"],
        verdict_each_step=data["verdict_each_step"],
    )


def write_scan_json(report: ScanReport, sink: TextIO) -> None:
    """Serialize a scan report as one JSON document.

    Keys, in order: ``config``, ``verdict_a``, ``verdict_b``, ``results``
    (objects with ``sequence``, ``verdict``, ``final_bias``, ``min_bias``,
    ``max_entropy``, in enumeration order), ``paradox_sequences``, and
    ``winning_by_period``.
    """
    document = {
        "config": _config_to_dict(report.config),
        "verdict_a": report.verdict_a.value,
        "verdict_b": report.verdict_b.value,
        "results": [
            {
                "sequence": r.sequence.tokens,
                "verdict": r.verdict.value,
                "final_bias": r.final_bias,
                "min_bias": r.min_bias,
                "max_entropy": r.max_entropy,
            }
            for r in report.results
        ],
        "paradox_sequences": list(report.paradox_sequences),
        "winning_by_period": {str(p): n for p, n in report.winning_by_period.items()},
    }
    json.dump(document, sink, indent=2)
    sink.write("\n")


def read_scan_json(source: TextIO) -> ScanReport:
    """Parse a document produced by :func:`write_scan_json`."""
    data = json.load(source)
    results = tuple(
        SequenceResult(
            sequence=GameSequence(entry["sequence"]),
            verdict=GameVerdict(entry["verdict"]),
            final_bias=entry["final_bias"],
            min_bias=entry["min_bias"],
            max_entropy=entry["max_entropy"],
        )
        for entry in data["results"]
    )
    return ScanReport(
        config=_config_from_dict(data["config"]),
        verdict_a=GameVerdict(data["verdict_a"]),
        verdict_b=GameVerdict(data["verdict_b"]),
        results=results,
        paradox_sequences=tuple(data["paradox_sequences"]),
        winning_by_period={int(p): n for p, n in data["winning_by_period"].items()},
    )


def write_region_json(grid: RegionGrid, base: ScanConfig, sink: TextIO) -> None:
    """Serialize a region sweep: base config, axes, and both cell grids."""
    document = {
        "config": _config_to_dict(base),
        "axes": [
            {"parameter": axis.parameter, "values": list(axis.values)}
            for axis in grid.axes
        ],
        "paradox": grid.paradox.tolist(),
        "winning_counts": grid.winning_counts.tolist(),
    }
    json.dump(document, sink, indent=2)
    sink.write("\n")
