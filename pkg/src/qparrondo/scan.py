"""Sequence enumeration, paradox scanning, and coin-parameter region sweeps.

A paradox point is a configuration where both pure games lose while at
least one periodic alternation of the same two coins wins. ``run_scan``
checks every sequence up to a maximum period at one configuration;
``scan_region_grid`` repeats that over a grid of coin parameters.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from itertools import product
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

from .errors import InvalidParameterError
from .metrics import BiasTrajectory, GameVerdict, classify, trajectory_with_entropy
from .walk import CoinParams, GameSequence, InitialStateSpec, evolve_sequence

__all__ = [
    "AXIS_PARAMETERS",
    "ScanConfig",
    "SequenceResult",
    "ScanReport",
    "GridAxis",
    "RegionGrid",
    "enumerate_sequences",
    "game_trajectory",
    "run_scan",
    "scan_region_grid",
    "entropy_comparison",
]

MAX_ENUMERATION_PERIOD = 12

AXIS_PARAMETERS = (
    "alpha_a",
    "beta_a",
    "gamma_a",
    "alpha_b",
    "beta_b",
    "gamma_b",
    "eta",
)
"""Scalar inputs a region sweep may vary."""


@dataclass(frozen=True)
class ScanConfig:
    """One scan configuration: two coins, initial phase, and horizon.

    Verdicts are taken at whole-period boundaries of each sequence; set
    ``verdict_each_step`` to require the winning/losing condition at every
    elementary step instead (a much stricter quantifier, useful for
    sensitivity analysis).
    """

    coin_a: CoinParams
    coin_b: CoinParams
    eta_deg: float
    max_period: int = 6
    horizon_steps: int = 240
    epsilon: float = 1e-9
    verdict_each_step: bool = False

    def __post_init__(self) -> None:
        if self.max_period < 2:
            raise InvalidParameterError(
                f"max_period must be >= 2 (period 1 is a pure game), got {self.max_period}"
            )
        if self.horizon_steps < self.max_period:
            raise InvalidParameterError(
                f"horizon_steps must be >= max_period, got {self.horizon_steps} < {self.max_period}"
            )
        if not self.epsilon >= 0:
            raise InvalidParameterError(f"epsilon must be >= 0, got {self.epsilon}")


@dataclass(frozen=True)
class SequenceResult:
    """Verdict and summary observables for one sequence.

    ``final_bias`` is the bias at the last elementary step, ``min_bias``
    the minimum over all elementary steps, and ``max_entropy`` the maximum
    coin-position entropy over the horizon.
    """

    sequence: GameSequence
    verdict: GameVerdict
    final_bias: float
    min_bias: float
    max_entropy: float


@dataclass(frozen=True)
class ScanReport:
    """Result of scanning every sequence at one configuration.

    ``paradox_sequences`` lists the token strings that win while both pure
    games lose; it is empty unless both pure verdicts are Losing.
    ``winning_by_period`` counts winning sequences per period, reported as
    data (longer periods often, but not always, win more).
    """

    config: ScanConfig
    verdict_a: GameVerdict
    verdict_b: GameVerdict
    results: tuple[SequenceResult, ...]
    paradox_sequences: tuple[str, ...]
    winning_by_period: dict[int, int]


def enumerate_sequences(max_period: int) -> list[GameSequence]:
    """All mixed coin schedules of period 2 up to ``max_period``.

    Every string over {A, B} that contains both letters appears exactly
    once, ordered by length and then lexicographically. Cyclic rotations
    are distinct schedules and are all kept.

    Raises
    ------
    InvalidParameterError
        If ``max_period`` is outside [2, 12]; the listing doubles per
        extra period.
    """
    if not 2 <= max_period <= MAX_ENUMERATION_PERIOD:
        raise InvalidParameterError(
            f"max_period must be in [2, {MAX_ENUMERATION_PERIOD}], got {max_period}"
        )
    sequences = []
    for length in range(2, max_period + 1):
        for letters in product("AB", repeat=length):
            tokens = "".join(letters)
            if "A" in tokens and "B" in tokens:
                sequences.append(GameSequence(tokens))
    return sequences


def game_trajectory(
    coin_a: CoinParams,
    coin_b: CoinParams,
    eta_deg: float,
    seq: GameSequence,
    steps: int,
) -> BiasTrajectory:
    """Evolve one game and return its full trajectory with entropy."""
    snapshots = evolve_sequence(
        InitialStateSpec(eta_deg=eta_deg), coin_a, coin_b, seq, steps
    )
    metadata = {
        "coin_a": (coin_a.alpha_deg, coin_a.beta_deg, coin_a.gamma_deg),
        "coin_b": (coin_b.alpha_deg, coin_b.beta_deg, coin_b.gamma_deg),
        "eta_deg": eta_deg,
        "sequence": seq.tokens,
    }
    return trajectory_with_entropy(snapshots, metadata)


def _sequence_result(config: ScanConfig, seq: GameSequence) -> SequenceResult:
    trajectory = game_trajectory(
        config.coin_a, config.coin_b, config.eta_deg, seq, config.horizon_steps
    )
    period = 1 if config.verdict_each_step else seq.period
    verdict = classify(trajectory, epsilon=config.epsilon, period=period)
    biases = trajectory.biases()
    return SequenceResult(
        sequence=seq,
        verdict=verdict,
        final_bias=float(biases[-1]),
        min_bias=float(biases.min()),
        max_entropy=float(trajectory.entropies().max()),
    )


def run_scan(config: ScanConfig) -> ScanReport:
    """Simulate pure A, pure B, and every enumerated sequence.

    Results keep the enumeration order. The run is fully deterministic:
    identical configurations produce identical reports.
    """
    pure_a = _sequence_result(config, GameSequence("A"))
    pure_b = _sequence_result(config, GameSequence("B"))
    results = tuple(
        _sequence_result(config, seq) for seq in enumerate_sequences(config.max_period)
    )
    both_losing = (
        pure_a.verdict is GameVerdict.LOSING and pure_b.verdict is GameVerdict.LOSING
    )
    paradox = tuple(
        r.sequence.tokens
        for r in results
        if both_losing and r.verdict is GameVerdict.WINNING
    )
    winning_by_period: dict[int, int] = {p: 0 for p in range(2, config.max_period + 1)}
    for r in results:
        if r.verdict is GameVerdict.WINNING:
            winning_by_period[r.sequence.period] += 1
    return ScanReport(
        config=config,
        verdict_a=pure_a.verdict,
        verdict_b=pure_b.verdict,
        results=results,
        paradox_sequences=paradox,
        winning_by_period=winning_by_period,
    )


@dataclass(frozen=True)
class GridAxis:
    """One swept parameter and the values it takes."""

    parameter: str
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.parameter not in AXIS_PARAMETERS:
            raise InvalidParameterError(
                f"unknown axis parameter {self.parameter!r}; "
                f"choose one of {', '.join(AXIS_PARAMETERS)}"
            )
        values = tuple(float(v) for v in self.values)
        if not values:
            raise InvalidParameterError(f"axis {self.parameter} has no values")
        if not all(math.isfinite(v) for v in values):
            raise InvalidParameterError(f"axis {self.parameter} has non-finite values")
        object.__setattr__(self, "values", values)

    @classmethod
    def linspace(cls, parameter: str, start: float, stop: float, count: int) -> "GridAxis":
        if count < 1:
            raise InvalidParameterError(f"axis {parameter} needs count >= 1, got {count}")
        return cls(parameter, tuple(np.linspace(start, stop, count)))


@dataclass(frozen=True)
class RegionGrid:
    """Paradox indicator and winning-sequence count per grid cell.

    Arrays are indexed by the axes in order (row-major over cells).
    """

    axes: tuple[GridAxis, ...]
    paradox: NDArray[np.bool_]
    winning_counts: NDArray[np.int_]

    def __post_init__(self) -> None:
        shape = tuple(len(axis.values) for axis in self.axes)
        paradox = np.asarray(self.paradox, dtype=bool)
        counts = np.asarray(self.winning_counts, dtype=int)
        if paradox.shape != shape or counts.shape != shape:
            raise InvalidParameterError(
                f"grid arrays must have shape {shape}, got {paradox.shape} and {counts.shape}"
            )
        object.__setattr__(self, "paradox", paradox)
        object.__setattr__(self, "winning_counts", counts)


def _apply_assignments(config: ScanConfig, assignments: dict[str, float]) -> ScanConfig:
    coin_fields = {
        "alpha_a": ("coin_a", "alpha_deg"),
        "beta_a": ("coin_a", "beta_deg"),
        "gamma_a": ("coin_a", "gamma_deg"),
        "alpha_b": ("coin_b", "alpha_deg"),
        "beta_b": ("coin_b", "beta_deg"),
        "gamma_b": ("coin_b", "gamma_deg"),
    }
    coins = {"coin_a": config.coin_a, "coin_b": config.coin_b}
    eta = config.eta_deg
    for name, value in assignments.items():
        if name == "eta":
            eta = value
        else:
            coin_name, field_name = coin_fields[name]
            coins[coin_name] = replace(coins[coin_name], **{field_name: value})
    return replace(config, coin_a=coins["coin_a"], coin_b=coins["coin_b"], eta_deg=eta)


def _cell_outcome(config: ScanConfig) -> tuple[bool, int]:
    report = run_scan(config)
    n_winning = sum(
        1 for r in report.results if r.verdict is GameVerdict.WINNING
    )
    return bool(report.paradox_sequences), n_winning


def scan_region_grid(
    base: ScanConfig,
    axes: Sequence[GridAxis],
    max_cells: int = 1024,
    workers: int = 1,
) -> RegionGrid:
    """Run a full scan at every cell of a parameter grid.

    Cells are evaluated in row-major order over the axes; with
    ``workers > 1`` they run in parallel processes, but results are
    collected by cell index so the grid is identical either way.

    Raises
    ------
    InvalidParameterError
        If no axis or more than two axes are given, or the grid exceeds
        ``max_cells``.
    """
    axes = tuple(axes)
    if not 1 <= len(axes) <= 2:
        raise InvalidParameterError(f"expected 1 or 2 axes, got {len(axes)}")
    seen = {axis.parameter for axis in axes}
    if len(seen) != len(axes):
        raise InvalidParameterError("axes must sweep distinct parameters")
    shape = tuple(len(axis.values) for axis in axes)
    n_cells = int(np.prod(shape))
    if n_cells > max_cells:
        raise InvalidParameterError(
            f"grid of {n_cells} cells exceeds the budget of {max_cells}"
        )
    cell_configs = []
    for index in np.ndindex(shape):
        assignments = {
            axis.parameter: axis.values[i] for axis, i in zip(axes, index)
        }
        cell_configs.append(_apply_assignments(base, assignments))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_cell_outcome, cell_configs))
    else:
        outcomes = [_cell_outcome(cfg) for cfg in cell_configs]
    paradox = np.array([flag for flag, _ in outcomes], dtype=bool).reshape(shape)
    counts = np.array([count for _, count in outcomes], dtype=int).reshape(shape)
    return RegionGrid(axes=axes, paradox=paradox, winning_counts=counts)


def entropy_comparison(report: ScanReport) -> list[tuple[GameSequence, float]]:
    """Sequences of a report ordered by descending peak entropy.

    Ties keep the enumeration order (the sort is stable).
    """
    ordered = sorted(report.results, key=lambda r: -r.max_entropy)
    return [(r.sequence, r.max_entropy) for r in ordered]
