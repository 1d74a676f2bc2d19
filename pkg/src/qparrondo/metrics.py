"""Game observables: side probabilities, bias, verdicts, and coin entropy.

The payoff of a game is the bias ``p_right - p_left``, where the two sides
sum probability strictly left and strictly right of the origin; mass at
the origin belongs to neither side. Coin-position entanglement is the von
Neumann entropy (base 2) of the reduced coin density matrix, so 0 marks a
separable state and 1 a maximally entangled one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Mapping, Sequence

import numpy as np
from numpy.typing import NDArray

from .errors import InvalidParameterError
from .walk import WalkerState

__all__ = [
    "GameVerdict",
    "BiasSample",
    "BiasTrajectory",
    "ReducedCoinDensity",
    "bias_sample",
    "classify",
    "reduced_density",
    "entanglement_entropy",
    "trajectory_with_entropy",
]

ReducedCoinDensity = NDArray[np.complex128]
"""2x2 Hermitian matrix with unit trace."""

_CLOSURE_TOL = 1e-10


class GameVerdict(Enum):
    """Outcome of a game over a whole trajectory."""

    WINNING = "Winning"
    LOSING = "Losing"
    DRAW = "Draw"
    MIXED = "Mixed"


@dataclass(frozen=True)
class BiasSample:
    """Observables of one snapshot: side probabilities, bias, entropy.

    ``entropy`` may be deferred (None) when only the bias is needed.
    """

    step: int
    p_left: float
    p_origin: float
    p_right: float
    bias: float
    entropy: float | None = None

    def __post_init__(self) -> None:
        total = self.p_left + self.p_origin + self.p_right
        if abs(total - 1.0) > _CLOSURE_TOL:
            raise InvalidParameterError(
                f"probabilities must sum to 1, got {total!r} at step {self.step}"
            )
        if not -1.0 - _CLOSURE_TOL <= self.bias <= 1.0 + _CLOSURE_TOL:
            raise InvalidParameterError(f"bias out of [-1, 1]: {self.bias!r}")
        if self.entropy is not None and not -_CLOSURE_TOL <= self.entropy <= 1.0 + _CLOSURE_TOL:
            raise InvalidParameterError(f"entropy out of [0, 1]: {self.entropy!r}")


@dataclass(frozen=True)
class BiasTrajectory:
    """Per-step samples for steps 1..T plus run metadata (coins, schedule, eta)."""

    samples: tuple[BiasSample, ...]
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        samples = tuple(self.samples)
        if not samples:
            raise InvalidParameterError("trajectory must contain at least one sample")
        for i, sample in enumerate(samples):
            if sample.step != i + 1:
                raise InvalidParameterError(
                    f"samples must cover steps 1..T without gaps; "
                    f"position {i} has step {sample.step}"
                )
        object.__setattr__(self, "samples", samples)

    def biases(self) -> NDArray[np.float64]:
        return np.array([s.bias for s in self.samples])

    def entropies(self) -> NDArray[np.float64]:
        if any(s.entropy is None for s in self.samples):
            raise InvalidParameterError("trajectory has deferred entropy values")
        return np.array([s.entropy for s in self.samples])


def bias_sample(state: WalkerState) -> BiasSample:
    """Measure side probabilities and bias of one snapshot.

    ``p_left`` sums probability over sites x < 0, ``p_right`` over x > 0,
    and ``p_origin`` is the mass at x = 0, which counts toward neither
    side. Entropy is left deferred.
    """
    per_site = state.site_probabilities()
    center = state.half_width
    p_left = float(per_site[:center].sum())
    p_origin = float(per_site[center])
    p_right = float(per_site[center + 1:].sum())
    return BiasSample(
        step=state.step,
        p_left=p_left,
        p_origin=p_origin,
        p_right=p_right,
        bias=p_right - p_left,
    )


def classify(
    trajectory: BiasTrajectory,
    epsilon: float = 1e-9,
    period: int = 1,
) -> GameVerdict:
    """Classify a trajectory as Winning, Losing, Draw, or Mixed.

    The verdict quantifies over the samples at whole multiples of
    ``period`` (the natural payoff points of a periodic game; one "round"
    of the game ABB is three elementary steps). With the default
    ``period=1`` every elementary step must satisfy the condition.

    Winning requires bias > epsilon at every checked sample, Losing
    requires bias < -epsilon at every checked sample, Draw requires
    |bias| <= epsilon everywhere, and anything else is Mixed.

    Raises
    ------
    InvalidParameterError
        If ``period < 1`` or the trajectory contains no sample at a
        multiple of ``period``.
    """
    if period < 1:
        raise InvalidParameterError(f"period must be >= 1, got {period}")
    biases = [s.bias for s in trajectory.samples if s.step % period == 0]
    if not biases:
        raise InvalidParameterError(
            f"no samples at multiples of period {period} in trajectory of "
            f"{len(trajectory.samples)} steps"
        )
    if all(b > epsilon for b in biases):
        return GameVerdict.WINNING
    if all(b < -epsilon for b in biases):
        return GameVerdict.LOSING
    if all(abs(b) <= epsilon for b in biases):
        return GameVerdict.DRAW
    return GameVerdict.MIXED


def reduced_density(state: WalkerState) -> ReducedCoinDensity:
    """Trace out the position register.

    ``rho[c, c'] = sum_x amp(c, x) * conj(amp(c', x))``; the result is
    Hermitian with unit trace for a normalized state.
    """
    amp = state.amplitudes
    return amp @ amp.conj().T


_EIGENVALUE_SNAP = 1e-12


def entanglement_entropy(rho: ReducedCoinDensity) -> float:
    """Von Neumann entropy of a 2x2 density matrix, in bits.

    The two eigenvalues come from the closed-form quadratic in the trace
    and determinant. Hermitian round-off can push them marginally outside
    [0, 1], so values within 1e-12 of 0 or 1 are treated as exact before
    the logarithm (a pure state reports entropy 0.0, not 1e-16); the
    0*log(0) = 0 convention applies. The snap changes the result by less
    than 1e-10.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (2, 2):
        raise InvalidParameterError(f"density matrix must be 2x2, got shape {rho.shape}")
    trace = float(rho[0, 0].real + rho[1, 1].real)
    det = float((rho[0, 0] * rho[1, 1] - rho[0, 1] * rho[1, 0]).real)
    disc = max(trace * trace - 4.0 * det, 0.0)
    root = math.sqrt(disc)
    entropy = 0.0
    for lam in ((trace + root) / 2.0, (trace - root) / 2.0):
        lam = min(max(lam, 0.0), 1.0)
        if lam <= _EIGENVALUE_SNAP or lam >= 1.0 - _EIGENVALUE_SNAP:
            continue
        entropy -= lam * math.log2(lam)
    return entropy


def trajectory_with_entropy(
    snapshots: Sequence[WalkerState],
    metadata: Mapping[str, Any] | None = None,
) -> BiasTrajectory:
    """Build a full trajectory, bias and entropy both populated.

    ``snapshots`` must be ordered by step and cover steps 1..T without
    gaps, exactly as produced by ``evolve_sequence``.

    Raises
    ------
    InvalidParameterError
        If the snapshot list is empty or out of order.
    """
    if not snapshots:
        raise InvalidParameterError("no snapshots to build a trajectory from")
    for i, snap in enumerate(snapshots):
        if snap.step != i + 1:
            raise InvalidParameterError(
                f"snapshots must be ordered by step and start at 1; "
                f"position {i} has step {snap.step}"
            )
    samples = []
    for snap in snapshots:
        sample = bias_sample(snap)
        entropy = entanglement_entropy(reduced_density(snap))
        samples.append(replace(sample, entropy=entropy))
    return BiasTrajectory(samples=tuple(samples), metadata=dict(metadata or {}))
