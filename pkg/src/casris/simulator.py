"""Monte Carlo ergodic-capacity estimation and parameter sweeps.

Determinism contract: every Monte Carlo trial t derives its own 64-bit seed
from the master seed (see channel.derive_trial_seed), all strategies at
trial t share the channel realization, and per-trial capacities are
assembled into a trial-indexed array before any reduction.  Results are
therefore a pure function of (config, strategy, trials, seed); the worker
count changes wall time only, never an output bit.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .analysis import (
    DEFAULT_DIGAMMA_VARIANT,
    DigammaVariant,
    ec_high_snr,
    ec_high_snr_large_n,
    ec_taylor,
)
from .channel import (
    RisConfiguration,
    SystemConfig,
    derive_trial_seed,
    generate_channels,
    strategy_rng,
)
from .optimizer import Precoder, evaluate, optimize_svdwf, optimize_upa, project_diagonal

__all__ = [
    "Strategy",
    "Axis",
    "McEstimate",
    "StrategyEntry",
    "SweepSpec",
    "SweepRow",
    "haar_unitary",
    "trial_capacity",
    "estimate_ec",
    "run_sweep",
]


class Strategy(str, Enum):
    """Per-realization configuration policy evaluated by the simulator."""

    UPA_BD = "upa_bd"
    SVDWF_BD = "svdwf_bd"
    UPA_DIAG_PROJECTED = "upa_diag_projected"
    RANDOM_UNITARY = "random_unitary"
    RANDOM_DIAGONAL = "random_diagonal"
    IDENTITY_PHASES = "identity_phases"


class Axis(str, Enum):
    """Sweep axis: transmit power in dB (relative to the noise floor),
    total element count, or cascade depth."""

    POWER_DB = "power_db"
    ELEMENTS_N = "elements_n"
    RIS_COUNT_L = "ris_count_l"


@dataclass(frozen=True)
class McEstimate:
    """Sample mean and standard error of per-realization capacity."""

    mean_bits: float
    std_error: float
    trials: int
    seed: int


@dataclass(frozen=True)
class StrategyEntry:
    """One sweep curve: a strategy, optionally pinned to its own cascade
    depth (so single-surface and cascaded arrangements can share a sweep).
    """

    strategy: Strategy
    ris_count: int | None = None
    label: str | None = None

    def resolved_label(self) -> str:
        if self.label:
            return self.label
        if self.ris_count is not None:
            return f"{self.strategy.value}_L{self.ris_count}"
        return self.strategy.value


@dataclass(frozen=True)
class SweepSpec:
    """A full sweep: base system, axis points, curves, and sampling plan."""

    base: SystemConfig
    axis: Axis
    points: tuple
    strategies: tuple
    trials: int
    seed: int
    digamma_variant: DigammaVariant = DEFAULT_DIGAMMA_VARIANT

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(float(p) for p in self.points))
        entries = tuple(
            e if isinstance(e, StrategyEntry) else StrategyEntry(Strategy(e))
            for e in self.strategies
        )
        object.__setattr__(self, "strategies", entries)
        if not self.points:
            raise ValueError("sweep needs at least one axis point")
        if any(b <= a for a, b in zip(self.points, self.points[1:])):
            raise ValueError(f"axis points must be strictly increasing: {self.points}")
        if not entries:
            raise ValueError("sweep needs at least one strategy")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.axis is Axis.RIS_COUNT_L and any(
            e.ris_count is not None for e in entries
        ):
            raise ValueError(
                "per-strategy ris_count cannot be combined with the ris_count_l axis"
            )


@dataclass(frozen=True)
class SweepRow:
    """One (axis point, strategy) result; analytic columns are None when the
    strategy has no closed-form prediction or the point is invalid."""

    axis_value: float
    strategy: str
    mean_bits: float | None
    std_error: float | None
    ec_taylor: float | None
    ec_highsnr: float | None
    ec_largen: float | None
    valid: bool = True
    note: str = ""


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed unitary via QR with the R-diagonal phase fix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def trial_capacity(config: SystemConfig, strategy: Strategy, trial_seed: int) -> float:
    """Capacity of one channel realization under the given strategy.

    The realization depends only on (config shapes, trial_seed); strategies
    drawing their own randomness use a separate substream of the same trial
    seed, so paired comparisons across strategies see identical channels.
    """
    strategy = Strategy(strategy)
    channels = generate_channels(config, trial_seed)

    if strategy is Strategy.UPA_BD:
        return optimize_upa(channels, config)[2].capacity_bits
    if strategy is Strategy.SVDWF_BD:
        return optimize_svdwf(channels, config)[2].capacity_bits
    if strategy is Strategy.UPA_DIAG_PROJECTED:
        ris, precoder, _ = optimize_upa(channels, config)
        projected = RisConfiguration(
            phases=tuple(project_diagonal(phi) for phi in ris.phases)
        )
        return evaluate(channels, projected, precoder, config).capacity_bits

    precoder = Precoder.upa(config.power_budget, config.tx_antennas)
    sizes = config.ris_sizes
    if strategy is Strategy.RANDOM_UNITARY:
        phases = tuple(
            haar_unitary(strategy_rng(trial_seed, l), n) for l, n in enumerate(sizes)
        )
    elif strategy is Strategy.RANDOM_DIAGONAL:
        phases = tuple(
            np.diag(
                np.exp(1j * strategy_rng(trial_seed, l).uniform(0.0, 2.0 * np.pi, n))
            )
            for l, n in enumerate(sizes)
        )
    else:
        phases = tuple(np.eye(n, dtype=complex) for n in sizes)
    ris = RisConfiguration(phases=phases)
    return evaluate(channels, ris, precoder, config).capacity_bits


def _trial_block(args) -> list:
    config, strategy, seeds = args
    return [trial_capacity(config, strategy, s) for s in seeds]


def _per_trial_capacities(
    config: SystemConfig, strategy: Strategy, trials: int, seed: int, workers: int
) -> np.ndarray:
    seeds = [derive_trial_seed(seed, t) for t in range(trials)]
    if workers <= 1 or trials < 2 * workers:
        caps = _trial_block((config, strategy, seeds))
        return np.asarray(caps)

    chunk = math.ceil(trials / workers)
    blocks = [
        (config, strategy, seeds[start : start + chunk])
        for start in range(0, trials, chunk)
    ]
    out = np.empty(trials)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        pos = 0
        for caps in pool.map(_trial_block, blocks):
            out[pos : pos + len(caps)] = caps
            pos += len(caps)
    return out


def estimate_ec(
    config: SystemConfig,
    strategy: Strategy,
    trials: int,
    seed: int,
    workers: int = 1,
) -> McEstimate:
    """Monte Carlo estimate of the ergodic capacity.

    Standard error is the sample standard deviation over sqrt(trials); a
    single trial reports 0.  The reduction runs over the trial-indexed
    array in fixed order (numpy pairwise summation), so the estimate is
    bit-identical for any worker count.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    caps = _per_trial_capacities(config, strategy, trials, seed, workers)
    mean = float(np.mean(caps))
    if trials > 1:
        stderr = float(np.std(caps, ddof=1) / math.sqrt(trials))
    else:
        stderr = 0.0
    return McEstimate(mean_bits=mean, std_error=stderr, trials=trials, seed=seed)


class _InvalidPoint(ValueError):
    pass


def _split_elements(total: int, count: int) -> tuple:
    if total < count or total % count != 0:
        raise _InvalidPoint(
            f"{total} elements cannot be split evenly over {count} surfaces"
        )
    return (total // count,) * count


def _resolve_config(
    base: SystemConfig, axis: Axis, value: float, entry: StrategyEntry
) -> SystemConfig:
    """Effective system for one (axis point, strategy entry) pair.

    Element-count points are totals, split evenly across the entry's
    surfaces; power points are dB relative to the noise floor.
    """
    total = sum(base.ris_sizes)
    l_eff = entry.ris_count if entry.ris_count is not None else base.ris_count

    if axis is Axis.POWER_DB:
        p_t = base.noise_var * 10.0 ** (value / 10.0)
        sizes = (
            base.ris_sizes
            if l_eff == base.ris_count
            else _split_elements(total, l_eff)
        )
        return SystemConfig(
            tx_antennas=base.tx_antennas,
            users=base.users,
            ris_count=l_eff,
            ris_sizes=sizes,
            power_budget=p_t,
            noise_var=base.noise_var,
        )

    if axis is Axis.ELEMENTS_N:
        if value != int(value) or value < 1:
            raise _InvalidPoint(f"element count must be a positive integer, got {value}")
        sizes = _split_elements(int(value), l_eff)
    else:  # Axis.RIS_COUNT_L
        if value != int(value) or value < 1:
            raise _InvalidPoint(f"cascade depth must be a positive integer, got {value}")
        l_eff = int(value)
        sizes = _split_elements(total, l_eff)

    return SystemConfig(
        tx_antennas=base.tx_antennas,
        users=base.users,
        ris_count=l_eff,
        ris_sizes=sizes,
        power_budget=base.power_budget,
        noise_var=base.noise_var,
    )


def run_sweep(spec: SweepSpec, workers: int = 1) -> list:
    """Run every (axis point, strategy) cell of a sweep.

    Rows come out in deterministic order: axis points outermost, strategies
    in listed order.  All cells share the master seed, so trials are paired
    across strategies and axis points.  Analytic predictions fill only the
    aligned-isotropic rows; an axis point with impossible dimensions
    produces a flagged row and the sweep continues.
    """
    rows = []
    for value in spec.points:
        for entry in spec.strategies:
            try:
                config = _resolve_config(spec.base, spec.axis, value, entry)
            except _InvalidPoint as bad:
                rows.append(
                    SweepRow(
                        axis_value=value,
                        strategy=entry.resolved_label(),
                        mean_bits=None,
                        std_error=None,
                        ec_taylor=None,
                        ec_highsnr=None,
                        ec_largen=None,
                        valid=False,
                        note=str(bad),
                    )
                )
                continue

            est = estimate_ec(config, entry.strategy, spec.trials, spec.seed, workers)
            taylor = highsnr = largen = None
            if entry.strategy is Strategy.UPA_BD:
                taylor = ec_taylor(config).value_bits
                highsnr = ec_high_snr(config, spec.digamma_variant).value_bits
                if len(set(config.ris_sizes)) == 1:
                    largen = ec_high_snr_large_n(config).value_bits
            rows.append(
                SweepRow(
                    axis_value=value,
                    strategy=entry.resolved_label(),
                    mean_bits=est.mean_bits,
                    std_error=est.std_error,
                    ec_taylor=taylor,
                    ec_highsnr=highsnr,
                    ec_largen=largen,
                )
            )
    return rows
