"""System configuration, Rayleigh channel realization, and cascade
composition.

A link chain with L reflecting surfaces has L+1 channel matrices:
H_0 (first surface x transmit antennas), H_l (surface l+1 x surface l) for
the inter-surface hops, and H_L (users x last surface).  The end-to-end
channel is H_L Phi_L ... Phi_2 H_1 Phi_1 H_0 with unitary Phi_l.

Seeding contract (stable across releases): matrix l of a realization draws
from default_rng(SeedSequence(entropy=seed, spawn_key=(0, l))), so extending
the chain or resizing a later surface never perturbs earlier matrices.
Strategy-internal random draws use the (1, l) subkey and per-trial seeds the
(2, t) subkey; see the simulator module.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SystemConfig",
    "ChannelSet",
    "RisConfiguration",
    "link_shapes",
    "generate_channels",
    "substream",
    "derive_trial_seed",
    "compose_cascade",
]

_MAX_SEED = 2**64

_CHANNEL_KEY = 0
_STRATEGY_KEY = 1
_TRIAL_KEY = 2

_UNITARY_TOL = 1e-8


@dataclass(frozen=True)
class SystemConfig:
    """Static system parameters.

    tx_antennas, users and every entry of ris_sizes are counts >= 1;
    power_budget and noise_var are linear (not dB) and positive.
    """

    tx_antennas: int
    users: int
    ris_count: int
    ris_sizes: tuple
    power_budget: float
    noise_var: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "ris_sizes", tuple(int(n) for n in self.ris_sizes))
        for name in ("tx_antennas", "users", "ris_count"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or v < 1:
                raise ValueError(f"{name} must be a count >= 1, got {v!r}")
        if len(self.ris_sizes) != self.ris_count:
            raise ValueError(
                f"ris_sizes has {len(self.ris_sizes)} entries for ris_count={self.ris_count}"
            )
        if any(n < 1 for n in self.ris_sizes):
            raise ValueError(f"ris_sizes must all be >= 1, got {self.ris_sizes}")
        if not (self.power_budget > 0 and np.isfinite(self.power_budget)):
            raise ValueError(f"power_budget must be positive, got {self.power_budget}")
        if not (self.noise_var > 0 and np.isfinite(self.noise_var)):
            raise ValueError(f"noise_var must be positive, got {self.noise_var}")


@dataclass(frozen=True)
class ChannelSet:
    """One realization of the L+1 link matrices, H_0 through H_L."""

    matrices: tuple

    def __post_init__(self):
        object.__setattr__(self, "matrices", tuple(self.matrices))
        if len(self.matrices) < 2:
            raise ValueError("a chain needs at least two link matrices")


@dataclass(frozen=True)
class RisConfiguration:
    """Phase matrices Phi_1 ... Phi_L, one square unitary per surface."""

    phases: tuple

    def __post_init__(self):
        object.__setattr__(self, "phases", tuple(self.phases))
        for l, phi in enumerate(self.phases, start=1):
            phi = np.asarray(phi)
            if phi.ndim != 2 or phi.shape[0] != phi.shape[1]:
                raise ValueError(f"phase matrix {l} is not square: {phi.shape}")
            gram = phi @ phi.conj().T
            err = np.linalg.norm(gram - np.eye(phi.shape[0]))
            if err > _UNITARY_TOL:
                raise ValueError(
                    f"phase matrix {l} is not unitary (deviation {err:.3e})"
                )


def link_shapes(config: SystemConfig) -> list:
    """(rows, cols) for H_0 ... H_L under the given configuration."""
    m, k, sizes = config.tx_antennas, config.users, config.ris_sizes
    shapes = [(sizes[0], m)]
    for l in range(1, config.ris_count):
        shapes.append((sizes[l], sizes[l - 1]))
    shapes.append((k, sizes[-1]))
    return shapes


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < _MAX_SEED:
        raise ValueError(f"seed must fit in 64 bits, got {seed}")
    return seed


def substream(seed: int, domain: int, index: int) -> np.random.Generator:
    """Independent generator for (seed, domain, index); see module docstring."""
    ss = np.random.SeedSequence(entropy=_check_seed(seed), spawn_key=(domain, index))
    return np.random.default_rng(ss)


def derive_trial_seed(master_seed: int, trial: int) -> int:
    """Stable 64-bit seed for one Monte Carlo trial of a run."""
    ss = np.random.SeedSequence(
        entropy=_check_seed(master_seed), spawn_key=(_TRIAL_KEY, int(trial))
    )
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _complex_gaussian(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    # real and imaginary parts each N(0, 1/2) so E|h|^2 = 1
    re = rng.standard_normal((rows, cols))
    im = rng.standard_normal((rows, cols))
    return (re + 1j * im) / np.sqrt(2.0)


def generate_channels(config: SystemConfig, seed: int) -> ChannelSet:
    """Draw one iid CN(0, 1) realization of all link matrices.

    Deterministic in (config shapes, seed); each matrix has its own
    substream, so configurations sharing a prefix of link shapes share those
    matrices at the same seed.
    """
    seed = _check_seed(seed)
    mats = []
    for l, (rows, cols) in enumerate(link_shapes(config)):
        rng = substream(seed, _CHANNEL_KEY, l)
        mats.append(_complex_gaussian(rng, rows, cols))
    return ChannelSet(matrices=tuple(mats))


def strategy_rng(trial_seed: int, index: int) -> np.random.Generator:
    """Generator for strategy-internal randomness, separate from channels."""
    return substream(trial_seed, _STRATEGY_KEY, index)


def compose_cascade(channels: ChannelSet, ris: RisConfiguration) -> np.ndarray:
    """End-to-end matrix H_L Phi_L ... Phi_1 H_0 (users x tx antennas).

    Raises with the offending stage index on any dimension mismatch.
    """
    mats = channels.matrices
    phases = ris.phases
    if len(phases) != len(mats) - 1:
        raise ValueError(
            f"{len(mats)} link matrices need {len(mats) - 1} phase matrices, "
            f"got {len(phases)}"
        )
    acc = np.asarray(mats[0], dtype=complex)
    for l in range(1, len(mats)):
        phi = np.asarray(phases[l - 1], dtype=complex)
        if phi.shape[1] != acc.shape[0]:
            raise ValueError(
                f"stage {l}: phase matrix {phi.shape} does not accept "
                f"incoming {acc.shape}"
            )
        nxt = np.asarray(mats[l], dtype=complex)
        if nxt.shape[1] != phi.shape[0]:
            raise ValueError(
                f"stage {l}: link matrix {nxt.shape} does not accept "
                f"reflected {phi.shape}"
            )
        acc = nxt @ (phi @ acc)
    return acc
