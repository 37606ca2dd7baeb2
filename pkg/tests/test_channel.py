"""Channel generation, seeding discipline, and cascade composition."""

import numpy as np
import pytest

from casris.channel import (
    ChannelSet,
    RisConfiguration,
    SystemConfig,
    compose_cascade,
    derive_trial_seed,
    generate_channels,
    link_shapes,
    strategy_rng,
    substream,
)


def _config(**kwargs):
    base = dict(tx_antennas=4, users=4, ris_count=2, ris_sizes=(8, 8),
                power_budget=10.0, noise_var=1.0)
    base.update(kwargs)
    return SystemConfig(**base)


class TestSystemConfig:
    def test_valid(self):
        cfg = _config()
        assert cfg.ris_sizes == (8, 8)

    def test_sizes_coerced_to_tuple(self):
        cfg = _config(ris_sizes=[4, 4])
        assert isinstance(cfg.ris_sizes, tuple)

    @pytest.mark.parametrize("kwargs", [
        dict(tx_antennas=0),
        dict(users=0),
        dict(ris_count=0, ris_sizes=()),
        dict(ris_sizes=(8,)),          # count mismatch
        dict(ris_sizes=(8, 0)),
        dict(power_budget=0.0),
        dict(power_budget=-1.0),
        dict(noise_var=0.0),
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            _config(**kwargs)


class TestLinkShapes:
    def test_two_surface(self):
        assert link_shapes(_config()) == [(8, 4), (8, 8), (4, 8)]

    def test_single_surface(self):
        cfg = _config(ris_count=1, ris_sizes=(6,))
        assert link_shapes(cfg) == [(6, 4), (4, 6)]

    def test_three_surface_mixed_sizes(self):
        cfg = _config(users=2, ris_count=3, ris_sizes=(5, 7, 3))
        assert link_shapes(cfg) == [(5, 4), (7, 5), (3, 7), (2, 3)]


class TestGeneration:
    def test_shapes_match(self):
        cfg = _config(users=2, ris_count=3, ris_sizes=(5, 7, 3))
        channels = generate_channels(cfg, 0)
        assert [m.shape for m in channels.matrices] == link_shapes(cfg)

    def test_deterministic(self):
        cfg = _config()
        a = generate_channels(cfg, 77)
        b = generate_channels(cfg, 77)
        for ma, mb in zip(a.matrices, b.matrices):
            assert np.array_equal(ma, mb)

    def test_seeds_differ(self):
        cfg = _config()
        a = generate_channels(cfg, 1)
        b = generate_channels(cfg, 2)
        assert not np.allclose(a.matrices[0], b.matrices[0])

    def test_prefix_links_shared_across_depths(self):
        # Adding a surface must not disturb the earlier links' draws.
        two = _config()
        three = _config(ris_count=3, ris_sizes=(8, 8, 8))
        a = generate_channels(two, 5)
        b = generate_channels(three, 5)
        assert np.array_equal(a.matrices[0], b.matrices[0])
        assert np.array_equal(a.matrices[1], b.matrices[1])

    def test_unit_average_power(self):
        cfg = _config(ris_sizes=(64, 64), power_budget=10.0)
        channels = generate_channels(cfg, 9)
        big = channels.matrices[1]  # 64 x 64: 4096 entries
        mean_power = float(np.mean(np.abs(big) ** 2))
        assert mean_power == pytest.approx(1.0, abs=0.05)

    def test_rejects_bad_seed(self):
        with pytest.raises(ValueError):
            generate_channels(_config(), -1)
        with pytest.raises(ValueError):
            generate_channels(_config(), 2**64)


class TestSeeding:
    def test_trial_seeds_distinct_and_stable(self):
        seeds = [derive_trial_seed(123, t) for t in range(500)]
        assert len(set(seeds)) == 500
        assert seeds == [derive_trial_seed(123, t) for t in range(500)]
        assert all(0 <= s < 2**64 for s in seeds)

    def test_substream_independent_of_other_domains(self):
        a = substream(7, 0, 0).standard_normal(4)
        b = substream(7, 1, 0).standard_normal(4)
        c = substream(7, 0, 1).standard_normal(4)
        assert not np.allclose(a, b)
        assert not np.allclose(a, c)

    def test_strategy_rng_reproducible(self):
        x = strategy_rng(42, 1).random(3)
        y = strategy_rng(42, 1).random(3)
        assert np.array_equal(x, y)


class TestRisConfiguration:
    def test_accepts_unitary(self):
        phases = (np.eye(8, dtype=complex), 1j * np.eye(8, dtype=complex))
        ris = RisConfiguration(phases=phases)
        assert len(ris.phases) == 2

    def test_rejects_non_unitary_with_index(self):
        good = np.eye(4, dtype=complex)
        bad = 2.0 * np.eye(4, dtype=complex)
        with pytest.raises(ValueError, match="phase matrix 2"):
            RisConfiguration(phases=(good, bad))

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            RisConfiguration(phases=(np.ones((2, 3), dtype=complex),))


class TestCompose:
    def test_matches_explicit_product(self):
        cfg = _config(users=2, ris_count=3, ris_sizes=(5, 7, 3))
        channels = generate_channels(cfg, 21)
        rng = np.random.default_rng(4)
        phases = []
        for n in cfg.ris_sizes:
            z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            q, _ = np.linalg.qr(z)
            phases.append(q)
        ris = RisConfiguration(phases=tuple(phases))
        h = compose_cascade(channels, ris)
        m = channels.matrices
        expected = m[3] @ phases[2] @ m[2] @ phases[1] @ m[1] @ phases[0] @ m[0]
        assert h.shape == (2, 4)
        assert np.allclose(h, expected, atol=1e-12)

    def test_identity_phases_give_plain_product(self):
        cfg = _config()
        channels = generate_channels(cfg, 3)
        ris = RisConfiguration(phases=tuple(np.eye(n, dtype=complex)
                                            for n in cfg.ris_sizes))
        h = compose_cascade(channels, ris)
        m = channels.matrices
        assert np.allclose(h, m[2] @ m[1] @ m[0], atol=1e-12)

    def test_phase_count_mismatch(self):
        cfg = _config()
        channels = generate_channels(cfg, 3)
        ris = RisConfiguration(phases=(np.eye(8, dtype=complex),))
        with pytest.raises(ValueError):
            compose_cascade(channels, ris)

    def test_dimension_mismatch_names_stage(self):
        cfg = _config()
        channels = generate_channels(cfg, 3)
        ris = RisConfiguration(phases=(np.eye(8, dtype=complex),
                                       np.eye(4, dtype=complex)))
        with pytest.raises(ValueError, match="stage|2|dimension"):
            compose_cascade(channels, ris)


class TestChannelSet:
    def test_needs_two_links(self):
        with pytest.raises(ValueError):
            ChannelSet(matrices=(np.eye(2, dtype=complex),))
