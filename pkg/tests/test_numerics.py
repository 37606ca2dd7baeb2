"""Numerical kernels against independent oracles: scipy's digamma, a
bisection water-filler, and Monte Carlo Wishart moments."""

import math

import numpy as np
import pytest
import scipy.special

from casris.numerics import (
    SvdTriple,
    WishartParams,
    digamma,
    logdet_capacity,
    svd,
    waterfill,
    wishart_eig_moment,
)

EULER_GAMMA = 0.5772156649015329


def _random_complex(rng, rows, cols):
    return (rng.standard_normal((rows, cols))
            + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2.0)


class TestSvd:
    @pytest.mark.parametrize("rows,cols", [(1, 1), (3, 3), (5, 2), (2, 5), (8, 4)])
    def test_reconstruction(self, rows, cols):
        rng = np.random.default_rng(42)
        a = _random_complex(rng, rows, cols)
        triple = svd(a)
        assert np.linalg.norm(triple.reconstruct() - a) <= 1e-12 * max(
            1.0, np.linalg.norm(a)
        )

    @pytest.mark.parametrize("rows,cols", [(4, 4), (6, 3), (3, 6)])
    def test_factors_unitary_and_sorted(self, rows, cols):
        rng = np.random.default_rng(3)
        a = _random_complex(rng, rows, cols)
        t = svd(a)
        assert t.U.shape == (rows, rows)
        assert t.V.shape == (cols, cols)
        assert np.allclose(t.U.conj().T @ t.U, np.eye(rows), atol=1e-12)
        assert np.allclose(t.V.conj().T @ t.V, np.eye(cols), atol=1e-12)
        assert np.all(np.diff(t.S) <= 1e-15)
        assert np.all(t.S >= 0)

    def test_phase_convention_pins_u_columns(self):
        rng = np.random.default_rng(11)
        a = _random_complex(rng, 5, 5)
        t = svd(a)
        for col in t.U.T:
            lead = col[np.abs(col) > 1e-12][0]
            assert abs(lead.imag) <= 1e-12
            assert lead.real >= 0

    def test_deterministic(self):
        rng = np.random.default_rng(5)
        a = _random_complex(rng, 6, 4)
        t1 = svd(a)
        t2 = svd(a.copy())
        assert np.array_equal(t1.U, t2.U)
        assert np.array_equal(t1.S, t2.S)
        assert np.array_equal(t1.V, t2.V)

    def test_real_input(self):
        a = np.array([[3.0, 0.0], [0.0, 2.0]])
        t = svd(a)
        assert np.allclose(t.S, [3.0, 2.0])
        assert np.allclose(t.reconstruct(), a)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            svd(np.zeros((0, 3)))
        with pytest.raises(ValueError):
            svd(np.array([[np.nan, 1.0]]))
        with pytest.raises(ValueError):
            svd(np.ones(4))


def _waterfill_bisection(eigs, noise_var, p_t):
    """Independent reference: bisect the water level until the budget binds."""
    inv = noise_var / np.asarray(eigs, dtype=float)
    lo, hi = 0.0, inv.max() + p_t + 1.0
    for _ in range(200):
        mid = (lo + hi) / 2.0
        spent = np.clip(mid - inv, 0.0, None).sum()
        if spent > p_t:
            hi = mid
        else:
            lo = mid
    return np.clip((lo + hi) / 2.0 - inv, 0.0, None)


class TestWaterfill:
    def test_two_stream_handoff(self):
        res = waterfill([4.0, 1.0], 1.0, 1.0)
        assert res.powers == pytest.approx([0.875, 0.125], abs=1e-12)
        assert res.water_level == pytest.approx(1.125, abs=1e-12)
        assert res.active_streams == 2

    def test_weak_stream_shut_off(self):
        res = waterfill([10.0, 0.01], 1.0, 0.5)
        assert res.active_streams == 1
        assert res.powers[1] == 0.0
        assert res.powers[0] == pytest.approx(0.5, abs=1e-14)

    def test_single_stream_gets_everything(self):
        res = waterfill([0.3], 2.0, 5.0)
        assert res.powers[0] == pytest.approx(5.0)
        assert res.active_streams == 1

    def test_matches_bisection_oracle(self):
        rng = np.random.default_rng(123)
        for _ in range(200):
            size = int(rng.integers(1, 10))
            eigs = 10.0 ** rng.uniform(-2, 2, size)
            noise = float(10.0 ** rng.uniform(-1, 1))
            p_t = float(10.0 ** rng.uniform(-1, 2))
            res = waterfill(eigs, noise, p_t)
            ref = _waterfill_bisection(eigs, noise, p_t)
            assert res.powers == pytest.approx(ref, abs=1e-6)
            assert res.powers.sum() == pytest.approx(p_t, abs=1e-10)

    def test_kkt_conditions(self):
        rng = np.random.default_rng(7)
        eigs = 10.0 ** rng.uniform(-1, 1, 6)
        res = waterfill(eigs, 1.0, 3.0)
        inv = 1.0 / eigs
        active = res.powers > 0
        assert np.all(
            np.abs(res.powers[active] + inv[active] - res.water_level) <= 1e-9
        )
        assert np.all(inv[~active] >= res.water_level - 1e-9)

    def test_unsorted_input_order_preserved(self):
        res = waterfill([1.0, 4.0], 1.0, 1.0)
        assert res.powers == pytest.approx([0.125, 0.875], abs=1e-12)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            waterfill([], 1.0, 1.0)
        with pytest.raises(ValueError):
            waterfill([1.0, -2.0], 1.0, 1.0)
        with pytest.raises(ValueError):
            waterfill([1.0], 0.0, 1.0)
        with pytest.raises(ValueError):
            waterfill([1.0], 1.0, -1.0)


class TestDigamma:
    def test_reference_points(self):
        assert digamma(1.0) == pytest.approx(-EULER_GAMMA, abs=1e-10)
        assert digamma(0.5) == pytest.approx(-EULER_GAMMA - 2.0 * math.log(2.0),
                                             abs=1e-10)
        assert digamma(1.0) == pytest.approx(-0.5772156649, abs=1e-9)
        assert digamma(0.5) == pytest.approx(-1.9635100260, abs=1e-9)

    def test_against_scipy(self):
        xs = np.concatenate([
            np.linspace(1e-3, 1.0, 300),
            np.linspace(1.0, 30.0, 300),
            np.linspace(30.0, 500.0, 100),
        ])
        ours = np.array([digamma(x) for x in xs])
        ref = scipy.special.digamma(xs)
        assert np.max(np.abs(ours - ref)) <= 1e-10

    def test_recurrence(self):
        for x in np.linspace(0.05, 40.0, 400):
            assert digamma(x + 1.0) - digamma(x) == pytest.approx(1.0 / x,
                                                                  abs=1e-10)

    def test_half_integers(self):
        # psi(n + 1/2) = -gamma - 2 ln 2 + 2 sum_{k=1}^{n} 1/(2k-1)
        for n in range(1, 6):
            expected = -EULER_GAMMA - 2.0 * math.log(2.0) + 2.0 * sum(
                1.0 / (2 * k - 1) for k in range(1, n + 1)
            )
            assert digamma(n + 0.5) == pytest.approx(expected, abs=1e-10)

    def test_rejects_nonpositive(self):
        for bad in (0.0, -1.0, -0.5, math.nan):
            with pytest.raises(ValueError):
                digamma(bad)


class TestWishartMoments:
    @pytest.mark.parametrize("dim,dof", [(1, 1), (2, 2), (2, 4), (4, 8), (8, 8)])
    def test_trace_identities(self, dim, dof):
        params = WishartParams(dim=dim, dof=dof)
        assert wishart_eig_moment(1, params) == dof
        assert wishart_eig_moment(2, params) == dof * (dim + dof)

    def test_monte_carlo_oracle(self):
        rng = np.random.default_rng(99)
        dim, dof, samples = 4, 6, 200_000
        x = _random_complex(rng, samples * dim, dof).reshape(samples, dim, dof)
        tr1 = np.sum(np.abs(x) ** 2, axis=(1, 2))
        w = x @ np.conjugate(np.swapaxes(x, 1, 2))
        tr2 = np.sum(np.abs(w) ** 2, axis=(1, 2))
        params = WishartParams(dim=dim, dof=dof)
        assert float(np.mean(tr1)) / dim == pytest.approx(
            wishart_eig_moment(1, params), rel=0.01
        )
        assert float(np.mean(tr2)) / dim == pytest.approx(
            wishart_eig_moment(2, params), rel=0.01
        )

    def test_unsupported_order(self):
        params = WishartParams(dim=2, dof=3)
        with pytest.raises(ValueError):
            wishart_eig_moment(3, params)
        with pytest.raises(ValueError):
            wishart_eig_moment(0, params)

    def test_scale_must_be_identity(self):
        params = WishartParams(dim=2, dof=3, scale_logdet=1.0)
        with pytest.raises(ValueError):
            wishart_eig_moment(1, params)

    def test_params_validation(self):
        with pytest.raises(ValueError):
            WishartParams(dim=0, dof=1)
        with pytest.raises(ValueError):
            WishartParams(dim=4, dof=2)


class TestLogdetCapacity:
    def test_identity_channel(self):
        h = np.eye(3, dtype=complex)
        q = 2.0 * np.eye(3, dtype=complex)
        assert logdet_capacity(h, q, 1.0) == pytest.approx(3.0 * math.log2(3.0))

    def test_eigenvalue_oracle(self):
        rng = np.random.default_rng(17)
        for _ in range(30):
            k, m = int(rng.integers(1, 5)), int(rng.integers(1, 5))
            h = _random_complex(rng, k, m)
            b = _random_complex(rng, m, m)
            q = b @ b.conj().T
            noise = float(10.0 ** rng.uniform(-1, 1))
            gram = h @ q @ h.conj().T
            eigs = np.clip(np.linalg.eigvalsh((gram + gram.conj().T) / 2), 0, None)
            expected = float(np.sum(np.log2(1.0 + eigs / noise)))
            assert logdet_capacity(h, q, noise) == pytest.approx(expected,
                                                                 abs=1e-9)

    def test_noise_scaling_decreases_capacity(self):
        rng = np.random.default_rng(2)
        h = _random_complex(rng, 3, 3)
        q = np.eye(3, dtype=complex)
        assert logdet_capacity(h, q, 1.0) > logdet_capacity(h, q, 4.0)

    def test_rejects_non_psd_precoder(self):
        h = np.eye(2, dtype=complex)
        q = np.diag([1.0, -0.5]).astype(complex)
        with pytest.raises(ValueError):
            logdet_capacity(h, q, 1.0)

    def test_zero_channel(self):
        h = np.zeros((2, 3), dtype=complex)
        q = np.eye(3, dtype=complex)
        assert logdet_capacity(h, q, 1.0) == pytest.approx(0.0, abs=1e-15)
