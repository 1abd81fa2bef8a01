"""Tests for the linear-complexity detector against direct computation."""

import numpy as np
import pytest

from sisodet import (
    brute_force_maxlog,
    build_constellation,
    candidate_metric,
    clamp,
    detect,
    generate_channel,
    llrs_from_metrics,
    make_channel,
    quadratic_norm,
    residual_statistic,
    transmit,
    uniform_priors,
    whiten,
)
from sisodet.channel import WhitenedObservation
from helpers import random_tone


def _noiseless_obs(rng, const, n_rx=2):
    ch = make_channel(generate_channel(rng, n_rx, 2), np.eye(n_rx) * 0.05)
    bits = rng.integers(0, 2, size=(2, const.q))
    idx = [int("".join(map(str, row)), 2) for row in bits]
    s = const.symbols[idx]
    obs = whiten(transmit(s, ch, np.zeros(n_rx)), ch)
    return obs, bits, s


class TestResidualStatistic:
    def test_perfect_cancellation_recovers_partner(self):
        """With no noise and the true symbol canceled, Z is the partner."""
        rng = np.random.default_rng(40)
        const = build_constellation(16)
        obs, _, s = _noiseless_obs(rng, const)
        z = residual_statistic(obs, 1, s[0])
        np.testing.assert_allclose(z, s[1], atol=1e-12)
        z = residual_statistic(obs, 2, s[1])
        np.testing.assert_allclose(z, s[0], atol=1e-12)

    def test_orthogonal_layers_independent_of_hypothesis(self):
        """Orthogonal signatures decouple the layers entirely."""
        Hbar = np.array([[1.0, 0.0], [0.0, 1.0]], dtype=complex)
        ch = make_channel(Hbar, np.eye(2))
        obs = whiten(np.array([0.3 + 1j, -0.7j]), ch)
        values = {residual_statistic(obs, 1, s) for s in (0, 1 + 1j, -2j, 0.5)}
        assert len({complex(np.round(v, 12)) for v in values}) == 1

    def test_decomposes_pair_energy(self):
        """gain*|Z - partner|^2 plus a partner-free rest equals the full
        residual energy, for every partner symbol."""
        rng = np.random.default_rng(41)
        const = build_constellation(16)
        for _ in range(20):
            obs, _, _, _, _, _ = random_tone(rng, const, rho=0.5, mu=2.0)
            s1 = rng.choice(const.symbols)
            z = residual_statistic(obs, 1, s1)
            partial = obs.y - obs.h1 * s1
            rest = np.sum(np.abs(partial) ** 2) - obs.gain2 * abs(z) ** 2
            for s2 in const.symbols:
                full = np.sum(np.abs(partial - obs.h2 * s2) ** 2)
                recomposed = obs.gain2 * abs(z - s2) ** 2 + rest
                np.testing.assert_allclose(recomposed, full, atol=1e-9)

    def test_bad_layer(self):
        rng = np.random.default_rng(42)
        obs, _, _, _, _, _ = random_tone(rng, build_constellation(4))
        with pytest.raises(ValueError):
            residual_statistic(obs, 3, 0j)


class TestCandidateMetric:
    def test_true_pair_zero_priors_noiseless(self):
        """Zero priors, no noise, true pair: the metric vanishes."""
        rng = np.random.default_rng(43)
        const = build_constellation(16)
        obs, bits, _ = _noiseless_obs(rng, const)
        idx = [int("".join(map(str, row)), 2) for row in bits]
        llrs = uniform_priors(const.q)
        eta = candidate_metric(obs, const, llrs, idx[0], idx[1], 1)
        assert abs(eta) <= 1e-12

    def test_zero_priors_never_positive(self):
        rng = np.random.default_rng(44)
        const = build_constellation(16)
        obs, _, _, _, _, _ = random_tone(rng, const)
        llrs = uniform_priors(const.q)
        for _ in range(50):
            i, j = rng.integers(0, const.M, 2)
            assert candidate_metric(obs, const, llrs, i, j, 1) <= 0

    def test_matches_quadratic_norm_route(self):
        """Metric recomputed through the weighted-norm module agrees."""
        rng = np.random.default_rng(45)
        const = build_constellation(16)
        for _ in range(20):
            obs, llrs, _, ch, y, _ = random_tone(rng, const, rho=0.5, mu=4.0)
            i, j = rng.integers(0, const.M, 2)
            eta = candidate_metric(obs, const, llrs, i, j, 1)
            prior = (
                const.labels[i].astype(float) @ llrs.values[0]
                + const.labels[j].astype(float) @ llrs.values[1]
            )
            residual = y - ch.effective_channel @ const.symbols[[i, j]]
            expected = prior - quadratic_norm(residual, ch.noise_precision)
            np.testing.assert_allclose(eta, expected, atol=1e-10)


class TestLlrsFromMetrics:
    def test_all_equal_metrics_zero_llrs(self):
        const = build_constellation(16)
        out = llrs_from_metrics(np.full(16, 2.5), const.labels)
        np.testing.assert_array_equal(out, np.zeros(4))

    def test_unique_maximum_dominates_signs(self):
        """L(c_n) >= 0 exactly when the best symbol has bit n set."""
        const = build_constellation(64)
        rng = np.random.default_rng(46)
        metrics = rng.uniform(-10, 0, 64)
        k0 = rng.integers(0, 64)
        metrics[k0] = 5.0
        out = llrs_from_metrics(metrics, const.labels)
        for n in range(6):
            assert (out[n] >= 0) == bool(const.labels[k0, n])

    def test_matches_two_pass_scan(self):
        """Exact agreement with an index-by-index max scan."""
        const = build_constellation(16)
        rng = np.random.default_rng(47)
        for _ in range(50):
            metrics = rng.uniform(-20, 20, 16)
            out = llrs_from_metrics(metrics, const.labels)
            for n in range(4):
                best = [-np.inf, -np.inf]
                for k in range(16):
                    b = const.labels[k, n]
                    best[b] = max(best[b], metrics[k])
                assert out[n] == best[1] - best[0]

    def test_constant_shift_invariance(self):
        const = build_constellation(16)
        rng = np.random.default_rng(48)
        metrics = rng.uniform(-5, 5, 16)
        base = llrs_from_metrics(metrics, const.labels)
        shifted = llrs_from_metrics(metrics + 2.0, const.labels)
        np.testing.assert_allclose(shifted, base, atol=1e-12)


class TestDetect:
    def test_high_snr_zero_prior_signs(self):
        """Noiseless, well-conditioned: LLR signs recover every bit."""
        rng = np.random.default_rng(49)
        const = build_constellation(16)
        obs, bits, _ = _noiseless_obs(rng, const)
        result = detect(obs, const, uniform_priors(const.q))
        np.testing.assert_array_equal((result.llrs > 0).astype(int), bits)

    def test_metric_counts_16qam(self):
        """2M candidate metrics, 2(M - sqrt(M)) thresholds, 4M - 2 sqrt(M) total."""
        rng = np.random.default_rng(50)
        const = build_constellation(16)
        obs, llrs, _, _, _, _ = random_tone(rng, const, mu=1.0)
        result = detect(obs, const, llrs)
        assert result.candidate_metric_count == 32
        assert result.boundary_count <= 24
        assert result.total_metric_count <= 56

    @pytest.mark.parametrize("M", [4, 16, 64])
    def test_matches_brute_force(self, M):
        """Randomized battery: LLRs equal the exhaustive search."""
        const = build_constellation(M)
        worst = 0.0
        for t in range(300):
            rng = np.random.default_rng([51, M, t])
            rho = (0.0, 0.5)[t % 2]
            mu = (0.0, 1.0, 4.0, 16.0)[(t // 2) % 4]
            snr = (0.0, 10.0, 20.0)[(t // 8) % 3]
            obs, llrs, _, _, _, _ = random_tone(
                rng, const, snr_db=snr, rho=rho, mu=mu
            )
            result = detect(obs, const, llrs)
            reference = brute_force_maxlog(obs, const, llrs)
            worst = max(worst, float(np.max(np.abs(result.llrs - reference))))
        assert worst <= 1e-6

    def test_zero_prior_equals_zero_prior_brute(self):
        rng = np.random.default_rng(52)
        const = build_constellation(64)
        obs, _, _, _, _, _ = random_tone(rng, const, rho=0.5)
        llrs = uniform_priors(const.q)
        result = detect(obs, const, llrs)
        reference = brute_force_maxlog(obs, const, llrs)
        np.testing.assert_allclose(result.llrs, reference, atol=1e-9)

    def test_layer_swap_transposes_output(self):
        """Swapping signatures and LLR rows swaps the output rows."""
        rng = np.random.default_rng(53)
        const = build_constellation(16)
        obs, llrs, _, _, _, _ = random_tone(rng, const, rho=0.5, mu=2.0)
        swapped_obs = WhitenedObservation(
            y=obs.y, h1=obs.h2, h2=obs.h1, gain1=obs.gain2, gain2=obs.gain1
        )
        swapped_llrs = clamp(llrs.values[::-1])
        base = detect(obs, const, llrs)
        swapped = detect(swapped_obs, const, swapped_llrs)
        np.testing.assert_allclose(swapped.llrs, base.llrs[::-1], atol=1e-9)

    def test_counts_drop_when_pruning_fires(self):
        """Strong one-sided feedback empties two amplitudes on one axis."""
        rng = np.random.default_rng(54)
        const = build_constellation(16)
        obs, _, _, _, _, _ = random_tone(rng, const)
        # layer-2 real axis log-priors become (0, -40, -40, 0)
        llrs = clamp(np.array([[0.0] * 4, [0.0, -40.0, 0.0, 0.0]]))
        result = detect(obs, const, llrs)
        assert result.total_metric_count < 56
        reference = brute_force_maxlog(obs, const, llrs)
        np.testing.assert_allclose(result.llrs, reference, atol=1e-9)

    def test_nan_inputs_rejected(self):
        rng = np.random.default_rng(55)
        const = build_constellation(4)
        obs, llrs, _, _, _, _ = random_tone(rng, const)
        bad = WhitenedObservation(
            y=np.array([np.nan + 0j, 0j]),
            h1=obs.h1,
            h2=obs.h2,
            gain1=obs.gain1,
            gain2=obs.gain2,
        )
        with pytest.raises(ValueError):
            detect(bad, const, llrs)
