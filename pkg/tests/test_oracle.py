"""Tests for the exhaustive max-log and log-sum-exp references."""

import numpy as np
import pytest
from scipy.special import logsumexp

from sisodet import (
    brute_force_maxlog,
    build_constellation,
    clamp,
    log_map,
    make_channel,
    pair_metric_table,
    transmit,
    uniform_priors,
    whiten,
)
from helpers import random_tone


class TestBruteForce:
    def test_noiseless_sign_correct(self):
        rng = np.random.default_rng(60)
        const = build_constellation(4)
        ch = make_channel(
            np.array([[1.0, 0.2], [0.1, 1.0]], dtype=complex), np.eye(2) * 0.01
        )
        bits = rng.integers(0, 2, (2, 2))
        idx = [int("".join(map(str, b)), 2) for b in bits]
        obs = whiten(transmit(const.symbols[idx], ch, np.zeros(2)), ch)
        out = brute_force_maxlog(obs, const, uniform_priors(2))
        np.testing.assert_array_equal((out > 0).astype(int), bits)

    def test_joint_metric_count(self):
        """Exactly M^2 joint metrics are evaluated."""
        rng = np.random.default_rng(61)
        const = build_constellation(16)
        obs, llrs, _, _, _, _ = random_tone(rng, const)
        _, count = brute_force_maxlog(obs, const, llrs, with_count=True)
        assert count == 256

    def test_enumeration_order_invariant(self):
        """The result is a pure max, so recomputation is bit-identical."""
        rng = np.random.default_rng(62)
        const = build_constellation(16)
        obs, llrs, _, _, _, _ = random_tone(rng, const, mu=4.0)
        a = brute_force_maxlog(obs, const, llrs)
        b = brute_force_maxlog(obs, const, llrs)
        np.testing.assert_array_equal(a, b)


class TestLogMap:
    def test_converges_to_maxlog_at_high_snr(self):
        """One dominant pair: the soft sum collapses onto the max."""
        const = build_constellation(4)
        rng = np.random.default_rng(63)
        # orthogonal unit columns, noise variance 1e-4 -> gain/sigma^2 = 1e4
        ch = make_channel(np.eye(2, dtype=complex), np.eye(2) * 1e-4)
        bits = rng.integers(0, 2, (2, 2))
        idx = [int("".join(map(str, b)), 2) for b in bits]
        obs = whiten(transmit(const.symbols[idx], ch, np.zeros(2)), ch)
        llrs = uniform_priors(2)
        gap = np.abs(
            log_map(obs, const, llrs) - brute_force_maxlog(obs, const, llrs)
        )
        assert gap.max() <= 0.01

    def test_symmetric_boundary_bit_is_zero(self):
        """An observation on a bit's decision boundary has zero LLR."""
        const = build_constellation(4)
        ch = make_channel(np.eye(2, dtype=complex), np.eye(2))
        # real part of layer 1 exactly between the two amplitudes
        y = np.array([0.0 + 0.5j, 0.3 + 0.1j])
        obs = whiten(y, ch)
        out = log_map(obs, const, uniform_priors(2))
        assert abs(out[0, 0]) <= 1e-12

    def test_temperature_sweep_tightens_gap(self):
        """The scaled soft sum approaches the max as 2 log(M^2)/T."""
        const = build_constellation(16)
        rng = np.random.default_rng(64)
        obs, llrs, _, _, _, _ = random_tone(rng, const, mu=1.0)
        hard = brute_force_maxlog(obs, const, llrs)
        gaps = []
        for T in (1.0, 10.0, 100.0):
            soft = log_map(obs, const, llrs, temperature=T)
            gap = float(np.max(np.abs(soft - hard)))
            assert gap <= 2.0 * np.log(const.M**2) / T
            gaps.append(gap)
        assert gaps[2] < gaps[0]

    def test_jensen_relation_termwise(self):
        """Per hypothesis set, max metric never exceeds the log-sum-exp."""
        const = build_constellation(16)
        rng = np.random.default_rng(65)
        obs, llrs, _, _, _, _ = random_tone(rng, const, mu=2.0)
        table = pair_metric_table(obs, const, llrs)
        mask = const.labels.astype(bool)
        for n in range(const.q):
            for rows in (mask[:, n], ~mask[:, n]):
                assert table[rows, :].max() <= logsumexp(table[rows, :]) + 1e-12

    def test_nonpositive_temperature_rejected(self):
        rng = np.random.default_rng(66)
        const = build_constellation(4)
        obs, llrs, _, _, _, _ = random_tone(rng, const)
        with pytest.raises(ValueError):
            log_map(obs, const, llrs, temperature=0.0)
