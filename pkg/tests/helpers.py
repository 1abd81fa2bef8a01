"""Shared builders for randomized test instances."""

from __future__ import annotations

import numpy as np

from sisodet import (
    bits_to_symbol,
    generate_channel,
    generate_noise,
    genie_priors,
    make_channel,
    transmit,
    whiten,
)
from sisodet.simcli import noise_covariance, sigma2_from_snr_db


def random_hermitian_pd(rng: np.random.Generator, n: int, ridge: float = 0.1):
    """Well-conditioned random Hermitian positive-definite matrix."""
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return A @ A.conj().T + ridge * np.eye(n)


def random_tone(
    rng: np.random.Generator,
    const,
    n_rx: int = 2,
    n_tx: int = 2,
    snr_db: float = 10.0,
    rho: float = 0.0,
    mu: float = 0.0,
):
    """One random transmission: returns (obs, llrs, bits, channel, y, C)."""
    Hbar = generate_channel(rng, n_rx, n_tx)
    C = noise_covariance(sigma2_from_snr_db(snr_db), rho, n_rx)
    ch = make_channel(Hbar, C)
    bits = rng.integers(0, 2, size=(2, const.q))
    s = np.array([bits_to_symbol(const, bits[0]), bits_to_symbol(const, bits[1])])
    n = generate_noise(rng, C)
    y = transmit(s, ch, n)
    obs = whiten(y, ch)
    llrs = genie_priors(rng, bits, mu)
    return obs, llrs, bits, ch, y, C
