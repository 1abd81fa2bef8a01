"""Dual-layer narrowband channel model, noise generation, and whitening.

One tone obeys ``y = H s + n`` with ``H`` the effective channel (physical
channel times precoder), ``s`` two unit-energy QAM symbols, and ``n``
zero-mean complex Gaussian noise with covariance ``C``.  The detector
consumes only whitened quantities, where the noise-precision-weighted
norm becomes a plain Euclidean norm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import cholesky_factor

DEGENERATE_GAIN = 1e-14


@dataclass(frozen=True)
class ChannelRealization:
    """Per-tone channel state known to the receiver.

    Attributes:
        physical_channel: ``(N_r, N_t)`` matrix of antenna gains.
        precoder: ``(N_t, 2)`` mapping of the two layers onto antennas.
        effective_channel: ``physical_channel @ precoder``, columns are
            the per-layer signatures.
        noise_precision: Inverse of the noise covariance (Hermitian PD).
    """

    physical_channel: np.ndarray
    precoder: np.ndarray
    effective_channel: np.ndarray
    noise_precision: np.ndarray


@dataclass(frozen=True)
class WhitenedObservation:
    """Received vector and layer signatures after noise whitening.

    ``gain1``/``gain2`` cache the squared norms of the whitened layer
    signatures; they are the slicer gains.
    """

    y: np.ndarray
    h1: np.ndarray
    h2: np.ndarray
    gain1: float
    gain2: float


def default_precoder(n_tx: int) -> np.ndarray:
    """Two-column antenna selection (identity when n_tx == 2)."""
    if n_tx < 2:
        raise ValueError("need at least two transmit antennas for two layers")
    return np.eye(n_tx, 2, dtype=complex)


def make_channel(
    physical_channel, noise_covariance, precoder=None
) -> ChannelRealization:
    """Assemble a ChannelRealization from channel and noise covariance.

    The noise interface is the covariance because that is what simulator
    users reason about; the stored state is its inverse, which the
    whitener factors.
    """
    Hbar = np.asarray(physical_channel, dtype=complex)
    C = np.asarray(noise_covariance, dtype=complex)
    if precoder is None:
        precoder = default_precoder(Hbar.shape[1])
    W = np.asarray(precoder, dtype=complex)
    cholesky_factor(C)  # reject non-PD covariances early, with the pivot named
    Q = np.linalg.inv(C)
    Q = 0.5 * (Q + Q.conj().T)
    return ChannelRealization(
        physical_channel=Hbar,
        precoder=W,
        effective_channel=Hbar @ W,
        noise_precision=Q,
    )


def transmit(s, ch: ChannelRealization, n) -> np.ndarray:
    """Received vector h1*s1 + h2*s2 + n for one tone."""
    s = np.asarray(s, dtype=complex).ravel()
    if s.size != 2:
        raise ValueError("expected exactly two layer symbols")
    return ch.effective_channel @ s + np.asarray(n, dtype=complex).ravel()


def whiten(y, ch: ChannelRealization) -> WhitenedObservation:
    """Whiten the observation and cache the per-layer slicer gains.

    With ``G G^H`` equal to the noise precision, multiplying by ``G^H``
    turns the precision-weighted residual norm into a Euclidean one.

    Raises:
        ValueError: If a whitened layer signature is numerically zero,
            since the detector divides by its squared norm.
    """
    G = cholesky_factor(ch.noise_precision)
    GH = G.conj().T
    y_t = GH @ np.asarray(y, dtype=complex).ravel()
    h1 = GH @ ch.effective_channel[:, 0]
    h2 = GH @ ch.effective_channel[:, 1]
    gain1 = float(np.vdot(h1, h1).real)
    gain2 = float(np.vdot(h2, h2).real)
    if gain1 < DEGENERATE_GAIN or gain2 < DEGENERATE_GAIN:
        raise ValueError(
            f"degenerate channel: whitened layer gains {gain1:.3e}, {gain2:.3e}"
        )
    for arr in (y_t, h1, h2):
        arr.flags.writeable = False
    return WhitenedObservation(y=y_t, h1=h1, h2=h2, gain1=gain1, gain2=gain2)


def generate_channel(rng: np.random.Generator, n_rx: int, n_tx: int) -> np.ndarray:
    """Draw an i.i.d. circularly-symmetric Gaussian channel matrix."""
    return (
        rng.standard_normal((n_rx, n_tx)) + 1j * rng.standard_normal((n_rx, n_tx))
    ) / np.sqrt(2.0)


def generate_noise(rng: np.random.Generator, noise_covariance) -> np.ndarray:
    """Draw one zero-mean complex Gaussian vector with the given covariance."""
    C = np.asarray(noise_covariance, dtype=complex)
    G = cholesky_factor(C)
    n = C.shape[0]
    w = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2.0)
    return G @ w
