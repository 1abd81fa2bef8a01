"""A-priori bit LLRs and their per-axis log-prior form.

The decoder-side information enters as one LLR per code bit,
``log P(c=1)/P(c=0)``.  For slicing, the LLRs of the bits addressing one
PAM axis collapse into one unnormalized log-prior per amplitude:
``logp[k] = sum_n b[n,k] * llr[n]``.  Only differences of these values
ever matter, so the normalization constant is never computed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constellation import PamAxis

L_MAX_DEFAULT = 50.0


@dataclass(frozen=True)
class AprioriLLRs:
    """Clamped a-priori LLRs, one row per layer, one column per bit."""

    values: np.ndarray
    l_max: float = L_MAX_DEFAULT


@dataclass(frozen=True)
class AxisLogPriors:
    """Unnormalized per-amplitude log-priors for one layer and axis."""

    layer: int
    axis: str
    logp: np.ndarray


def clamp(values, l_max: float = L_MAX_DEFAULT) -> AprioriLLRs:
    """Build AprioriLLRs, clamping magnitudes to l_max.

    Infinities clamp to +-l_max; NaN is rejected rather than propagated.
    """
    arr = np.array(values, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != 2:
        raise ValueError(f"expected a (2, q) LLR array, got shape {arr.shape}")
    if np.isnan(arr).any():
        raise ValueError("a-priori LLRs contain NaN")
    np.clip(arr, -l_max, l_max, out=arr)
    arr.flags.writeable = False
    return AprioriLLRs(values=arr, l_max=float(l_max))


def uniform_priors(q: int, l_max: float = L_MAX_DEFAULT) -> AprioriLLRs:
    """All-zero LLRs: no decoder information."""
    return clamp(np.zeros((2, q)), l_max)


def axis_log_priors(
    llrs: AprioriLLRs, layer: int, axis: str, pam: PamAxis
) -> AxisLogPriors:
    """Collapse one layer's axis bits into per-amplitude log-priors.

    Bits ``0 .. q/2-1`` of a layer address the real axis, bits
    ``q/2 .. q-1`` the imaginary axis.
    """
    if layer not in (1, 2):
        raise ValueError(f"layer must be 1 or 2, got {layer}")
    if axis not in ("real", "imag"):
        raise ValueError(f"axis must be 'real' or 'imag', got {axis!r}")
    row = llrs.values[layer - 1]
    half_q = row.size // 2
    bit_slice = row[:half_q] if axis == "real" else row[half_q:]
    logp = pam.labels.astype(float) @ bit_slice
    logp.flags.writeable = False
    return AxisLogPriors(layer=layer, axis=axis, logp=logp)


def genie_priors(
    rng: np.random.Generator,
    true_bits,
    mu: float,
    l_max: float = L_MAX_DEFAULT,
) -> AprioriLLRs:
    """Synthetic decoder feedback around the true bits.

    Each LLR is drawn from the consistent Gaussian model
    ``mu * (2c - 1) + N(0, 2 mu)``; ``mu`` is the reliability dial, with
    ``mu = 0`` giving no information and large ``mu`` near-perfect
    feedback.
    """
    if mu < 0:
        raise ValueError(f"reliability mu must be nonnegative, got {mu}")
    bits = np.asarray(true_bits, dtype=float)
    if bits.ndim != 2 or bits.shape[0] != 2:
        raise ValueError(f"expected (2, q) true bits, got shape {bits.shape}")
    noise = rng.standard_normal(bits.shape) * np.sqrt(2.0 * mu)
    return clamp(mu * (2.0 * bits - 1.0) + noise, l_max)
