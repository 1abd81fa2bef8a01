"""Square QAM alphabets built from two orthogonal Gray-labeled PAM axes.

A square constellation of order ``M`` factors into two identical
``L``-point amplitude alphabets with ``L = sqrt(M)``: one for the real
part, one for the imaginary part.  The first half of a symbol's bit label
addresses the real axis, the second half the imaginary axis.  Everything
downstream (per-axis priors, slicing, detection) relies on this split.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

VALID_ORDERS = (4, 16, 64, 256)


@dataclass(frozen=True)
class PamAxis:
    """One amplitude axis of a square QAM constellation.

    Attributes:
        L: Number of amplitude levels (sqrt of the QAM order).
        points: Amplitudes in strictly descending order, scaled so the
            axis carries half of the unit symbol energy.
        spacing: Distance between adjacent amplitudes (uniform).
        labels: ``(L, q/2)`` array of bits; ``labels[k]`` is the
            binary-reflected Gray label of ``points[k]`` (MSB first), so
            adjacent amplitudes differ in exactly one bit.
    """

    L: int
    points: np.ndarray
    spacing: float
    labels: np.ndarray


@dataclass(frozen=True)
class Constellation:
    """Square M-QAM alphabet with per-axis Gray bit labels.

    ``symbols[k]`` carries the bit label ``labels[k]``, which is the
    ``q``-bit binary representation of ``k`` (MSB first).  Bits
    ``0 .. q/2-1`` select the real amplitude, bits ``q/2 .. q-1`` the
    imaginary amplitude.  Average symbol energy is one.
    """

    M: int
    q: int
    real_axis: PamAxis
    imag_axis: PamAxis
    symbols: np.ndarray
    labels: np.ndarray


def require_valid_order(M: int) -> None:
    """Raise ValueError unless M is a supported power of four."""
    if M not in VALID_ORDERS:
        raise ValueError(
            f"constellation order must be one of {VALID_ORDERS}, got {M!r}"
        )


def _gray_bits(index: int, width: int) -> list[int]:
    g = index ^ (index >> 1)
    return [(g >> (width - 1 - n)) & 1 for n in range(width)]


def _gray_decode(g: int) -> int:
    n = 0
    while g:
        n ^= g
        g >>= 1
    return n


def _build_axis(M: int) -> PamAxis:
    L = int(round(np.sqrt(M)))
    half_q = (M.bit_length() - 1) // 2
    # Amplitudes {L-1, L-3, ..., -(L-1)} scaled for unit total symbol energy.
    scale = 1.0 / np.sqrt(2.0 * (M - 1) / 3.0)
    points = np.arange(L - 1, -L, -2, dtype=float) * scale
    labels = np.array([_gray_bits(k, half_q) for k in range(L)], dtype=np.uint8)
    points.flags.writeable = False
    labels.flags.writeable = False
    return PamAxis(L=L, points=points, spacing=2.0 * scale, labels=labels)


def build_constellation(M: int) -> Constellation:
    """Construct the unit-energy square M-QAM alphabet.

    Args:
        M: Constellation order, one of 4, 16, 64, 256.

    Returns:
        Constellation with symbols enumerated in bit-lexicographic label
        order.

    Raises:
        ValueError: If M is not a supported power of four.
    """
    require_valid_order(M)
    q = M.bit_length() - 1
    half_q = q // 2
    axis = _build_axis(M)

    symbols = np.empty(M, dtype=complex)
    labels = np.empty((M, q), dtype=np.uint8)
    for k in range(M):
        bits = [(k >> (q - 1 - n)) & 1 for n in range(q)]
        re_bits = bits[:half_q]
        im_bits = bits[half_q:]
        a = _gray_decode(int("".join(map(str, re_bits)), 2))
        b = _gray_decode(int("".join(map(str, im_bits)), 2))
        symbols[k] = axis.points[a] + 1j * axis.points[b]
        labels[k, :half_q] = axis.labels[a]
        labels[k, half_q:] = axis.labels[b]
    symbols.flags.writeable = False
    labels.flags.writeable = False
    return Constellation(
        M=M, q=q, real_axis=axis, imag_axis=axis, symbols=symbols, labels=labels
    )


def bits_to_symbol(c: Constellation, bits) -> complex:
    """Map a length-q bit vector to its constellation symbol."""
    bits = np.asarray(bits).ravel()
    if bits.size != c.q:
        raise ValueError(f"expected {c.q} bits, got {bits.size}")
    if not np.all((bits == 0) | (bits == 1)):
        raise ValueError("bit vector entries must be 0 or 1")
    index = 0
    for b in bits:
        index = (index << 1) | int(b)
    return complex(c.symbols[index])


def symbol_to_bits(c: Constellation, index: int) -> np.ndarray:
    """Return the bit label of the symbol at the given index."""
    if not 0 <= index < c.M:
        raise ValueError(f"symbol index {index} out of range [0, {c.M})")
    return c.labels[index].copy()
