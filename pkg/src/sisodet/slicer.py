"""Prior-shifted decision regions over one PAM axis.

Maximizing ``logp[k]/gain - (z - x[k])**2`` over the amplitudes ``x[k]``
is a one-dimensional slicing problem: every pair (k, j) defines one
threshold where the two scores cross, and each amplitude wins on an
interval (possibly empty).  With no prior information the thresholds are
the midpoints between neighbors; priors shift each threshold toward the
less likely amplitude.

A threshold shift can be large enough that an amplitude's interval
vanishes entirely: whenever the binding lower threshold of ``x[k]`` comes
from a non-adjacent amplitude ``x[j]``, everything strictly between k and
j can never win, and the region builder flags those amplitudes and walks
past them, leaving the thresholds among skipped amplitudes unevaluated.
The number of pairwise thresholds actually evaluated is reported so
detection cost can be audited.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constellation import PamAxis
from .priors import AxisLogPriors


@dataclass
class DecisionRegions:
    """Interval table for one axis: amplitude k wins on [lower_k, upper_k).

    Amplitudes are indexed as in PamAxis (descending).  The largest
    amplitude has upper = +inf, the smallest lower = -inf.  Skipped
    amplitudes are flagged empty and carry NaN bounds.  A decision
    statistic equal to a shared threshold belongs to the higher-amplitude
    side, matching the lowest-index tie-break of the score argmax.

    ``boundary_count`` is the number of distinct pairwise thresholds
    evaluated while building the table (at most L(L-1)/2).
    """

    lower: np.ndarray
    upper: np.ndarray
    empty: np.ndarray
    gain: float
    boundary_count: int
    _owners: np.ndarray = field(repr=False, default=None)
    _ascending_bounds: np.ndarray = field(repr=False, default=None)


def _logp_array(logp) -> np.ndarray:
    arr = logp.logp if isinstance(logp, AxisLogPriors) else np.asarray(logp, float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("axis log-priors must be finite")
    return arr


def pairwise_boundary(pam: PamAxis, k: int, j: int, logp, gain: float) -> float:
    """Score crossover between amplitudes k and j; symmetric in (k, j).

    The midpoint of the two amplitudes, shifted against the log-prior
    difference and inversely with the gain and the amplitude separation.
    """
    if k == j:
        raise ValueError("boundary requires two distinct amplitudes")
    if gain <= 0:
        raise ValueError(f"gain must be positive, got {gain}")
    lp = _logp_array(logp)
    xk = float(pam.points[k])
    xj = float(pam.points[j])
    return (xk + xj) / 2.0 - (float(lp[k]) - float(lp[j])) / (
        2.0 * (xk - xj) * gain
    )


def build_regions(pam: PamAxis, logp, gain: float) -> DecisionRegions:
    """Build the interval table for one axis, skipping empty regions.

    Walks the amplitudes from the largest down.  At each surviving
    amplitude the lower threshold is the max crossover with all smaller
    amplitudes and the upper threshold the min crossover with all larger
    ones (already-skipped amplitudes included; they can never tighten a
    survivor's interval).  When the binding lower crossover comes from a
    non-adjacent amplitude, the amplitudes in between are flagged empty
    and the walk jumps past them.  Crossovers are cached so each pair is
    evaluated at most once; pairs between two skipped amplitudes are
    never evaluated at all.
    """
    if gain <= 0:
        raise ValueError(f"gain must be positive, got {gain}")
    lp = _logp_array(logp)
    L = pam.L
    if L < 2:
        raise ValueError("need at least two amplitudes to slice")
    if lp.size != L:
        raise ValueError(f"expected {L} log-priors, got {lp.size}")

    x = [float(v) for v in pam.points]
    p = [float(v) for v in lp]
    gain = float(gain)
    cache: dict[tuple[int, int], float] = {}
    count = 0

    def crossover(k: int, j: int) -> float:
        # Same floating expression as pairwise_boundary, cached per pair.
        nonlocal count
        key = (k, j) if k < j else (j, k)
        d = cache.get(key)
        if d is None:
            d = (x[k] + x[j]) / 2.0 - (p[k] - p[j]) / (2.0 * (x[k] - x[j]) * gain)
            cache[key] = d
            count += 1
        return d

    lower = np.full(L, np.nan)
    upper = np.full(L, np.nan)
    empty = np.zeros(L, dtype=bool)

    k = 0
    while k <= L - 1:
        j_star = k + 1
        if k < L - 1:
            best = crossover(k, k + 1)
            for j in range(k + 2, L):
                d = crossover(k, j)
                if d > best:
                    best = d
                    j_star = j
            lower[k] = best
        else:
            lower[k] = -np.inf
        if k > 0:
            upper[k] = min(crossover(k, j) for j in range(k))
        else:
            upper[k] = np.inf
        if k < L - 1 and j_star > k + 1:
            empty[k + 1 : j_star] = True
            k = j_star
        else:
            k += 1

    owners = np.flatnonzero(~empty)
    regions = DecisionRegions(
        lower=lower,
        upper=upper,
        empty=empty,
        gain=float(gain),
        boundary_count=count,
    )
    regions._owners = owners
    # Lower thresholds of the surviving amplitudes, smallest (-inf) dropped,
    # ascending, ready for searchsorted.
    regions._ascending_bounds = lower[owners[:-1]][::-1].copy()
    return regions


def slice_statistic(regions: DecisionRegions, z):
    """Amplitude index whose interval contains z (vectorized over z).

    Equivalent to the score argmax over all amplitudes; a z exactly on a
    shared threshold goes to the higher-amplitude side.
    """
    bounds = regions._ascending_bounds
    owners = regions._owners
    cell = bounds.size - np.searchsorted(bounds, z, side="right")
    result = owners[cell]
    return int(result) if np.ndim(z) == 0 else result


def argmax_slice_oracle(pam: PamAxis, logp, gain: float, z):
    """Direct argmax of logp[k]/gain - (z - x[k])**2 over all amplitudes.

    Test oracle for the interval table: evaluates every score instead of
    slicing.  Ties go to the lowest index (the higher amplitude), the
    same convention slice_statistic uses at thresholds.  Vectorized over
    z.
    """
    if gain <= 0:
        raise ValueError(f"gain must be positive, got {gain}")
    lp = _logp_array(logp)
    z_arr = np.atleast_1d(np.asarray(z, dtype=float))
    scores = lp[:, None] / gain - (z_arr[None, :] - pam.points[:, None]) ** 2
    result = np.argmax(scores, axis=0)
    return int(result[0]) if np.ndim(z) == 0 else result
