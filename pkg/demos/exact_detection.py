"""One tone end to end: the sliced detector against the exhaustive search.

Draws a random dual-layer transmission with correlated noise and genie
feedback, detects it both ways, and shows that the soft outputs are
identical while the metric counts differ by more than an order of
magnitude.
"""

import numpy as np

from sisodet import (
    bits_to_symbol,
    brute_force_maxlog,
    build_constellation,
    detect,
    generate_channel,
    generate_noise,
    genie_priors,
    make_channel,
    transmit,
    whiten,
)
from sisodet.simcli import noise_covariance, sigma2_from_snr_db

rng = np.random.default_rng(2024)
M = 64
const = build_constellation(M)

# Channel: 2x2, correlated noise at 12 dB SNR.
Hbar = generate_channel(rng, 2, 2)
C = noise_covariance(sigma2_from_snr_db(12.0), rho=0.5, n_rx=2)
ch = make_channel(Hbar, C)

# Transmit two random symbols.
bits = rng.integers(0, 2, size=(2, const.q))
s = np.array([bits_to_symbol(const, bits[0]), bits_to_symbol(const, bits[1])])
y = transmit(s, ch, generate_noise(rng, C))
obs = whiten(y, ch)

# Decoder feedback stand-in: LLRs drawn around the true bits.
llrs = genie_priors(rng, bits, mu=3.0)

result = detect(obs, const, llrs)
reference = brute_force_maxlog(obs, const, llrs)

print(f"{M}-QAM tone, true bits:")
print("  layer 1:", bits[0].tolist())
print("  layer 2:", bits[1].tolist())
print("\nsliced detector LLRs (rounded):")
print(np.round(result.llrs, 2))
print("\nexhaustive search LLRs (rounded):")
print(np.round(reference, 2))
print(f"\nmax |difference| = {np.max(np.abs(result.llrs - reference)):.3e}")

print("\nwork per tone:")
print(f"  sliced detector : {result.total_metric_count} metrics "
      f"({result.candidate_metric_count} candidates + {result.boundary_count} thresholds)")
print(f"  exhaustive      : {M * M} joint metrics")

# The agreement is not luck: sweep a batch of random tones.
worst = 0.0
for t in range(500):
    rng_t = np.random.default_rng([77, t])
    Hbar = generate_channel(rng_t, 2, 2)
    ch = make_channel(Hbar, C)
    bits = rng_t.integers(0, 2, size=(2, const.q))
    s = np.array([bits_to_symbol(const, bits[0]), bits_to_symbol(const, bits[1])])
    obs = whiten(transmit(s, ch, generate_noise(rng_t, C)), ch)
    llrs = genie_priors(rng_t, bits, mu=float(t % 5))
    d = np.max(np.abs(detect(obs, const, llrs).llrs - brute_force_maxlog(obs, const, llrs)))
    worst = max(worst, float(d))
print(f"\nworst disagreement over 500 random tones: {worst:.3e}")
