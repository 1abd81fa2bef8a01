"""Monte-Carlo command-line harness for the dual-layer detector.

Subcommands:
    verify      run the fast detector and the exhaustive reference on the
                same random tones and fail on any LLR disagreement
    simulate    sweep SNR and feedback reliability, emitting one CSV row
                of BER and metric-count statistics per grid point
    regions     dump the four prior-shifted interval tables as CSV
    complexity  evaluate the closed-form operation-count model as CSV
                plus a formatted table

Decoder feedback is replaced by a genie: a-priori LLRs are drawn around
the true bits with a reliability dial ``mu`` (0 means no feedback).  All
randomness derives from (seed, point index, tone index), so any
invocation is reproducible byte for byte.  Exit codes: 0 success,
1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .channel import (
    ChannelRealization,
    WhitenedObservation,
    generate_channel,
    generate_noise,
    make_channel,
    transmit,
    whiten,
)
from .complexity import DETECTOR_KINDS, predicted_counts
from .constellation import Constellation, build_constellation, bits_to_symbol
from .detector import detect
from .oracle import brute_force_maxlog
from .priors import AprioriLLRs, axis_log_priors, clamp, genie_priors
from .slicer import build_regions

VERIFY_TOLERANCE = 1e-6


class UsageError(Exception):
    """Invalid configuration or malformed input; maps to exit code 2."""


@dataclass
class SimConfig:
    """Parameters of one harness invocation."""

    M: int = 16
    n_rx: int = 2
    n_tx: int = 2
    snr_db_list: tuple = (10.0,)
    mu_list: tuple = (0.0,)
    tones: int = 1000
    seed: int = 1
    rho: float = 0.0
    out: str | None = None
    verify_first: bool = True

    def validate(self) -> None:
        from .constellation import VALID_ORDERS

        if self.M not in VALID_ORDERS:
            raise UsageError(f"M must be one of {VALID_ORDERS}, got {self.M}")
        if self.n_rx < 2:
            raise UsageError(f"need at least 2 receive antennas, got {self.n_rx}")
        if self.n_tx < 2:
            raise UsageError(f"need at least 2 transmit antennas, got {self.n_tx}")
        if self.tones < 1:
            raise UsageError(f"tones must be at least 1, got {self.tones}")
        if not 0.0 <= self.rho < 1.0:
            raise UsageError(f"rho must lie in [0, 1), got {self.rho}")
        if any(mu < 0 for mu in self.mu_list):
            raise UsageError("mu values must be nonnegative")
        if not self.snr_db_list or not self.mu_list:
            raise UsageError("snr_db and mu lists must be non-empty")


@dataclass
class SimRecord:
    """One (snr, mu) grid point of a simulation sweep."""

    snr_db: float
    mu: float
    tones: int
    bit_errors_detector: int
    bit_errors_oracle: int
    ber: float
    mean_total_metric_count: float
    max_llr_discrepancy_vs_oracle: float


@dataclass
class ToneData:
    """Everything drawn for one tone, kept for failure dumps."""

    channel: ChannelRealization
    noise_covariance: np.ndarray
    bits: np.ndarray
    noise: np.ndarray
    y: np.ndarray
    obs: WhitenedObservation
    llrs: AprioriLLRs


def sigma2_from_snr_db(snr_db: float) -> float:
    """Per-antenna noise variance for a given SNR.

    SNR is total average signal power over total noise power: two
    unit-energy layers through a unit-variance channel put 2 N_r of
    signal power against N_r sigma^2 of noise, so sigma^2 = 2 / snr.
    """
    return 2.0 / (10.0 ** (snr_db / 10.0))


def noise_covariance(sigma2: float, rho: float, n_rx: int) -> np.ndarray:
    """Exponentially correlated noise covariance with unit-diagonal shape."""
    idx = np.arange(n_rx)
    return sigma2 * (rho ** np.abs(idx[:, None] - idx[None, :])).astype(complex)


def tone_rng(seed: int, point_index: int, tone_index: int) -> np.random.Generator:
    """Independent RNG stream for one tone of one grid point."""
    return np.random.default_rng([seed, point_index, tone_index])


def _run_tone(
    rng: np.random.Generator,
    const: Constellation,
    cfg: SimConfig,
    sigma2: float,
    mu: float,
) -> ToneData:
    Hbar = generate_channel(rng, cfg.n_rx, cfg.n_tx)
    C = noise_covariance(sigma2, cfg.rho, cfg.n_rx)
    ch = make_channel(Hbar, C)
    bits = rng.integers(0, 2, size=(2, const.q))
    s = np.array(
        [bits_to_symbol(const, bits[0]), bits_to_symbol(const, bits[1])]
    )
    n = generate_noise(rng, C)
    y = transmit(s, ch, n)
    obs = whiten(y, ch)
    llrs = genie_priors(rng, bits, mu)
    return ToneData(
        channel=ch,
        noise_covariance=C,
        bits=bits,
        noise=n,
        y=y,
        obs=obs,
        llrs=llrs,
    )


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _dump_tone(cfg: SimConfig, point: tuple, point_index: int, tone_index: int, data: ToneData) -> str:
    """Full inputs of one tone, precise enough to reproduce the failure."""
    lines = [
        f"offending tone: point_index={point_index} tone_index={tone_index}",
        f"point: snr_db={_fmt(point[0])} mu={_fmt(point[1])}",
        f"config: M={cfg.M} n_rx={cfg.n_rx} n_tx={cfg.n_tx} seed={cfg.seed} rho={_fmt(cfg.rho)}",
        f"physical_channel = {data.channel.physical_channel.tolist()!r}",
        f"precoder = {data.channel.precoder.tolist()!r}",
        f"noise_covariance = {data.noise_covariance.tolist()!r}",
        f"true_bits = {data.bits.tolist()!r}",
        f"noise = {data.noise.tolist()!r}",
        f"y = {data.y.tolist()!r}",
        f"apriori_llrs = {data.llrs.values.tolist()!r}",
    ]
    return "\n".join(lines)


def _point_grid(cfg: SimConfig) -> list[tuple[float, float]]:
    return [(snr, mu) for snr in cfg.snr_db_list for mu in cfg.mu_list]


def run_verify(cfg: SimConfig) -> tuple[int, str]:
    """Detector-versus-reference agreement battery.

    Every tone is detected both ways; the run passes only if all LLRs
    agree within 1e-6 and the metric counters obey the model (2M
    candidate metrics, total at most 4M - 2 sqrt(M)).  Returns (exit
    status, report text).
    """
    cfg.validate()
    const = build_constellation(cfg.M)
    ceiling = 4 * cfg.M - 2 * const.real_axis.L
    lines = [
        f"verify M={cfg.M} n_rx={cfg.n_rx} n_tx={cfg.n_tx} tones_per_point={cfg.tones} "
        f"seed={cfg.seed} rho={_fmt(cfg.rho)}"
    ]
    global_max = 0.0
    failure: str | None = None
    for p_idx, (snr_db, mu) in enumerate(_point_grid(cfg)):
        sigma2 = sigma2_from_snr_db(snr_db)
        point_max = 0.0
        metric_sum = 0
        for t_idx in range(cfg.tones):
            data = _run_tone(tone_rng(cfg.seed, p_idx, t_idx), const, cfg, sigma2, mu)
            result = detect(data.obs, const, data.llrs)
            reference = brute_force_maxlog(data.obs, const, data.llrs)
            disc = float(np.max(np.abs(result.llrs - reference)))
            point_max = max(point_max, disc)
            metric_sum += result.total_metric_count
            count_ok = (
                result.candidate_metric_count == 2 * cfg.M
                and result.total_metric_count <= ceiling
            )
            if (disc > VERIFY_TOLERANCE or not count_ok) and failure is None:
                reason = (
                    f"llr discrepancy {_fmt(disc)}"
                    if disc > VERIFY_TOLERANCE
                    else f"metric counts {result.candidate_metric_count}/{result.total_metric_count}"
                )
                failure = (
                    f"FAILURE: {reason}\n"
                    + _dump_tone(cfg, (snr_db, mu), p_idx, t_idx, data)
                )
        global_max = max(global_max, point_max)
        lines.append(
            f"point snr_db={_fmt(snr_db)} mu={_fmt(mu)}: tones={cfg.tones} "
            f"max_llr_discrepancy={_fmt(point_max)} "
            f"mean_total_metric_count={_fmt(metric_sum / cfg.tones)}"
        )
    lines.append(f"global max_llr_discrepancy = {_fmt(global_max)}")
    lines.append(f"tolerance = {_fmt(VERIFY_TOLERANCE)}")
    if failure is not None:
        lines.append(failure)
        lines.append("RESULT: FAIL")
        return 1, "\n".join(lines) + "\n"
    lines.append("RESULT: PASS")
    return 0, "\n".join(lines) + "\n"


SIM_CSV_HEADER = (
    "snr_db,mu,tones,bit_errors_detector,bit_errors_oracle,ber,"
    "mean_total_metric_count,max_llr_discrepancy_vs_oracle"
)


def run_simulate(cfg: SimConfig) -> tuple[int, list[SimRecord], str]:
    """Monte-Carlo sweep over the (snr, mu) grid.

    Hard decisions come from the detector LLR signs; the exhaustive
    reference runs on every tone as well, so each record carries both
    error counts and the worst LLR discrepancy.  With ``verify_first``
    (the default) any discrepancy beyond the verification tolerance
    aborts the sweep with exit status 1, enforcing that simulation
    results are only produced by a verified detector.  Returns (exit
    status, records, csv text).
    """
    cfg.validate()
    const = build_constellation(cfg.M)
    bits_per_tone = 2 * const.q
    records: list[SimRecord] = []
    lines = [SIM_CSV_HEADER]
    for p_idx, (snr_db, mu) in enumerate(_point_grid(cfg)):
        sigma2 = sigma2_from_snr_db(snr_db)
        det_errors = 0
        orc_errors = 0
        metric_sum = 0
        max_disc = 0.0
        for t_idx in range(cfg.tones):
            data = _run_tone(tone_rng(cfg.seed, p_idx, t_idx), const, cfg, sigma2, mu)
            result = detect(data.obs, const, data.llrs)
            reference = brute_force_maxlog(data.obs, const, data.llrs)
            disc = float(np.max(np.abs(result.llrs - reference)))
            max_disc = max(max_disc, disc)
            if cfg.verify_first and disc > VERIFY_TOLERANCE:
                dump = (
                    f"FAILURE: llr discrepancy {_fmt(disc)} exceeds {_fmt(VERIFY_TOLERANCE)}\n"
                    + _dump_tone(cfg, (snr_db, mu), p_idx, t_idx, data)
                )
                return 1, records, dump + "\n"
            det_errors += int(np.sum((result.llrs > 0).astype(int) != data.bits))
            orc_errors += int(np.sum((reference > 0).astype(int) != data.bits))
            metric_sum += result.total_metric_count
        total_bits = cfg.tones * bits_per_tone
        record = SimRecord(
            snr_db=snr_db,
            mu=mu,
            tones=cfg.tones,
            bit_errors_detector=det_errors,
            bit_errors_oracle=orc_errors,
            ber=det_errors / total_bits,
            mean_total_metric_count=metric_sum / cfg.tones,
            max_llr_discrepancy_vs_oracle=max_disc,
        )
        records.append(record)
        lines.append(
            ",".join(
                [
                    _fmt(record.snr_db),
                    _fmt(record.mu),
                    str(record.tones),
                    str(record.bit_errors_detector),
                    str(record.bit_errors_oracle),
                    _fmt(record.ber),
                    _fmt(record.mean_total_metric_count),
                    _fmt(record.max_llr_discrepancy_vs_oracle),
                ]
            )
        )
    return 0, records, "\n".join(lines) + "\n"


REGIONS_CSV_HEADER = "axis,layer,symbol_index,point,lower,upper,empty"


def run_regions(cfg: SimConfig, llr_values) -> str:
    """Dump the four prior-shifted interval tables as CSV.

    The slicer gains come from the first tone of the configured stream
    (channel drawn from the seed, noise covariance from the first SNR),
    so the dump matches what detection on that tone would use.
    """
    cfg.validate()
    const = build_constellation(cfg.M)
    llr_arr = np.asarray(llr_values, dtype=float)
    if llr_arr.size != 2 * const.q:
        raise UsageError(
            f"expected {2 * const.q} LLR values for M={cfg.M}, got {llr_arr.size}"
        )
    if np.isnan(llr_arr).any():
        raise UsageError("LLR vector contains NaN")
    llrs = clamp(llr_arr.reshape(2, const.q))

    rng = tone_rng(cfg.seed, 0, 0)
    Hbar = generate_channel(rng, cfg.n_rx, cfg.n_tx)
    C = noise_covariance(sigma2_from_snr_db(cfg.snr_db_list[0]), cfg.rho, cfg.n_rx)
    ch = make_channel(Hbar, C)
    obs = whiten(np.zeros(cfg.n_rx, dtype=complex), ch)
    gains = {1: obs.gain1, 2: obs.gain2}

    lines = [REGIONS_CSV_HEADER]
    for layer in (1, 2):
        for axis_name, pam in (("real", const.real_axis), ("imag", const.imag_axis)):
            regions = build_regions(
                pam, axis_log_priors(llrs, layer, axis_name, pam), gains[layer]
            )
            for k in range(pam.L):
                lines.append(
                    ",".join(
                        [
                            axis_name,
                            str(layer),
                            str(k),
                            _fmt(pam.points[k]),
                            _fmt(regions.lower[k]),
                            _fmt(regions.upper[k]),
                            "true" if regions.empty[k] else "false",
                        ]
                    )
                )
    return "\n".join(lines) + "\n"


COMPLEXITY_CSV_HEADER = "kind,M,Nr,metrics,muls,adds"


def run_complexity(orders, n_rx: int) -> tuple[str, str]:
    """Closed-form count model for all detector kinds; CSV plus a table."""
    rows = []
    for M in orders:
        for kind in DETECTOR_KINDS:
            rows.append(predicted_counts(kind, M, n_rx))
    csv_lines = [COMPLEXITY_CSV_HEADER]
    for est in rows:
        csv_lines.append(
            f"{est.detector_kind},{est.M},{est.n_rx},{est.metrics},"
            f"{est.real_muls},{est.real_adds}"
        )
    table_lines = []
    for M in orders:
        table_lines.append(f"M={M}, N_r={n_rx}")
        table_lines.append(
            f"{'detector':<10}{'metrics':>12}{'real muls':>12}{'real adds':>12}"
        )
        for est in rows:
            if est.M == M:
                table_lines.append(
                    f"{est.detector_kind:<10}{est.metrics:>12}"
                    f"{est.real_muls:>12}{est.real_adds:>12}"
                )
        table_lines.append("")
    return "\n".join(csv_lines) + "\n", "\n".join(table_lines)


def _parse_float_list(text: str, flag: str) -> tuple[float, ...]:
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError as err:
        raise UsageError(f"malformed {flag} list {text!r}: {err}") from None
    if not values:
        raise UsageError(f"{flag} list is empty")
    return values


def _parse_int_list(text: str, flag: str) -> tuple[int, ...]:
    try:
        values = tuple(int(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError as err:
        raise UsageError(f"malformed {flag} list {text!r}: {err}") from None
    if not values:
        raise UsageError(f"{flag} list is empty")
    return values


def load_config_file(path: str) -> dict[str, str]:
    """Parse a `key = value` override file; blank lines and # comments skipped."""
    overrides: dict[str, str] = {}
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise UsageError(f"cannot read config file {path!r}: {err}") from None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{line_no}: expected `key = value`, got {raw!r}")
        key, value = line.split("=", 1)
        overrides[key.strip()] = value.strip()
    return overrides

_CONFIG_KEYS = {
    "M": ("M", int),
    "nr": ("n_rx", int),
    "nt": ("n_tx", int),
    "snr_db": ("snr_db_list", "float_list"),
    "mu": ("mu_list", "float_list"),
    "tones": ("tones", int),
    "seed": ("seed", int),
    "rho": ("rho", float),
    "out": ("out", str),
    "verify_first": ("verify_first", "bool"),
}


def _apply_config_overrides(cfg: SimConfig, overrides: dict[str, str]) -> None:
    for key, value in overrides.items():
        if key not in _CONFIG_KEYS:
            raise UsageError(f"unknown config key {key!r}")
        attr, kind = _CONFIG_KEYS[key]
        try:
            if kind == "float_list":
                parsed = _parse_float_list(value, key)
            elif kind == "bool":
                if value.lower() not in ("true", "false", "0", "1"):
                    raise ValueError("expected true/false")
                parsed = value.lower() in ("true", "1")
            elif kind is str:
                parsed = value
            else:
                parsed = kind(value)
        except ValueError as err:
            raise UsageError(f"bad value for config key {key!r}: {err}") from None
        setattr(cfg, attr, parsed)


def _config_from_args(args: argparse.Namespace) -> SimConfig:
    cfg = SimConfig(
        M=args.M,
        n_rx=args.nr,
        n_tx=args.nt,
        tones=args.tones,
        seed=args.seed,
        rho=args.rho,
        out=args.out,
    )
    if getattr(args, "snr_db", None) is not None:
        cfg.snr_db_list = _parse_float_list(args.snr_db, "--snr-db")
    if getattr(args, "mu", None) is not None:
        cfg.mu_list = _parse_float_list(args.mu, "--mu")
    if getattr(args, "verify_first", None) is not None:
        cfg.verify_first = args.verify_first
    if args.config:
        _apply_config_overrides(cfg, load_config_file(args.config))
    cfg.validate()
    return cfg


def _write_out(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _add_common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--M", type=int, default=16, help="constellation order")
    sub.add_argument("--nr", type=int, default=2, help="receive antennas")
    sub.add_argument("--nt", type=int, default=2, help="transmit antennas")
    sub.add_argument("--tones", type=int, default=1000, help="tones per grid point")
    sub.add_argument("--seed", type=int, default=1, help="master RNG seed")
    sub.add_argument(
        "--rho", type=float, default=0.0, help="noise correlation coefficient"
    )
    sub.add_argument("--out", type=str, default=None, help="output file path")
    sub.add_argument(
        "--config", type=str, default=None, help="key=value file overriding flags"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sisodet",
        description="Dual-layer MIMO soft detector: verification, simulation, "
        "region dumps, and operation-count model.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_verify = subs.add_parser(
        "verify", help="check detector against the exhaustive reference"
    )
    _add_common_flags(p_verify)
    p_verify.add_argument("--snr-db", type=str, default="10", help="comma list of SNRs")
    p_verify.add_argument("--mu", type=str, default="0", help="comma list of mu values")

    p_sim = subs.add_parser("simulate", help="Monte-Carlo BER sweep")
    _add_common_flags(p_sim)
    p_sim.add_argument("--snr-db", type=str, default="10", help="comma list of SNRs")
    p_sim.add_argument("--mu", type=str, default="0", help="comma list of mu values")
    p_sim.add_argument(
        "--verify-first",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="abort with exit 1 if any tone disagrees with the reference",
    )

    p_reg = subs.add_parser("regions", help="dump prior-shifted interval tables")
    _add_common_flags(p_reg)
    p_reg.add_argument("--snr-db", type=str, default="10", help="comma list of SNRs")
    p_reg.add_argument(
        "--llr",
        type=str,
        required=True,
        help="comma list of 2q a-priori LLRs (layer 1 bits then layer 2)",
    )

    p_cx = subs.add_parser("complexity", help="closed-form operation counts")
    p_cx.add_argument("--M", type=str, default="256", help="comma list of orders")
    p_cx.add_argument("--nr", type=int, default=2, help="receive antennas")
    p_cx.add_argument("--out", type=str, default=None, help="output file path")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            cfg = _config_from_args(args)
            status, report = run_verify(cfg)
            _write_out(cfg.out, report)
            if cfg.out is not None:
                sys.stdout.write(report.splitlines()[-1] + "\n")
            return status
        if args.command == "simulate":
            cfg = _config_from_args(args)
            status, _, text = run_simulate(cfg)
            if status != 0:
                sys.stderr.write(text)
                return status
            _write_out(cfg.out, text)
            return 0
        if args.command == "regions":
            cfg = _config_from_args(args)
            llr_values = _parse_float_list(args.llr, "--llr")
            text = run_regions(cfg, llr_values)
            _write_out(cfg.out, text)
            return 0
        if args.command == "complexity":
            orders = _parse_int_list(args.M, "--M")
            try:
                csv_text, table_text = run_complexity(orders, args.nr)
            except ValueError as err:
                raise UsageError(str(err)) from None
            _write_out(args.out, csv_text)
            if args.out is not None:
                sys.stdout.write(table_text + "\n")
            return 0
    except UsageError as err:
        sys.stderr.write(f"error: {err}\n")
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
