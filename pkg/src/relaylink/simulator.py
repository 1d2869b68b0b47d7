"""Monte Carlo engine for end-to-end BER of the dual-hop DF system.

A trial is one OSTBC block: draw a fresh channel, send K symbols from the
source, let every relay's decode quality be decided by the selected relay's
combining output, forward the selected relay's decoded bits over its SISO
link, and count bit errors at the relay and at the destination.

Reproducibility contract: trial k of a configuration consumes a fixed-size
block of Philox words addressed by (master_seed, k) alone, so any batch,
thread count or evaluation order yields bit-identical per-trial results.
Accumulation is integer addition and therefore order-independent; early
stopping is defined on trial indices (the smallest prefix of trials whose
cumulative end-to-end errors reach ``max_errors``), not on evaluation order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from itertools import islice

import numpy as np

from . import analytic, modem, ostbc, relayselect
from .channel import complex_from_uniforms, uniform_block

__all__ = [
    "SimConfig",
    "BerPoint",
    "BerCurve",
    "run_trial",
    "estimate_ber",
    "sweep",
    "wilson_interval",
]

RULES = ("rule1", "rule2", "random")
SELECTION_METRICS = ("mean_amplitude", "combining_gain")

_Z95 = 1.959963984540054

DEFAULT_BATCH = 32768


@dataclass(frozen=True)
class SimConfig:
    """Complete description of one experiment.

    ``snr_grid_db`` holds the total-power SNR rho = P / sigma^2 in dB.
    ``rule`` is the relay decision rule (rule1 = bottleneck, rule2 =
    harmonic mean, random = uniform baseline).  ``selection_metric`` picks
    the first-hop quality entering the rule: the mean of gain magnitudes or
    the OSTBC combining gain sum|h_ij|^2.
    """

    t: int
    r: int
    modulation: str
    snr_grid_db: tuple
    trials: int
    master_seed: int
    rule: str = "rule1"
    beta1: float = 1.0
    beta2: float = 1.0
    max_errors: int = 200
    selection_metric: str = "mean_amplitude"

    def __post_init__(self):
        ostbc.code_for_antennas(self.t)
        if self.r < 1:
            raise ValueError("relay count must be at least 1")
        object.__setattr__(self, "modulation", modem.constellation(self.modulation).name)
        object.__setattr__(self, "rule", str(self.rule).lower())
        if self.rule not in RULES:
            raise ValueError(f"unknown rule {self.rule!r}; choose from {RULES}")
        grid = tuple(float(v) for v in self.snr_grid_db)
        if not grid:
            raise ValueError("snr_grid_db must not be empty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("snr_grid_db must be strictly increasing")
        object.__setattr__(self, "snr_grid_db", grid)
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.max_errors < 1:
            raise ValueError("max_errors must be at least 1")
        if self.beta1 < 0 or self.beta2 < 0:
            raise ValueError("hop variances must be nonnegative")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must fit in 64 bits")
        if self.selection_metric not in SELECTION_METRICS:
            raise ValueError(f"unknown selection metric {self.selection_metric!r}; "
                             f"choose from {SELECTION_METRICS}")

    @property
    def code(self) -> ostbc.CodeSpec:
        return ostbc.code_for_antennas(self.t)

    @property
    def constellation(self) -> modem.Constellation:
        return modem.constellation(self.modulation)

    @property
    def bits_per_trial(self) -> int:
        return self.code.K * self.constellation.bits_per_symbol


@dataclass(frozen=True)
class BerPoint:
    """BER estimate (or analytic value) at one SNR point."""

    snr_db: float
    ber: float
    bit_errors: int
    bits: int
    ci_low: float
    ci_high: float
    source: str = "simulated"


@dataclass(frozen=True)
class BerCurve:
    """One sweep: simulated points plus any analytic overlay."""

    config: SimConfig
    points: tuple
    analytic: tuple = ()


def wilson_interval(errors: int, bits: int, z: float = _Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion (default 95%)."""
    if bits <= 0:
        raise ValueError("need a positive number of bits")
    p = errors / bits
    den = 1.0 + z * z / bits
    center = (p + z * z / (2.0 * bits)) / den
    half = z * math.sqrt(p * (1.0 - p) / bits + z * z / (4.0 * bits * bits)) / den
    # rounding must never push the estimate outside its own interval
    return min(p, max(0.0, center - half)), max(p, min(1.0, center + half))


@dataclass(frozen=True)
class _Layout:
    """Word offsets of one trial's randomness block (all slices fixed)."""

    bits: slice
    h: slice
    g: slice
    noise1: slice
    noise2: slice
    choice: int
    words: int


def _layout(cfg: SimConfig) -> _Layout:
    spec = cfg.code
    nb = cfg.bits_per_trial
    r, t, L, K = cfg.r, cfg.t, spec.L, spec.K
    o = 0
    bits = slice(o, o + nb); o += nb
    h = slice(o, o + 2 * r * t); o += 2 * r * t
    g = slice(o, o + 2 * r); o += 2 * r
    noise1 = slice(o, o + 2 * r * L); o += 2 * r * L
    noise2 = slice(o, o + 2 * K); o += 2 * K
    choice = o; o += 1
    return _Layout(bits, h, g, noise1, noise2, choice, 4 * ((o + 3) // 4))


def _run_batch(cfg: SimConfig, rho: float, start: int, count: int):
    """Simulate trials [start, start+count); returns per-trial error counts."""
    spec = cfg.code
    const = cfg.constellation
    lay = _layout(cfg)
    r, t, L, K = cfg.r, cfg.t, spec.L, spec.K
    nb = cfg.bits_per_trial
    sigma2 = 1.0 / rho

    u = uniform_block(cfg.master_seed, 0, start * lay.words, count * lay.words)
    u = u.reshape(count, lay.words)

    bits = (u[:, lay.bits] < 0.5).astype(np.uint8)
    h = complex_from_uniforms(u[:, lay.h], cfg.beta1).reshape(count, r, t)
    g = complex_from_uniforms(u[:, lay.g], cfg.beta2)

    if cfg.rule == "random":
        sel = np.minimum((u[:, lay.choice] * r).astype(np.int64), r - 1)
    else:
        if cfg.selection_metric == "combining_gain":
            a2 = np.sum(np.abs(h) ** 2, axis=-1)
        else:
            a2 = relayselect.mean_amplitude(h) ** 2
        d2 = np.abs(g) ** 2
        if cfg.rule == "rule1":
            metric = relayselect.bottleneck_metric(a2, d2)
        else:
            metric = relayselect.harmonic_mean_metric(a2, d2)
        sel = relayselect.select_best(metric)

    rows = np.arange(count)
    alpha = h[rows, sel]
    g_sel = g[rows, sel]

    # first hop: OSTBC block through the selected relay's antenna row
    s = modem.modulate(bits.reshape(-1), const).reshape(count, K)
    x = ostbc.encode(s, spec)
    y = np.einsum("bt,btl->bl", alpha, x)
    noise1 = complex_from_uniforms(
        u[:, lay.noise1].reshape(count, r, 2 * L)[rows, sel], sigma2)
    z, gain = ostbc.combine(y + noise1, alpha, spec)
    relay_bits = modem.demodulate_ml(z, gain[:, None], const).reshape(count, nb)
    fh_err = np.sum(relay_bits != bits, axis=1, dtype=np.int64)

    # second hop: the relay re-modulates its decoded bits (errors propagate)
    # and sends them over its SISO link, one symbol per slot
    x1 = modem.modulate(relay_bits.reshape(-1), const).reshape(count, K, 1)
    g_blk = np.broadcast_to(g_sel[:, None, None], (count, K, 1))
    y_d = g_blk[..., 0] * x1[..., 0]
    noise2 = complex_from_uniforms(u[:, lay.noise2], sigma2).reshape(count, K)
    z_d, gain_d = ostbc.combine((y_d + noise2)[..., None], g_blk,
                                ostbc.code_for_antennas(1))
    dest_bits = modem.demodulate_ml(z_d[..., 0], gain_d, const).reshape(count, nb)
    e2e_err = np.sum(dest_bits != bits, axis=1, dtype=np.int64)

    return fh_err, e2e_err


def run_trial(cfg: SimConfig, rho: float, trial_index: int) -> tuple[int, int, int]:
    """One block: returns (first_hop_bit_errors, e2e_bit_errors, bits).

    First-hop errors are counted at the selected relay's decoder output,
    end-to-end errors at the destination against the source bits.
    """
    if rho <= 0:
        raise ValueError("rho must be positive")
    if trial_index < 0:
        raise ValueError("trial_index must be nonnegative")
    fh, e2e = _run_batch(cfg, rho, trial_index, 1)
    return int(fh[0]), int(e2e[0]), cfg.bits_per_trial


def estimate_ber(cfg: SimConfig, rho: float, hop: str = "e2e",
                 threads: int = 1, batch_size: int = DEFAULT_BATCH) -> BerPoint:
    """Accumulate trials at one SNR point into a BerPoint.

    Runs trial indices 0, 1, ... until ``cfg.trials`` blocks or until the
    prefix of trials reaches ``cfg.max_errors`` end-to-end bit errors,
    whichever comes first.  ``hop`` selects which error count is reported:
    "e2e" (default) or "first" for the selected relay's decode errors.
    The result does not depend on ``threads`` or ``batch_size``.
    """
    if rho <= 0:
        raise ValueError("rho must be positive")
    if hop not in ("e2e", "first"):
        raise ValueError('hop must be "e2e" or "first"')
    nb = cfg.bits_per_trial

    def batches():
        for s in range(0, cfg.trials, batch_size):
            yield s, min(batch_size, cfg.trials - s)

    fh_total = 0
    e2e_total = 0
    used = 0
    it = batches()
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        done = False
        while not done:
            chunk = list(islice(it, max(1, threads)))
            if not chunk:
                break
            if pool is None:
                results = [_run_batch(cfg, rho, s, n) for s, n in chunk]
            else:
                results = list(pool.map(lambda b: _run_batch(cfg, rho, *b), chunk))
            for (s, n), (fh, e2e) in zip(chunk, results):
                cum = np.cumsum(e2e)
                if e2e_total + cum[-1] >= cfg.max_errors:
                    idx = int(np.searchsorted(cum, cfg.max_errors - e2e_total))
                    fh_total += int(fh[: idx + 1].sum())
                    e2e_total += int(cum[idx])
                    used += idx + 1
                    done = True
                    break
                fh_total += int(fh.sum())
                e2e_total += int(cum[-1])
                used += n
    finally:
        if pool is not None:
            pool.shutdown(wait=False, cancel_futures=True)

    bits = used * nb
    if bits == 0:
        raise ValueError("configuration produced zero bits")
    errors = e2e_total if hop == "e2e" else fh_total
    lo, hi = wilson_interval(errors, bits)
    return BerPoint(snr_db=10.0 * math.log10(rho), ber=errors / bits,
                    bit_errors=errors, bits=bits, ci_low=lo, ci_high=hi)


def _analytic_point(cfg: SimConfig, snr_db: float) -> BerPoint:
    rho = 10.0 ** (snr_db / 10.0)
    m = cfg.constellation.order
    p1 = analytic.mpsk_hop_ber(
        analytic.first_hop_snr(cfg.t, m, cfg.beta1, rho), m)
    p2 = analytic.mpsk_hop_ber(
        analytic.second_hop_snr(m, cfg.beta2, rho), m)
    ber = analytic.end_to_end_ber(p1, p2)
    return BerPoint(snr_db=snr_db, ber=ber, bit_errors=0, bits=0,
                    ci_low=ber, ci_high=ber, source="analytic")


def sweep(cfg: SimConfig, threads: int = 1, batch_size: int = DEFAULT_BATCH) -> BerCurve:
    """Run the full SNR grid of a configuration.

    For PSK modulations with a single relay the curve also carries the
    analytic overlay: per-hop exact BER integrals cascaded end to end.
    Relay selection (r > 1) has no analytic counterpart and is simulated
    only, as is 16QAM.
    """
    points = []
    for snr_db in cfg.snr_grid_db:
        rho = 10.0 ** (snr_db / 10.0)
        p = estimate_ber(cfg, rho, threads=threads, batch_size=batch_size)
        points.append(replace(p, snr_db=snr_db))
    overlay = []
    if cfg.modulation in modem.PSK_NAMES and cfg.r == 1:
        overlay = [_analytic_point(cfg, snr_db) for snr_db in cfg.snr_grid_db]
    return BerCurve(config=cfg, points=tuple(points), analytic=tuple(overlay))
