"""Closed-form SNR statistics and exact M-PSK BER by numerical integration.

SNR conventions
---------------
Both hop SNRs are per-bit quantities.  After OSTBC combining, the first hop
sees a per-bit SNR of c * rho * sum|h_ij|^2 with c the code's rate constant;
over Rayleigh fading that SNR is Gamma-distributed with ``branches`` = t
degrees and per-branch mean ``scale`` = c * beta1 * rho.  The second hop is
a SISO link with exponential per-bit SNR of mean ``gamma_bar`` =
rho * beta2 / log2(M).

The phase density of a received PSK symbol conditioned on its per-bit SNR
is evaluated in a numerically stable form built on the scaled complementary
error function, valid over the whole SNR range (the naive expression
overflows once the symbol SNR passes a few hundred).  Bit error rates
follow by weighting each angular decision region with its bit-error
multiplicity under the fixed Gray labeling and integrating the phase
density against the SNR density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.integrate import quad
from scipy.special import erfcx, gammainccinv

from . import modem, ostbc

__all__ = [
    "FirstHopSnr",
    "SecondHopSnr",
    "HopSnr",
    "first_hop_snr",
    "second_hop_snr",
    "snr_mgf",
    "snr_pdf",
    "mean_snr",
    "tail_cutoff",
    "phase_pdf",
    "region_probability",
    "mpsk_hop_ber",
    "end_to_end_ber",
    "QuadratureError",
]


class QuadratureError(RuntimeError):
    """Raised when adaptive quadrature cannot reach the requested tolerance.

    ``achieved`` holds the absolute error estimate that was reached.
    """

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved tolerance {achieved:.3e})")
        self.achieved = achieved


@dataclass(frozen=True)
class FirstHopSnr:
    """Per-bit SNR of the combined source-to-relay hop.

    Gamma-distributed: ``branches`` independent fading branches, each
    contributing mean ``scale`` to the total (mean SNR = branches * scale).
    """

    branches: int
    scale: float

    def __post_init__(self):
        if self.branches < 1:
            raise ValueError("branch count must be positive")
        if self.scale < 0:
            raise ValueError("scale must be nonnegative")


@dataclass(frozen=True)
class SecondHopSnr:
    """Per-bit SNR of the relay-to-destination hop (exponential)."""

    gamma_bar: float

    def __post_init__(self):
        if self.gamma_bar < 0:
            raise ValueError("mean SNR must be nonnegative")


HopSnr = Union[FirstHopSnr, SecondHopSnr]


def _shape_scale(stat: HopSnr) -> tuple[int, float]:
    if isinstance(stat, FirstHopSnr):
        return stat.branches, stat.scale
    if isinstance(stat, SecondHopSnr):
        return 1, stat.gamma_bar
    raise TypeError(f"not a hop SNR statistic: {stat!r}")


def first_hop_snr(t: int, m: int, beta1: float, rho: float) -> FirstHopSnr:
    """First-hop statistic for t antennas, order-m modulation at SNR rho."""
    spec = ostbc.code_for_antennas(t)
    return FirstHopSnr(t, ostbc.rate_constant(spec, m) * beta1 * rho)


def second_hop_snr(m: int, beta2: float, rho: float) -> SecondHopSnr:
    """Second-hop statistic for order-m modulation at SNR rho."""
    if m not in (2, 4, 8, 16):
        raise ValueError(f"unsupported constellation order {m}")
    return SecondHopSnr(rho * beta2 / math.log2(m))


def snr_mgf(stat: HopSnr, s: float) -> float:
    """E[exp(-s * gamma)]: (1 + scale*s)^-branches for the first hop,
    1/(1 + gamma_bar*s) for the second."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    k, theta = _shape_scale(stat)
    return float((1.0 + theta * s) ** (-k))


def snr_pdf(stat: HopSnr, gamma):
    """Density of the per-bit SNR at ``gamma`` (scalar or array).

    Gamma(branches, scale) for the first hop, exponential for the second.
    A zero scale is a point mass at 0 and has no density.
    """
    k, theta = _shape_scale(stat)
    if theta == 0:
        raise ValueError("degenerate SNR distribution (zero scale) has no density")
    g = np.asarray(gamma, dtype=float)
    if np.any(g < 0):
        raise ValueError("SNR must be nonnegative")
    out = g ** (k - 1) * np.exp(-g / theta) / (theta**k * math.factorial(k - 1))
    return out if out.shape else float(out)


def mean_snr(stat: HopSnr) -> float:
    k, theta = _shape_scale(stat)
    return k * theta


def tail_cutoff(stat: HopSnr, tail_mass: float = 1e-12) -> float:
    """SNR beyond which at most ``tail_mass`` probability remains."""
    k, theta = _shape_scale(stat)
    return float(theta * gammainccinv(k, tail_mass))


def phase_pdf(theta, gamma: float, m: int):
    """Density of the received-symbol phase given per-bit SNR ``gamma``.

    The symbol is taken at phase 0, so the density is even in theta and
    collapses to 1/(2*pi) at gamma = 0.  ``m`` enters only through the
    per-symbol SNR a = gamma * log2(m).

    Stable evaluation: with x = sqrt(a)*cos(theta),

        f = exp(-a)/(2*pi) + sqrt(a/pi)*cos(theta) * B,
        B = exp(-a*sin^2) - exp(-a)*erfcx(x)/2      for x >= 0,
        B = exp(-a)*erfcx(-x)/2                     for x <  0,

    where the second branch uses erfcx(-x) = 2*exp(x^2) - erfcx(x) to avoid
    the 0 * inf that the textbook form produces at large SNR.
    """
    if gamma < 0:
        raise ValueError("SNR must be nonnegative")
    if m < 2:
        raise ValueError("constellation order must be at least 2")
    th = np.asarray(theta, dtype=float)
    a = gamma * math.log2(m)
    cos = np.cos(th)
    sin2 = np.sin(th) ** 2
    x = math.sqrt(a) * cos
    # exp(-a) underflows to 0 beyond ~745, which is the exact limit value
    ea = math.exp(-a) if a < 746 else 0.0
    bracket = np.where(x >= 0.0,
                       np.exp(-a * sin2) - 0.5 * ea * erfcx(np.abs(x)),
                       0.5 * ea * erfcx(np.abs(x)))
    out = ea / (2.0 * math.pi) + math.sqrt(a / math.pi) * cos * bracket
    return out if out.shape else float(out)


def _phase_mass(gamma: float, m: int, theta_l: float, theta_u: float,
                tol: float) -> float:
    """Integral of phase_pdf over [theta_l, theta_u] for one SNR value."""
    a = gamma * math.log2(m)
    pts = None
    if theta_l < 0.0 < theta_u and a > 1.0:
        # at high SNR the density is a spike of width ~1/sqrt(a) at 0;
        # hand quad explicit breakpoints so it cannot be stepped over
        w = 8.0 / math.sqrt(a)
        pts = [p for p in (-w, 0.0, w) if theta_l < p < theta_u] or None
    res = quad(lambda th: phase_pdf(th, gamma, m), theta_l, theta_u,
               epsabs=tol, limit=300, points=pts, full_output=1)
    val, err = res[0], res[1]
    if err > max(100.0 * tol, 1e-6):
        raise QuadratureError("phase integral did not converge", err)
    return val


def region_probability(stat: HopSnr, theta_l: float, theta_u: float, m: int,
                       inner_tol: float = 1e-10, outer_tol: float = 1e-9,
                       tail_mass: float = 1e-12) -> float:
    """Probability that the received phase falls in [theta_l, theta_u].

    Averages the conditional phase mass over the hop's SNR density: the
    inner (phase) integral runs adaptively at ``inner_tol``, the outer (SNR)
    integral at ``outer_tol``, truncated where the SNR density's remaining
    tail mass drops below ``tail_mass``.  Regions must lie inside [-pi, pi];
    wrap-around regions are the caller's job to split.
    """
    if not (-math.pi <= theta_l < theta_u <= math.pi + 1e-12):
        raise ValueError("need -pi <= theta_l < theta_u <= pi")
    hi = tail_cutoff(stat, tail_mass)
    if hi == 0.0:
        # zero-scale statistic: SNR is identically 0, phase is uniform
        return (theta_u - theta_l) / (2.0 * math.pi)

    def outer(g: float) -> float:
        return snr_pdf(stat, g) * _phase_mass(g, m, theta_l, theta_u, inner_tol)

    res = quad(outer, 0.0, hi, epsabs=outer_tol, limit=300, full_output=1)
    val, err = res[0], res[1]
    if err > max(100.0 * outer_tol, 1e-6):
        raise QuadratureError("SNR integral did not converge", err)
    return val


def _ring_bit_distances(c: modem.Constellation) -> np.ndarray:
    """Mean Hamming distance between labels ``step`` positions apart on the ring.

    Averaged over all transmitted symbols: the reflected Gray code is not
    shift-invariant for every step once m > 4, and random data makes all
    transmit positions equally likely.
    """
    order = np.argsort(np.mod(np.angle(c.points), 2.0 * math.pi), kind="stable")
    ring = c.bits[order]
    m = c.order
    dist = np.zeros(m)
    for step in range(m):
        dist[step] = np.mean(np.sum(ring != np.roll(ring, -step, axis=0), axis=1))
    return dist


def mpsk_hop_ber(stat: HopSnr, m: int, labeling: modem.Constellation | None = None,
                 inner_tol: float = 1e-10, outer_tol: float = 1e-9) -> float:
    """Exact average BER of an M-PSK hop under the fixed Gray labeling.

    Splits the circle into the m angular decision regions
    [(2j-3)*pi/m, (2j-1)*pi/m], weights each region's probability by the
    mean number of bit errors committed when deciding it, and normalizes by
    bits per symbol.  Supported orders: 2, 4, 8 (QAM has no phase regions).
    """
    if m not in (2, 4, 8):
        raise ValueError("analytic BER supports PSK orders 2, 4 and 8 only")
    c = labeling if labeling is not None else modem.by_order(m)
    if c.order != m:
        raise ValueError(f"labeling order {c.order} does not match m={m}")
    errs = _ring_bit_distances(c)
    total = 0.0
    for j in range(2, m + 1):
        e_j = errs[j - 1]
        if e_j == 0.0:
            continue
        lo = (2 * j - 3) * math.pi / m
        hi = (2 * j - 1) * math.pi / m
        if lo >= math.pi:
            lo, hi = lo - 2.0 * math.pi, hi - 2.0 * math.pi
        if hi <= math.pi:
            p = region_probability(stat, lo, hi, m, inner_tol, outer_tol)
        else:
            # region straddles the branch cut: split at pi
            p = (region_probability(stat, lo, math.pi, m, inner_tol, outer_tol)
                 + region_probability(stat, -math.pi, hi - 2.0 * math.pi, m,
                                      inner_tol, outer_tol))
        total += e_j * p
    return total / math.log2(m)


def end_to_end_ber(p1: float, p2: float) -> float:
    """Cascade of two independent per-bit error rates: p1 + p2 - 2*p1*p2.

    A bit survives the decode-and-forward chain unless exactly one hop flips
    it; both rates are assumed at most 1/2.
    """
    return p1 + p2 - 2.0 * p1 * p2
