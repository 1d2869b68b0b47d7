"""Per-relay path-quality metrics and best-relay selection.

Each relay scores its end-to-end path from two squared amplitudes: the
first hop contributes the square of the arithmetic mean of its per-antenna
gain magnitudes, the second hop the squared relay-to-destination gain.
Rule "rule1" takes the bottleneck (minimum) of the two, "rule2" their
harmonic mean.  The relay with the largest score is selected.

As an alternative to the mean-of-magnitudes amplitude, the first-hop score
can use the post-combining gain sum|h_ij|^2 instead (the two differ for
t > 1); see ``relay_metrics``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "mean_amplitude",
    "bottleneck_metric",
    "harmonic_mean_metric",
    "select_best",
    "RelayMetrics",
    "relay_metrics",
]

RULES = ("rule1", "rule2")


def mean_amplitude(channel_row) -> np.ndarray:
    """Arithmetic mean of gain magnitudes along the last axis."""
    row = np.asarray(channel_row)
    if row.ndim == 0 or row.shape[-1] == 0:
        raise ValueError("channel row must hold at least one gain")
    return np.mean(np.abs(row), axis=-1)


def bottleneck_metric(a2, d2):
    """min of the two squared hop amplitudes."""
    return np.minimum(a2, d2)


def harmonic_mean_metric(a2, d2):
    """Harmonic mean 2*a2*d2/(a2+d2), defined as 0 when both inputs are 0.

    Evaluated as 2/(1/a2 + 1/d2): a zero input makes its reciprocal
    infinite and the metric 0, and huge inputs cannot overflow the product.
    """
    a2 = np.asarray(a2, dtype=float)
    d2 = np.asarray(d2, dtype=float)
    with np.errstate(divide="ignore"):
        out = 2.0 / (1.0 / a2 + 1.0 / d2)
    return out if out.shape else float(out)


def select_best(metrics) -> np.ndarray:
    """Index of the largest metric along the last axis, ties to the lowest."""
    m = np.asarray(metrics)
    if m.ndim == 0 or m.shape[-1] == 0:
        raise ValueError("need at least one candidate relay")
    return np.argmax(m, axis=-1)


@dataclass(frozen=True)
class RelayMetrics:
    """Per-relay amplitudes and the resulting selection scores."""

    first_hop_amplitude: np.ndarray
    second_hop_amplitude: np.ndarray
    metric: np.ndarray
    rule: str


def relay_metrics(h_sr, g_rd, rule: str, use_combining_gain: bool = False) -> RelayMetrics:
    """Score every relay of one channel realization under a decision rule.

    With ``use_combining_gain`` the first-hop squared amplitude is replaced
    by sum|h_ij|^2, the effective gain of OSTBC combining.
    """
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r}; choose from {RULES}")
    h = np.asarray(h_sr, dtype=complex)
    g = np.asarray(g_rd, dtype=complex)
    if use_combining_gain:
        a2 = np.sum(np.abs(h) ** 2, axis=-1)
    else:
        a2 = mean_amplitude(h) ** 2
    d2 = np.abs(g) ** 2
    if rule == "rule1":
        metric = bottleneck_metric(a2, d2)
    else:
        metric = harmonic_mean_metric(a2, d2)
    return RelayMetrics(np.sqrt(a2), np.abs(g), metric, rule)
