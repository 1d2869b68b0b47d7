"""Dual-hop decode-and-forward cooperative MIMO link simulation.

A source with 1, 2 or 4 transmit antennas sends orthogonal space-time
blocks over Rayleigh fading to r single-antenna relays; the relay with the
best end-to-end path quality decodes and forwards to the destination.
The package estimates end-to-end BER by seeded Monte Carlo simulation and,
for PSK, computes exact per-hop BER by numerical integration of the
received-phase density against the post-combining SNR density.
"""

from .analytic import (FirstHopSnr, QuadratureError, SecondHopSnr,
                       end_to_end_ber, first_hop_snr, mean_snr, mpsk_hop_ber,
                       phase_pdf, region_probability, second_hop_snr, snr_mgf,
                       snr_pdf)
from .channel import ChannelRealization, RngState, draw_awgn, draw_channel
from .modem import Constellation, constellation, demodulate_ml, modulate
from .ostbc import CodeSpec, code_for_antennas, combine, encode, rate_constant
from .relayselect import (RelayMetrics, bottleneck_metric,
                          harmonic_mean_metric, mean_amplitude, relay_metrics,
                          select_best)
from .simulator import (BerCurve, BerPoint, SimConfig, estimate_ber,
                        run_trial, sweep, wilson_interval)

__version__ = "0.1.0"

__all__ = [
    "BerCurve", "BerPoint", "ChannelRealization", "CodeSpec", "Constellation",
    "FirstHopSnr", "QuadratureError", "RelayMetrics", "RngState",
    "SecondHopSnr", "SimConfig", "bottleneck_metric", "code_for_antennas",
    "combine", "constellation", "demodulate_ml", "draw_awgn", "draw_channel",
    "encode", "end_to_end_ber", "estimate_ber", "first_hop_snr",
    "harmonic_mean_metric", "mean_amplitude", "mean_snr", "modulate",
    "mpsk_hop_ber", "phase_pdf", "rate_constant", "region_probability",
    "relay_metrics", "run_trial", "second_hop_snr", "select_best", "snr_mgf",
    "snr_pdf", "sweep", "wilson_interval",
]
