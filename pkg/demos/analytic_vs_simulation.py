"""Exact PSK BER integrals against Monte Carlo, hop by hop.

The first-hop BER after OSTBC combining is the phase-region integral of the
received-phase density averaged over a Gamma-distributed SNR.  This script
overlays that quadrature value (solid lines) with simulated single-hop
points (markers) for t in {1, 2}, QPSK, and adds the textbook closed form
for Rayleigh BPSK as a cross-check of the t = 1 curve.

Writes analytic_vs_simulation.png next to this script.
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from relaylink import SimConfig, estimate_ber, first_hop_snr, mpsk_hop_ber

GRID = np.arange(0.0, 22.0, 2.0)
HERE = pathlib.Path(__file__).parent


def main():
    fig, ax = plt.subplots(figsize=(6.5, 4.8))
    for t, color in ((1, "tab:blue"), (2, "tab:orange")):
        analytic = [mpsk_hop_ber(first_hop_snr(t, 4, 1.0, 10 ** (s / 10)), 4)
                    for s in GRID]
        ax.semilogy(GRID, analytic, color=color, label=f"t = {t} exact integral")
        sim = []
        for s in GRID[::2]:
            cfg = SimConfig(t=t, r=1, modulation="QPSK", snr_grid_db=(float(s),),
                            trials=250_000, master_seed=1, max_errors=10**9)
            sim.append(estimate_ber(cfg, 10 ** (s / 10), hop="first").ber)
        ax.semilogy(GRID[::2], sim, "o", color=color, mfc="none",
                    label=f"t = {t} simulation")

    # Gray-QPSK per-bit BER equals BPSK at the same per-bit SNR, and for
    # t = 1 that has the closed form below
    gbar = 0.5 * 10 ** (GRID / 10)
    closed = 0.5 * (1 - np.sqrt(gbar / (1 + gbar)))
    ax.semilogy(GRID, closed, "k:", label="t = 1 closed form")

    ax.set_xlabel("SNR $\\rho$ (dB)")
    ax.set_ylabel("first-hop BER")
    ax.set_ylim(1e-5, 1)
    ax.grid(True, which="both", ls=":")
    ax.legend()
    fig.tight_layout()
    out = HERE / "analytic_vs_simulation.png"
    fig.savefig(out, dpi=150)
    print(f"saved {out}")


if __name__ == "__main__":
    main()
