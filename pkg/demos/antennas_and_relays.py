"""How relay pool size and transmit antennas shape the end-to-end BER.

Sweeps the dual-hop QPSK link for r in {1, 2, 4} relays at t = 2 transmit
antennas, then for t in {2, 4} at r = 2.  More relays steepen the curve
(selection diversity acts on both hops); more antennas steepen the first
hop only, so their payoff is smaller once the SISO second hop dominates.

Writes antennas_and_relays.png next to this script.  Takes a minute or two.
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from relaylink import SimConfig, sweep

GRID = tuple(float(v) for v in range(0, 22, 2))
SEED = 20260810
HERE = pathlib.Path(__file__).parent


def curve(t, r):
    cfg = SimConfig(t=t, r=r, modulation="QPSK", snr_grid_db=GRID,
                    trials=200_000, master_seed=SEED, max_errors=1000)
    return sweep(cfg)


def main():
    fig, (left, right) = plt.subplots(1, 2, figsize=(11, 4.5), sharey=True)

    for r, marker in ((1, "o"), (2, "s"), (4, "^")):
        c = curve(2, r)
        left.semilogy([p.snr_db for p in c.points], [p.ber for p in c.points],
                      marker=marker, label=f"r = {r}")
        if c.analytic:
            left.semilogy([p.snr_db for p in c.analytic],
                          [p.ber for p in c.analytic], "k--", lw=1,
                          label="analytic (r = 1)")
    left.set_title("t = 2, QPSK: relay pool size")
    left.set_xlabel("SNR $\\rho$ (dB)")
    left.set_ylabel("end-to-end BER")

    for t, marker in ((2, "s"), (4, "d")):
        c = curve(t, 2)
        right.semilogy([p.snr_db for p in c.points], [p.ber for p in c.points],
                       marker=marker, label=f"t = {t}")
    right.set_title("r = 2, QPSK: transmit antennas")
    right.set_xlabel("SNR $\\rho$ (dB)")

    for ax in (left, right):
        ax.grid(True, which="both", ls=":")
        ax.legend()
        ax.set_ylim(1e-6, 1)
    fig.tight_layout()
    out = HERE / "antennas_and_relays.png"
    fig.savefig(out, dpi=150)
    print(f"saved {out}")


if __name__ == "__main__":
    main()
