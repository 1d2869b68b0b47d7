"""Bottleneck vs harmonic-mean relay selection, with a random baseline.

The two decision rules bracket each other within a factor of two on the
metric scale (min <= harmonic mean <= 2 min), so their BER curves are close
everywhere.  On close inspection they cross: the harmonic-mean rule is
slightly better at low SNR, the bottleneck rule at high SNR.  Random
selection throws the diversity away and sits far above both.

Writes selection_rules.png next to this script.
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from relaylink import SimConfig, sweep

GRID = tuple(float(v) for v in range(0, 18, 2))
HERE = pathlib.Path(__file__).parent


def main():
    fig, ax = plt.subplots(figsize=(6.5, 4.8))
    for rule, style in (("rule1", "o-"), ("rule2", "s--"), ("random", "x:")):
        cfg = SimConfig(t=2, r=4, modulation="QPSK", snr_grid_db=GRID,
                        trials=300_000, master_seed=3, rule=rule,
                        max_errors=1500)
        c = sweep(cfg)
        label = {"rule1": "rule1 (bottleneck)",
                 "rule2": "rule2 (harmonic mean)",
                 "random": "random relay"}[rule]
        ax.semilogy([p.snr_db for p in c.points], [p.ber for p in c.points],
                    style, label=label)
    ax.set_xlabel("SNR $\\rho$ (dB)")
    ax.set_ylabel("end-to-end BER")
    ax.grid(True, which="both", ls=":")
    ax.legend()
    ax.set_title("t = 2, r = 4, QPSK")
    fig.tight_layout()
    out = HERE / "selection_rules.png"
    fig.savefig(out, dpi=150)
    print(f"saved {out}")


if __name__ == "__main__":
    main()
