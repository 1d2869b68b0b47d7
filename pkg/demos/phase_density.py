"""The received-phase density and how decision regions turn into BER.

At zero SNR the phase of a PSK symbol is uniform on the circle; as SNR
grows the density concentrates into a spike at the transmitted phase.
Bit errors are the mass falling into the other M-1 angular regions,
weighted by how many bits each region's Gray label gets wrong.

Writes phase_density.png next to this script.
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from relaylink import phase_pdf

HERE = pathlib.Path(__file__).parent


def main():
    theta = np.linspace(-np.pi, np.pi, 1201)
    fig, ax = plt.subplots(figsize=(6.5, 4.2))
    for gamma in (0.0, 0.5, 2.0, 10.0):
        ax.plot(theta, phase_pdf(theta, gamma, 4),
                label=f"$\\gamma$ = {gamma:g} (QPSK)")
    for edge in (-3 * np.pi / 4, -np.pi / 4, np.pi / 4, 3 * np.pi / 4):
        ax.axvline(edge, color="gray", lw=0.8, ls=":")
    ax.set_xlabel("received phase (rad)")
    ax.set_ylabel("density")
    ax.set_xlim(-np.pi, np.pi)
    ax.legend()
    ax.set_title("phase density; dotted lines are QPSK decision boundaries")
    fig.tight_layout()
    out = HERE / "phase_density.png"
    fig.savefig(out, dpi=150)
    print(f"saved {out}")


if __name__ == "__main__":
    main()
