"""Constellations with fixed Gray labelings and hard ML demapping.

The bit-to-symbol tables are frozen here so that bit-error counts are
reproducible everywhere they matter: in the Monte Carlo engine and in the
per-region bit-error multiplicities of the analytic PSK integration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Constellation",
    "bpsk",
    "qpsk",
    "psk8",
    "qam16",
    "constellation",
    "by_order",
    "modulate",
    "demodulate_ml",
    "PSK_NAMES",
]

PSK_NAMES = ("BPSK", "QPSK", "8PSK")

_ALIASES = {"PSK8": "8PSK", "QAM16": "16QAM"}


@dataclass(frozen=True)
class Constellation:
    """A unit-energy modulation alphabet with per-point bit labels.

    ``points[i]`` carries the bits ``bits[i]`` (row of 0/1 of length
    log2(M)).  ``index_of_value`` inverts the labeling: it maps the integer
    value of a bit group to the point index that carries it.
    """

    name: str
    points: np.ndarray
    bits: np.ndarray
    index_of_value: np.ndarray

    @property
    def order(self) -> int:
        return self.points.shape[0]

    @property
    def bits_per_symbol(self) -> int:
        return self.bits.shape[1]

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple("".join(str(b) for b in row) for row in self.bits)


def _build(name: str, points, bit_rows) -> Constellation:
    points = np.asarray(points, dtype=complex)
    bits = np.asarray(bit_rows, dtype=np.uint8)
    m, k = bits.shape
    weights = 1 << np.arange(k - 1, -1, -1)
    values = bits @ weights
    index_of_value = np.empty(m, dtype=np.int64)
    index_of_value[values] = np.arange(m)
    points = points / np.sqrt(np.mean(np.abs(points) ** 2))
    points.setflags(write=False)
    bits.setflags(write=False)
    index_of_value.setflags(write=False)
    return Constellation(name, points, bits, index_of_value)


def bpsk() -> Constellation:
    """Bit 0 -> +1, bit 1 -> -1."""
    return _build("BPSK", [1.0, -1.0], [[0], [1]])


def qpsk() -> Constellation:
    """Gray ring at odd multiples of pi/4; bits 00 -> (1+1j)/sqrt(2)."""
    phases = np.pi / 4 + np.pi / 2 * np.arange(4)
    return _build("QPSK", np.exp(1j * phases), [[0, 0], [0, 1], [1, 1], [1, 0]])


def psk8() -> Constellation:
    """Reflected Gray code around the ring, first point at phase 0."""
    phases = np.pi / 4 * np.arange(8)
    rows = [[0, 0, 0], [0, 0, 1], [0, 1, 1], [0, 1, 0],
            [1, 1, 0], [1, 1, 1], [1, 0, 1], [1, 0, 0]]
    return _build("8PSK", np.exp(1j * phases), rows)


def qam16() -> Constellation:
    """Square 16-QAM, Gray per axis; bits 0000 -> (-3-3j)/sqrt(10).

    The first two bits select the in-phase level, the last two the
    quadrature level, each through the Gray map 00,01,11,10 -> -3,-1,+1,+3.
    """
    level = {(0, 0): -3.0, (0, 1): -1.0, (1, 1): 1.0, (1, 0): 3.0}
    points = []
    rows = []
    for v in range(16):
        b = [(v >> s) & 1 for s in (3, 2, 1, 0)]
        points.append(level[(b[0], b[1])] + 1j * level[(b[2], b[3])])
        rows.append(b)
    return _build("16QAM", points, rows)


_TABLES = {c.name: c for c in (bpsk(), qpsk(), psk8(), qam16())}


def constellation(name: str) -> Constellation:
    """Look up a constellation by name (BPSK, QPSK, 8PSK, 16QAM)."""
    key = name.upper()
    key = _ALIASES.get(key, key)
    if key not in _TABLES:
        raise ValueError(f"unknown constellation {name!r}")
    return _TABLES[key]


def by_order(m: int) -> Constellation:
    """Return the fixed PSK table of order ``m`` (2, 4 or 8)."""
    try:
        return {2: _TABLES["BPSK"], 4: _TABLES["QPSK"], 8: _TABLES["8PSK"]}[m]
    except KeyError:
        raise ValueError(f"no PSK table of order {m}") from None


def modulate(bits, c: Constellation) -> np.ndarray:
    """Map a flat bit sequence to constellation symbols.

    The bit count must be divisible by log2(M); each group of log2(M) bits
    selects the point carrying that label.
    """
    bits = np.asarray(bits, dtype=np.uint8)
    k = c.bits_per_symbol
    if bits.ndim != 1 or bits.size % k:
        raise ValueError(f"bit count must be a multiple of {k}")
    groups = bits.reshape(-1, k)
    weights = 1 << np.arange(k - 1, -1, -1)
    values = groups @ weights
    return c.points[c.index_of_value[values]]


def demodulate_ml(stat, gain, c: Constellation) -> np.ndarray:
    """Hard ML demapping of decision statistics against a scaled alphabet.

    Returns the label of the point minimizing |stat - gain * p|^2, ties
    broken by lowest point index.  ``stat`` may be a scalar or an array;
    the output appends an axis of length log2(M) holding the bits.
    """
    stat = np.asarray(stat, dtype=complex)
    gain = np.asarray(gain, dtype=float)
    d = np.abs(stat[..., None] - gain[..., None] * c.points) ** 2
    idx = np.argmin(d, axis=-1)
    return c.bits[idx]
