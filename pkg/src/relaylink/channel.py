"""Reproducible complex-Gaussian fading and noise generation.

Convention used throughout the package: CN(0, v) is a circularly symmetric
complex Gaussian with E[|x|^2] = v, i.e. independent real and imaginary
parts of variance v/2 each.

All randomness flows through a counter-based Philox generator addressed by
(seed, stream, word offset).  Because the generator is a pure function of
that address, any sub-range of a stream can be regenerated independently,
which is what makes parallel Monte Carlo trials reproducible and
order-independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.random import Generator, Philox
from scipy.special import ndtri

__all__ = [
    "RngState",
    "ChannelRealization",
    "draw_channel",
    "draw_awgn",
    "uniform_block",
    "complex_from_uniforms",
]

_U64 = 2**64

# random() yields doubles in [0, 1); the half-ulp shift keeps ndtri off -inf
_HALF_ULP = 2.0**-54


def uniform_block(seed: int, stream: int, offset: int, n: int) -> np.ndarray:
    """Return ``n`` uniform [0, 1) doubles at word ``offset`` of a stream.

    ``offset`` must be a multiple of 4: Philox emits four 64-bit words per
    counter tick, and one word becomes one double.  The block depends only on
    (seed, stream, offset), never on what was drawn before.
    """
    if not 0 <= seed < _U64:
        raise ValueError("seed must fit in 64 bits")
    if not 0 <= stream < _U64:
        raise ValueError("stream must fit in 64 bits")
    if offset < 0 or offset % 4:
        raise ValueError("offset must be a nonnegative multiple of 4")
    bg = Philox(key=(stream << 64) | seed, counter=offset // 4)
    return Generator(bg).random(n)


def complex_from_uniforms(u: np.ndarray, variance: float) -> np.ndarray:
    """Map 2n uniforms (last axis) to n i.i.d. CN(0, variance) samples.

    Inverse-CDF sampling consumes exactly one uniform per real dimension,
    which keeps the word budget of a simulation trial fixed (ziggurat
    sampling does not).
    """
    u = np.asarray(u, dtype=float)
    if u.shape[-1] % 2:
        raise ValueError("need an even number of uniforms")
    z = ndtri(u + _HALF_ULP)
    scale = np.sqrt(variance / 2.0)
    return scale * (z[..., 0::2] + 1j * z[..., 1::2])


class RngState:
    """Deterministic random source identified by a (seed, stream) pair.

    Two instances built from the same pair generate identical sample
    sequences on every platform.  Successive draws from one instance advance
    its word position; the instance itself is cheap and holds no OS state.
    A single instance must not be shared across threads, but any number of
    instances (distinct streams) may run concurrently.
    """

    def __init__(self, seed: int, stream: int = 0):
        if not 0 <= seed < _U64:
            raise ValueError("seed must fit in 64 bits")
        if not 0 <= stream < _U64:
            raise ValueError("stream must fit in 64 bits")
        self.seed = seed
        self.stream = stream
        self._pos = 0

    def uniforms(self, n: int) -> np.ndarray:
        """Draw ``n`` uniform doubles and advance the stream position."""
        u = uniform_block(self.seed, self.stream, self._pos, n)
        self._pos += 4 * ((n + 3) // 4)
        return u

    def __repr__(self) -> str:
        return f"RngState(seed={self.seed}, stream={self.stream})"


@dataclass
class ChannelRealization:
    """One block-fading draw of both hops.

    ``h_sr`` holds the r x t source-to-relay gains (relay i, antenna j) and
    ``g_rd`` the r relay-to-destination gains.  Entries are CN(0, beta1) and
    CN(0, beta2) respectively.
    """

    h_sr: np.ndarray
    g_rd: np.ndarray
    beta1: float
    beta2: float

    def __post_init__(self):
        self.h_sr = np.asarray(self.h_sr, dtype=complex)
        self.g_rd = np.asarray(self.g_rd, dtype=complex)
        if self.h_sr.ndim != 2:
            raise ValueError("h_sr must be a 2-D matrix")
        if self.g_rd.ndim != 1 or self.g_rd.shape[0] != self.h_sr.shape[0]:
            raise ValueError("g_rd must have one entry per relay")
        if self.beta1 < 0 or self.beta2 < 0:
            raise ValueError("hop variances must be nonnegative")

    @property
    def relays(self) -> int:
        return self.h_sr.shape[0]

    @property
    def antennas(self) -> int:
        return self.h_sr.shape[1]


def draw_channel(rng: RngState, r: int, t: int, beta1: float, beta2: float) -> ChannelRealization:
    """Draw one i.i.d. Rayleigh-fading realization of both hops.

    Every h_ij is CN(0, beta1), every g_i is CN(0, beta2), all mutually
    independent.
    """
    if r < 1 or t < 1:
        raise ValueError("need at least one relay and one transmit antenna")
    if beta1 < 0 or beta2 < 0:
        raise ValueError("hop variances must be nonnegative")
    u = rng.uniforms(2 * (r * t + r))
    h = complex_from_uniforms(u[: 2 * r * t], beta1).reshape(r, t)
    g = complex_from_uniforms(u[2 * r * t :], beta2)
    return ChannelRealization(h, g, beta1, beta2)


def draw_awgn(rng: RngState, variance: float, n: int) -> np.ndarray:
    """Draw ``n`` i.i.d. CN(0, variance) noise samples."""
    if variance < 0:
        raise ValueError("noise variance must be nonnegative")
    if n < 0:
        raise ValueError("sample count must be nonnegative")
    if n == 0:
        return np.zeros(0, dtype=complex)
    return complex_from_uniforms(rng.uniforms(2 * n), variance)
