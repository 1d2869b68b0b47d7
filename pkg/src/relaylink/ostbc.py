"""Orthogonal space-time block encoding and matched-filter combining.

Three codes are supported, identified by the transmit antenna count t:

* t=1: trivial 1x1 code (one symbol per slot),
* t=2: the rate-1 Alamouti code, antennas along rows and time along
  columns, with column 1 = (s1, s2) and column 2 = (-s2*, s1*),
* t=4: the standard rate-3/4 complex orthogonal design sending
  (s1, s2, s3) over four slots:

      antenna 1:  s1   -s2*  -s3*   0
      antenna 2:  s2    s1*   0    -s3*
      antenna 3:  s3    0     s1*   s2*
      antenna 4:  0     s3   -s2    s1

Power convention: with unit-energy symbols, ``encode`` scales the codeword
by sqrt(power * L / (t * K)) so that the per-antenna power averaged over the
block is power/t (total block energy power * L).  ``combine`` divides the
matched-filter output by the same amplitude, so a noiseless block combines
to exactly gain * s_k with gain = sum_j |alpha_j|^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["CodeSpec", "code_for_antennas", "amplitude", "encode", "combine",
           "rate_constant"]

_VALID = {(1, 1, 1), (2, 2, 2), (4, 4, 3)}


@dataclass(frozen=True)
class CodeSpec:
    """An orthogonal design: t antennas, L slots, K symbols per block."""

    t: int
    L: int
    K: int

    def __post_init__(self):
        if (self.t, self.L, self.K) not in _VALID:
            raise ValueError(f"unsupported code {(self.t, self.L, self.K)}; "
                             f"choose from {sorted(_VALID)}")

    @property
    def rate(self) -> float:
        return self.K / self.L


def code_for_antennas(t: int) -> CodeSpec:
    """The code used for a given transmit antenna count (1, 2 or 4)."""
    specs = {1: CodeSpec(1, 1, 1), 2: CodeSpec(2, 2, 2), 4: CodeSpec(4, 4, 3)}
    if t not in specs:
        raise ValueError(f"no orthogonal design for t={t}; supported: 1, 2, 4")
    return specs[t]


def amplitude(spec: CodeSpec, power: float = 1.0) -> float:
    """Per-entry amplitude that splits ``power`` evenly across antennas."""
    return math.sqrt(power * spec.L / (spec.t * spec.K))


def encode(symbols, spec: CodeSpec, power: float = 1.0) -> np.ndarray:
    """Encode K symbols into the t x L codeword (leading axes broadcast)."""
    s = np.asarray(symbols, dtype=complex)
    if s.shape[-1] != spec.K:
        raise ValueError(f"expected {spec.K} symbols per block, got {s.shape[-1]}")
    amp = amplitude(spec, power)
    shape = s.shape[:-1] + (spec.t, spec.L)
    x = np.zeros(shape, dtype=complex)
    if spec.t == 1:
        x[..., 0, 0] = s[..., 0]
    elif spec.t == 2:
        s1, s2 = s[..., 0], s[..., 1]
        x[..., 0, 0] = s1
        x[..., 1, 0] = s2
        x[..., 0, 1] = -np.conj(s2)
        x[..., 1, 1] = np.conj(s1)
    else:
        s1, s2, s3 = s[..., 0], s[..., 1], s[..., 2]
        x[..., 0, 0] = s1
        x[..., 0, 1] = -np.conj(s2)
        x[..., 0, 2] = -np.conj(s3)
        x[..., 1, 0] = s2
        x[..., 1, 1] = np.conj(s1)
        x[..., 1, 3] = -np.conj(s3)
        x[..., 2, 0] = s3
        x[..., 2, 2] = np.conj(s1)
        x[..., 2, 3] = np.conj(s2)
        x[..., 3, 1] = s3
        x[..., 3, 2] = -s2
        x[..., 3, 3] = s1
    return amp * x


def combine(y, alpha, spec: CodeSpec, power: float = 1.0):
    """Matched-filter combining of one received block at one antenna.

    ``y`` is the length-L received vector, ``alpha`` the length-t channel
    row (leading axes broadcast).  Returns ``(z, gain)`` where ``z`` holds
    the K decoupled decision statistics and ``gain = sum_j |alpha_j|^2``.
    With zero noise, z = gain * symbols exactly; with noise variance v per
    received sample, each statistic carries noise of variance
    gain * v / amplitude(spec, power)**2.
    """
    y = np.asarray(y, dtype=complex)
    a = np.asarray(alpha, dtype=complex)
    if y.shape[-1] != spec.L:
        raise ValueError(f"expected {spec.L} received samples, got {y.shape[-1]}")
    if a.shape[-1] != spec.t:
        raise ValueError(f"expected {spec.t} channel gains, got {a.shape[-1]}")
    amp = amplitude(spec, power)
    gain = np.sum(np.abs(a) ** 2, axis=-1)
    ac = np.conj(a)
    yc = np.conj(y)
    if spec.t == 1:
        z = ac[..., :1] * y[..., :1]
    elif spec.t == 2:
        z1 = ac[..., 0] * y[..., 0] + a[..., 1] * yc[..., 1]
        z2 = ac[..., 1] * y[..., 0] - a[..., 0] * yc[..., 1]
        z = np.stack([z1, z2], axis=-1)
    else:
        z1 = (ac[..., 0] * y[..., 0] + a[..., 1] * yc[..., 1]
              + a[..., 2] * yc[..., 2] + ac[..., 3] * y[..., 3])
        z2 = (ac[..., 1] * y[..., 0] - a[..., 0] * yc[..., 1]
              - ac[..., 3] * y[..., 2] + a[..., 2] * yc[..., 3])
        z3 = (ac[..., 2] * y[..., 0] + ac[..., 3] * y[..., 1]
              - a[..., 0] * yc[..., 2] - a[..., 1] * yc[..., 3])
        z = np.stack([z1, z2, z3], axis=-1)
    return z / amp, gain


def rate_constant(spec: CodeSpec, m: int) -> float:
    """Constant converting rho * sum|h_ij|^2 into the per-bit SNR of a hop.

    Equals L / (t * K * log2(m)): the 1/t from the power split, L/K from
    spreading K symbols over L slots, and 1/log2(m) from bits per symbol.
    """
    if m not in (2, 4, 8, 16):
        raise ValueError(f"unsupported constellation order {m}")
    return spec.L / (spec.t * spec.K * math.log2(m))
