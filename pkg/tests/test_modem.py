"""Constellation tables, Gray structure, and ML demapping vs brute force."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relaylink.modem import (bpsk, constellation, demodulate_ml, modulate,
                             psk8, qam16, qpsk)

ALL = [bpsk(), qpsk(), psk8(), qam16()]


@pytest.mark.parametrize("c", ALL, ids=lambda c: c.name)
def test_labels_are_a_permutation_of_all_bit_strings(c):
    m, k = c.order, c.bits_per_symbol
    assert m == 2**k
    assert sorted(c.labels) == sorted(format(v, f"0{k}b") for v in range(m))


@pytest.mark.parametrize("c", ALL, ids=lambda c: c.name)
def test_unit_average_energy(c):
    assert abs(np.mean(np.abs(c.points) ** 2) - 1.0) < 1e-12


@pytest.mark.parametrize("c", [bpsk(), qpsk(), psk8()], ids=lambda c: c.name)
def test_gray_property_on_the_ring(c):
    order = np.argsort(np.mod(np.angle(c.points), 2 * np.pi))
    ring = c.bits[order]
    for i in range(c.order):
        diff = np.sum(ring[i] != ring[(i + 1) % c.order])
        assert diff == 1, f"ring neighbors {i},{i+1} differ in {diff} bits"


def test_gray_property_on_the_qam_grid():
    c = qam16()
    coords = {tuple(np.round(np.sqrt(10) * np.array([p.real, p.imag])).astype(int)): i
              for i, p in enumerate(c.points)}
    for (x, y), i in coords.items():
        for dx, dy in ((2, 0), (-2, 0), (0, 2), (0, -2)):
            j = coords.get((x + dx, y + dy))
            if j is not None:
                assert np.sum(c.bits[i] != c.bits[j]) == 1


def test_declared_mappings():
    assert bpsk().points[0] == 1.0 and bpsk().points[1] == -1.0
    assert np.isclose(modulate([0, 0], qpsk())[0], (1 + 1j) / np.sqrt(2))
    assert np.isclose(modulate([0, 0, 0, 0], qam16())[0], (-3 - 3j) / np.sqrt(10))


def test_modulate_rejects_indivisible_bit_count():
    with pytest.raises(ValueError):
        modulate([0, 1, 0], qpsk())


def test_constellation_lookup_and_aliases():
    assert constellation("qpsk").name == "QPSK"
    assert constellation("PSK8").name == "8PSK"
    assert constellation("QAM16").name == "16QAM"
    with pytest.raises(ValueError):
        constellation("64QAM")


@pytest.mark.parametrize("c", ALL, ids=lambda c: c.name)
@pytest.mark.parametrize("gain", [0.3, 1.0, 7.5])
def test_noiseless_round_trip(c, gain):
    bits = np.array(list(itertools.chain.from_iterable(
        map(int, lab) for lab in c.labels)), dtype=np.uint8)
    s = modulate(bits, c)
    out = demodulate_ml(gain * s, gain, c).reshape(-1)
    assert np.array_equal(out, bits)


def test_zero_gain_ties_resolve_to_lowest_index():
    c = qam16()
    rng = np.random.default_rng(3)
    stats = rng.normal(size=50) + 1j * rng.normal(size=50)
    out = demodulate_ml(stats, 0.0, c)
    assert np.all(out == c.bits[0])


@settings(max_examples=200, deadline=None)
@given(scale=st.floats(min_value=1e-6, max_value=1e6),
       re=st.floats(-3, 3), im=st.floats(-3, 3),
       gain=st.floats(min_value=1e-3, max_value=1e3))
def test_demapping_is_scale_invariant(scale, re, im, gain):
    c = qam16()
    stat = re + 1j * im
    a = demodulate_ml(stat, gain, c)
    b = demodulate_ml(scale * stat, scale * gain, c)
    assert np.array_equal(a, b)


@pytest.mark.parametrize("c", ALL, ids=lambda c: c.name)
def test_matches_exhaustive_search_oracle(c):
    rng = np.random.default_rng(17)
    n = 10_000
    stats = rng.normal(size=n) + 1j * rng.normal(size=n)
    gains = rng.uniform(0.1, 3.0, size=n)
    got = demodulate_ml(stats, gains, c)
    # independent oracle: explicit loop over all points
    d = np.empty((n, c.order))
    for k, p in enumerate(c.points):
        d[:, k] = np.abs(stats - gains * p) ** 2
    want = c.bits[np.argmin(d, axis=1)]
    assert np.array_equal(got, want)
