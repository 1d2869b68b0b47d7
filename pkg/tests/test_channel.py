"""Channel and RNG: distribution moments, determinism, stream independence."""

import numpy as np
import pytest

from relaylink.channel import (ChannelRealization, RngState,
                               complex_from_uniforms, draw_awgn, draw_channel,
                               uniform_block)


def test_zero_variance_gives_exact_zeros():
    ch = draw_channel(RngState(1, 0), 3, 2, 0.0, 0.0)
    assert np.all(ch.h_sr == 0)
    assert np.all(ch.g_rd == 0)


def test_same_seed_stream_is_bit_identical():
    a = draw_channel(RngState(123, 5), 4, 2, 1.0, 2.0)
    b = draw_channel(RngState(123, 5), 4, 2, 1.0, 2.0)
    assert np.array_equal(a.h_sr, b.h_sr)
    assert np.array_equal(a.g_rd, b.g_rd)


def test_sequential_draws_advance_the_state():
    rng = RngState(9, 1)
    first = draw_channel(rng, 2, 2, 1.0, 1.0)
    second = draw_channel(rng, 2, 2, 1.0, 1.0)
    assert not np.array_equal(first.h_sr, second.h_sr)


def test_second_moment_matches_declared_variance():
    # 1e5 i.i.d. CN(0,1) entries; sample mean of |h|^2 within +/-0.02
    ch = draw_channel(RngState(2024, 0), 100_000, 1, 1.0, 1.0)
    assert abs(np.mean(np.abs(ch.h_sr) ** 2) - 1.0) < 0.02
    # the per-call API draws from the same distribution
    rng = RngState(2024, 1)
    vals = [abs(draw_channel(rng, 1, 1, 1.0, 1.0).h_sr[0, 0]) ** 2
            for _ in range(2000)]
    assert abs(np.mean(vals) - 1.0) < 0.15


def test_real_imag_parts_independent_half_variance():
    n = 200_000
    z = complex_from_uniforms(uniform_block(7, 0, 0, 2 * n), 2.0)
    tol = 4.0 / np.sqrt(n)
    assert abs(np.var(z.real) - 1.0) < 3 * tol
    assert abs(np.var(z.imag) - 1.0) < 3 * tol
    corr = np.corrcoef(z.real, z.imag)[0, 1]
    assert abs(corr) < tol


def test_awgn_moments():
    noise = draw_awgn(RngState(5, 0), 2.0, 100_000)
    assert abs(np.mean(np.abs(noise) ** 2) - 2.0) < 0.05


def test_awgn_edge_cases():
    assert draw_awgn(RngState(1, 0), 0.0, 4).tolist() == [0, 0, 0, 0]
    assert draw_awgn(RngState(1, 0), 1.0, 0).shape == (0,)


def test_distinct_streams_are_uncorrelated():
    n = 100_000
    a = uniform_block(77, 0, 0, n) - 0.5
    b = uniform_block(77, 1, 0, n) - 0.5
    corr = np.corrcoef(a, b)[0, 1]
    assert abs(corr) < 4.0 / np.sqrt(n)


def test_uniform_block_is_counter_addressable():
    # regenerating any aligned sub-range must reproduce the same words;
    # the simulator's per-trial reproducibility rests on this
    full = uniform_block(42, 3, 0, 64)
    for offset in (0, 4, 16, 60):
        part = uniform_block(42, 3, offset, 64 - offset)
        assert np.array_equal(part, full[offset:])


def test_uniform_block_rejects_misaligned_offset():
    with pytest.raises(ValueError):
        uniform_block(1, 0, 2, 8)


def test_invalid_dimensions_and_parameters():
    rng = RngState(1, 0)
    with pytest.raises(ValueError):
        draw_channel(rng, 0, 1, 1.0, 1.0)
    with pytest.raises(ValueError):
        draw_channel(rng, 1, 0, 1.0, 1.0)
    with pytest.raises(ValueError):
        draw_channel(rng, 1, 1, -1.0, 1.0)
    with pytest.raises(ValueError):
        draw_awgn(rng, -0.5, 3)
    with pytest.raises(ValueError):
        draw_awgn(rng, 1.0, -1)
    with pytest.raises(ValueError):
        RngState(-1, 0)
    with pytest.raises(ValueError):
        RngState(0, 2**64)


def test_realization_shape_validation():
    with pytest.raises(ValueError):
        ChannelRealization(np.zeros((2, 2)), np.zeros(3), 1.0, 1.0)
    with pytest.raises(ValueError):
        ChannelRealization(np.zeros((2, 2)), np.zeros(2), -1.0, 1.0)
    ch = ChannelRealization(np.zeros((3, 4)), np.zeros(3), 1.0, 1.0)
    assert ch.relays == 3 and ch.antennas == 4
