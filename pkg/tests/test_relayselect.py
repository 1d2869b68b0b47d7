"""Selection metrics and argmax behavior."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relaylink.relayselect import (bottleneck_metric, harmonic_mean_metric,
                                   mean_amplitude, relay_metrics, select_best)

nonneg = st.one_of(st.just(0.0),
                   st.floats(min_value=1e-6, max_value=1e6, allow_nan=False))


def test_mean_amplitude_values():
    assert mean_amplitude([1.0, 1.0]) == 1.0
    assert mean_amplitude([3.0, 4.0j]) == pytest.approx(3.5)
    assert mean_amplitude([0.0, 0.0, 0.0]) == 0.0
    with pytest.raises(ValueError):
        mean_amplitude([])


def test_bottleneck_values():
    assert bottleneck_metric(4.0, 1.0) == 1.0
    assert bottleneck_metric(2.5, 2.5) == 2.5
    assert bottleneck_metric(0.0, 5.0) == 0.0


def test_harmonic_mean_values():
    assert harmonic_mean_metric(4.0, 1.0) == pytest.approx(1.6)
    assert harmonic_mean_metric(2.5, 2.5) == pytest.approx(2.5)
    assert harmonic_mean_metric(0.0, 5.0) == 0.0
    assert harmonic_mean_metric(0.0, 0.0) == 0.0


@settings(max_examples=300, deadline=None)
@given(a=nonneg, d=nonneg)
def test_harmonic_mean_bracketed_by_min_and_twice_min(a, d):
    hm = harmonic_mean_metric(a, d)
    lo = bottleneck_metric(a, d)
    assert lo <= hm * (1 + 1e-12)
    assert hm <= 2.0 * lo * (1 + 1e-12)


def test_select_best_values_and_ties():
    assert select_best([0.5]) == 0
    assert select_best([1.0, 2.0, 1.6]) == 1
    assert select_best([2.0, 2.0]) == 0
    with pytest.raises(ValueError):
        select_best([])


@settings(max_examples=200, deadline=None)
@given(metrics=st.lists(nonneg, min_size=1, max_size=8),
       scale=st.floats(min_value=1e-6, max_value=1e6))
def test_selection_invariant_under_common_scaling(metrics, scale):
    assert select_best(metrics) == select_best([scale * m for m in metrics])


def test_metrics_depend_only_on_amplitudes():
    rng = np.random.default_rng(4)
    h = rng.normal(size=(5, 2)) + 1j * rng.normal(size=(5, 2))
    g = rng.normal(size=5) + 1j * rng.normal(size=5)
    phases_h = np.exp(1j * rng.uniform(0, 2 * np.pi, size=h.shape))
    phases_g = np.exp(1j * rng.uniform(0, 2 * np.pi, size=g.shape))
    for rule in ("rule1", "rule2"):
        a = relay_metrics(h, g, rule)
        b = relay_metrics(h * phases_h, g * phases_g, rule)
        assert np.allclose(a.metric, b.metric)
        assert select_best(a.metric) == select_best(b.metric)


def test_rule1_metric_is_the_bottleneck():
    rng = np.random.default_rng(6)
    h = rng.normal(size=(4, 2)) + 1j * rng.normal(size=(4, 2))
    g = rng.normal(size=4) + 1j * rng.normal(size=4)
    m = relay_metrics(h, g, "rule1")
    want = np.minimum(m.first_hop_amplitude**2, m.second_hop_amplitude**2)
    assert np.allclose(m.metric, want)


def test_combining_gain_variant():
    rng = np.random.default_rng(7)
    h = rng.normal(size=(4, 2)) + 1j * rng.normal(size=(4, 2))
    g = rng.normal(size=4) + 1j * rng.normal(size=4)
    alt = relay_metrics(h, g, "rule1", use_combining_gain=True)
    assert np.allclose(alt.first_hop_amplitude**2, np.sum(np.abs(h) ** 2, axis=1))
    # for a single antenna the two first-hop qualities coincide
    h1 = h[:, :1]
    assert np.allclose(relay_metrics(h1, g, "rule1").metric,
                       relay_metrics(h1, g, "rule1", use_combining_gain=True).metric)


def test_unknown_rule_rejected():
    with pytest.raises(ValueError):
        relay_metrics(np.ones((2, 2)), np.ones(2), "rule3")
