import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import reference_data as ref
from conftest import CATALOG_KEYS, brute_force_pmf
from proficiency.datasets_io import get_set
from proficiency.device_model import Device, DeviceSet, state_count, total_power
from proficiency.errors import ValidationError
from proficiency.probability import (
    DeviceProbabilities,
    convolve_counts,
    enumerate_power_distribution,
    expected_power,
    max_entropy_model,
    power_distribution,
    runtime_model,
    state_probability,
    uniform_model,
    z_state_probability,
    zero_power_probability,
)
from proficiency.state_space import enumerate_occupation

MODELS = ["max-entropy", 0.1, 0.5, 0.9]


def make_model(s, which):
    return max_entropy_model(s) if which == "max-entropy" else uniform_model(s, which)


def test_uniform_model():
    m = uniform_model(get_set("b"), 0.5)
    assert all(m.state_probs(i).tolist() == [0.5, 0.5] for i in range(10))
    two = DeviceSet("x", (Device((1, 2)),))
    assert uniform_model(two, 0.6).state_probs(0) == pytest.approx([0.4, 0.3, 0.3])
    off = uniform_model(get_set("greend1"), 0.0)
    assert all(off.off(i) == 1.0 for i in range(6))
    with pytest.raises(ValidationError):
        uniform_model(two, 1.2)


def test_max_entropy_model():
    b = get_set("b")
    assert max_entropy_model(b).on == uniform_model(b, 0.5).on
    three = DeviceSet("x", (Device((1, 2)),))
    assert max_entropy_model(three).state_probs(0) == pytest.approx([1 / 3] * 3)
    g = get_set("greend1")
    assert state_probability(g, max_entropy_model(g), (1, 0, 3, 1, 6, 2)) == pytest.approx(1 / 2352)


def test_state_probability():
    b = get_set("b")
    m = uniform_model(b, 0.1)
    assert state_probability(b, m, (0,) * 10) == pytest.approx(0.3486784401, abs=1e-12)
    assert state_probability(b, m, (1,) * 10) == pytest.approx(1e-10, rel=1e-9)
    assert state_probability(b, max_entropy_model(b), (1, 0) * 5) == 1 / 1024


@pytest.mark.parametrize("p_hat", sorted(ref.P_OF_Z))
def test_z_state_probability_curves(p_hat):
    for z, expected in enumerate(ref.P_OF_Z[p_hat]):
        assert z_state_probability(10, z, p_hat) == pytest.approx(expected, rel=1e-9)


def test_z_state_probability_constant_at_half():
    assert {z_state_probability(10, z, 0.5) for z in range(11)} == {2**-10}
    with pytest.raises(ValidationError):
        z_state_probability(3, 4, 0.5)


def test_power_distribution_examples():
    b2 = get_set("b2")
    d = power_distribution(b2, max_entropy_model(b2))
    assert np.allclose(d.pmf, 1 / 1024, rtol=0, atol=1e-15)
    pair = DeviceSet.from_values("x", [[1], [1]])
    assert power_distribution(pair, uniform_model(pair, 0.5)).as_dict() == {0: 0.25, 1: 0.5, 2: 0.25}
    g = get_set("greend3")
    assert power_distribution(g, uniform_model(g, 0.0)).as_dict() == {0: 1.0}


@pytest.mark.parametrize("p_hat,i", [(round(0.1 * (i + 1), 1), i) for i in range(9)])
@pytest.mark.parametrize("key", ["a", "b"])
def test_zero_power_curve(key, p_hat, i):
    s = get_set(key)
    assert zero_power_probability(s, uniform_model(s, p_hat)) == pytest.approx(
        ref.ZERO_POWER[key][i], abs=1e-12
    )


def test_zero_power_examples():
    b = get_set("b")
    assert zero_power_probability(b, uniform_model(b, 0.5)) == 0.0009765625
    assert zero_power_probability(b, uniform_model(b, 1.0)) == 0.0


@pytest.mark.parametrize("which", MODELS)
@pytest.mark.parametrize("key", CATALOG_KEYS)
def test_convolution_matches_enumeration(key, which):
    s = get_set(key)
    model = make_model(s, which)
    fast = power_distribution(s, model)
    slow = enumerate_power_distribution(s, model)
    assert abs(fast.pmf.sum() - 1) < 1e-9
    assert np.max(np.abs(fast.pmf - slow.pmf)) <= 1e-12
    assert fast.pmf[0] == zero_power_probability(s, model)


@pytest.mark.parametrize("key", CATALOG_KEYS)
def test_counting_mode_matches_enumeration(key):
    s = get_set(key)
    assert np.array_equal(convolve_counts(s), enumerate_occupation(s).counts)


@pytest.mark.parametrize("key", ["a", "b", "b2"])
@pytest.mark.parametrize("p_hat", [0.1, 0.3, 0.77])
def test_expected_power_on_off(key, p_hat):
    s = get_set(key)
    m = uniform_model(s, p_hat)
    assert expected_power(s, m) == pytest.approx(p_hat * total_power(s), rel=1e-12)
    assert power_distribution(s, m).mean() == pytest.approx(p_hat * total_power(s), rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.lists(st.integers(1, 40), min_size=1, max_size=3, unique=True), min_size=1, max_size=5),
    st.data(),
)
def test_against_itertools_random_models(values, data):
    s = DeviceSet.from_values("h", values)
    on = []
    for dev in s.devices:
        w = data.draw(st.lists(st.floats(0, 1), min_size=dev.n_states, max_size=dev.n_states))
        total = sum(w) or 1.0
        on.append(tuple(x / total for x in w[1:]) if sum(w) else (0.0,) * dev.n_on_states)
    model = DeviceProbabilities(tuple(on))
    d = power_distribution(s, model)
    expected = brute_force_pmf(s.as_lists(), [model.state_probs(i) for i in range(s.n_devices)])
    for p in range(len(d.pmf)):
        assert d.pmf[p] == pytest.approx(expected.get(p, 0.0), abs=1e-12)
    assert d.pmf[0] == zero_power_probability(s, model)


def test_model_validation():
    s = DeviceSet.from_values("x", [[1], [2, 3]])
    with pytest.raises(ValidationError, match="sum"):
        DeviceProbabilities(((0.5,), (0.7, 0.6)))
    with pytest.raises(ValidationError):
        DeviceProbabilities(((-0.1,),))
    with pytest.raises(ValidationError, match="devices"):
        power_distribution(s, DeviceProbabilities(((0.5,),)))
    with pytest.raises(ValidationError, match="on-state"):
        power_distribution(s, DeviceProbabilities(((0.5,), (0.2,))))


def test_runtime_model():
    s = DeviceSet.from_values("x", [[1], [2, 3]])
    m = runtime_model(s, [[25], [10, 30]], 100)
    assert m.on == ((0.25,), (0.1, 0.3))
    assert m.off(1) == pytest.approx(0.6)
