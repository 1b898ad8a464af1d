import math
import warnings

import numpy as np
import pytest

from conftest import CATALOG_KEYS
from proficiency.datasets_io import get_set
from proficiency.device_model import DeviceSet, total_power
from proficiency.errors import ParseError, ValidationError
from proficiency.probability import (
    DeviceProbabilities,
    max_entropy_model,
    power_distribution,
    uniform_model,
)
from proficiency.profile import (
    LoadProfile,
    PHatClampWarning,
    average_power,
    device_probability_from_runtime,
    empirical_distribution,
    energy,
    estimate_p_hat,
    profile_csv_text,
    read_profile_csv,
    synthesize,
    total_variation,
    write_profile_csv,
)

N_MC = 10**6


def expected_tv(pmf, n):
    """Mean TV of an n-sample histogram, normal approximation per value."""
    p = np.asarray(pmf)
    return 0.5 * float(np.sum(np.sqrt(2 * p * (1 - p) / (math.pi * n))))


def test_energy_and_average_power():
    prof = LoadProfile(np.array([0, 5, 10, 15]), dt=2.0)
    assert energy(prof) == 60.0
    assert average_power(prof) == 7.5
    assert average_power(prof) * len(prof) * prof.dt == energy(prof)


def test_energy_identity_on_synthetic_profile():
    s = get_set("greend3")
    prof = synthesize(s, max_entropy_model(s), 12345, seed=3, dt=0.5)
    assert average_power(prof) * len(prof) * prof.dt == energy(prof)


@pytest.mark.parametrize(
    "samples,dt",
    [([], 1.0), ([1, -2], 1.0), ([1.5], 1.0), ([1, 2], 0.0), ([[1, 2]], 1.0)],
)
def test_profile_validation(samples, dt):
    with pytest.raises(ValidationError):
        LoadProfile(np.array(samples), dt)


def test_estimate_p_hat_and_clamp():
    a = get_set("a")
    prof = LoadProfile(np.full(10, 55), 1.0)
    assert estimate_p_hat(prof, a) == pytest.approx(55 / 275)
    with pytest.warns(PHatClampWarning):
        assert estimate_p_hat(LoadProfile(np.full(3, 1000)), a) == 1.0


def test_runtime_estimator():
    assert device_probability_from_runtime(25, 100) == 0.25
    for bad in ((5, 0), (-1, 10), (11, 10)):
        with pytest.raises(ValidationError):
            device_probability_from_runtime(*bad)


def test_synthesize_is_deterministic():
    s = get_set("eco3")
    m = uniform_model(s, 0.3)
    one = synthesize(s, m, 70000, seed=42)
    assert np.array_equal(one.samples, synthesize(s, m, 70000, seed=42).samples)
    assert not np.array_equal(one.samples, synthesize(s, m, 70000, seed=43).samples)
    # chunking must not change the stream: a prefix run agrees with the long run
    assert np.array_equal(synthesize(s, m, 1000, seed=42).samples, one.samples[:1000])


def test_synthesize_degenerate_models():
    b = get_set("b")
    assert not synthesize(b, uniform_model(b, 0.0), 500, seed=1).samples.any()
    assert (synthesize(b, uniform_model(b, 1.0), 500, seed=1).samples == total_power(b)).all()


def test_synthesize_rejects_bad_arguments():
    b = get_set("b")
    with pytest.raises(ValidationError):
        synthesize(b, uniform_model(b, 0.5), 0, seed=1)
    with pytest.raises(ValidationError):
        synthesize(b, uniform_model(b, 0.5), 10, seed=-1)
    with pytest.raises(ValidationError):
        synthesize(b, uniform_model(get_set("greend1"), 0.5), 10, seed=1)


def test_set_a_zero_fraction_and_mean():
    a = get_set("a")
    prof = synthesize(a, uniform_model(a, 0.1), N_MC, seed=2024)
    assert (prof.samples == 0).mean() == pytest.approx(0.3486784401, abs=0.002)
    assert average_power(prof) == pytest.approx(0.1 * total_power(a), abs=0.5)


@pytest.mark.parametrize("key", CATALOG_KEYS)
def test_total_variation_below_one_percent(key):
    s = get_set(key)
    m = uniform_model(s, 0.1)
    prof = synthesize(s, m, N_MC, seed=7)
    assert total_variation(empirical_distribution(prof, total_power(s)), power_distribution(s, m)) < 0.01


@pytest.mark.parametrize("key", CATALOG_KEYS)
def test_total_variation_tracks_sampling_noise(key):
    # with ~10^3 equally likely values the sampling floor itself exceeds 0.01,
    # so compare against the expected TV of an exact sampler instead
    s = get_set(key)
    m = max_entropy_model(s)
    dist = power_distribution(s, m)
    prof = synthesize(s, m, N_MC, seed=11)
    tv = total_variation(empirical_distribution(prof, total_power(s)), dist)
    assert tv < 1.2 * expected_tv(dist.pmf, N_MC)


def test_total_variation_basics():
    s = get_set("b2")
    d = power_distribution(s, max_entropy_model(s))
    assert total_variation(d.pmf, d) == 0.0
    point = np.zeros(3)
    point[0] = 1.0
    assert total_variation(point, power_distribution(s, uniform_model(s, 1.0))) == 1.0


@pytest.mark.parametrize("key", ["a", "b", "b2"])
@pytest.mark.parametrize("p_hat", [0.1, 0.3, 0.5, 0.9])
def test_p_hat_estimate_within_three_sigma(key, p_hat):
    s = get_set(key)
    n = 100_000
    prof = synthesize(s, uniform_model(s, p_hat), n, seed=int(p_hat * 1000))
    sigma = math.sqrt(p_hat * (1 - p_hat) / (n * s.n_devices))
    assert abs(estimate_p_hat(prof, s) - p_hat) <= 3 * sigma


def test_non_uniform_model_frequencies():
    s = DeviceSet.from_values("two", [[10, 20], [100]])
    m = DeviceProbabilities(((0.2, 0.3), (0.6,)))
    prof = synthesize(s, m, 200_000, seed=5)
    freq = empirical_distribution(prof)
    assert freq[120] == pytest.approx(0.3 * 0.6, abs=0.005)
    assert freq[0] == pytest.approx(0.5 * 0.4, abs=0.005)


def test_csv_round_trip(tmp_path):
    s = get_set("redd1")
    prof = synthesize(s, uniform_model(s, 0.4), 1000, seed=9, dt=0.25)
    path = tmp_path / "p.csv"
    write_profile_csv(prof, path)
    text = path.read_bytes()
    assert text.startswith(b"t_s,power_w\n0,") and b"\r" not in text
    back = read_profile_csv(path)
    assert back.dt == 0.25
    assert np.array_equal(back.samples, prof.samples)
    assert profile_csv_text(back).encode() == text


@pytest.mark.parametrize(
    "content,line,column",
    [
        ("time,power\n0,1\n", 1, 1),
        ("t_s,power_w\n0,1\n1,x\n", 3, 2),
        ("t_s,power_w\n0,1\nbad,1\n", 3, 1),
        ("t_s,power_w\n0,1,2\n", 2, 1),
        ("t_s,power_w\n", 2, 1),
    ],
)
def test_csv_parse_errors(tmp_path, content, line, column):
    path = tmp_path / "bad.csv"
    path.write_text(content)
    with pytest.raises(ParseError) as info:
        read_profile_csv(path)
    assert (info.value.line, info.value.column) == (line, column)


def test_csv_rejects_negative_power(tmp_path):
    path = tmp_path / "neg.csv"
    path.write_text("t_s,power_w\n0,-4\n")
    with pytest.raises(ValidationError):
        read_profile_csv(path)
