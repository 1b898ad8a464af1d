"""Device-state probability models and the distribution of aggregated power.

Devices are statistically independent. The distribution of the aggregated
power is therefore the convolution of the per-device state distributions
along the integer power axis, which is how :func:`power_distribution`
computes it. :func:`enumerate_power_distribution` sums state probabilities
over all configurations instead and is kept as a cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .device_model import DeviceSet, state_count, total_power
from .errors import ValidationError
from .state_space import (
    DEFAULT_ENUMERATION_CAP,
    _check_cap,
    _check_digits,
    _count_dtype,
    _state_power_tables,
    iter_state_blocks,
)

NORMALIZATION_TOL = 1e-9


@dataclass(frozen=True)
class DeviceProbabilities:
    """On-state probabilities per device; the off probability is implied.

    ``on[d][s]`` is the probability that device ``d`` runs at its
    ``(s+1)``-th on-state.
    """

    on: tuple[tuple[float, ...], ...]
    description: str = "custom"

    def __post_init__(self):
        on = tuple(tuple(float(p) for p in dev) for dev in self.on)
        for i, dev in enumerate(on):
            if any(not math.isfinite(p) or p < 0 for p in dev):
                raise ValidationError(f"device {i + 1}: probabilities must be finite and >= 0")
            if sum(dev) > 1 + NORMALIZATION_TOL:
                raise ValidationError(
                    f"device {i + 1}: on-state probabilities sum to {sum(dev)} > 1"
                )
        object.__setattr__(self, "on", on)

    def off(self, d: int) -> float:
        return max(0.0, 1.0 - sum(self.on[d]))

    def state_probs(self, d: int) -> np.ndarray:
        """Probabilities of every state of device ``d``, off first."""
        return np.array((self.off(d),) + self.on[d])

    def check_shape(self, device_set: DeviceSet) -> None:
        if len(self.on) != device_set.n_devices:
            raise ValidationError(
                f"model has {len(self.on)} devices, set {device_set.name!r} has {device_set.n_devices}"
            )
        for i, (dev, probs) in enumerate(zip(device_set.devices, self.on)):
            if len(probs) != dev.n_on_states:
                raise ValidationError(
                    f"device {i + 1}: model lists {len(probs)} on-state probabilities, "
                    f"device has {dev.n_on_states} on-states"
                )


def uniform_model(device_set: DeviceSet, p_hat: float) -> DeviceProbabilities:
    """Every device is on with probability ``p_hat``, split equally over its on-states."""
    if not 0.0 <= p_hat <= 1.0:
        raise ValidationError(f"p_hat must lie in [0, 1], got {p_hat}")
    on = tuple((p_hat / d.n_on_states,) * d.n_on_states for d in device_set.devices)
    return DeviceProbabilities(on, f"uniform p_hat={p_hat:g}")


def max_entropy_model(device_set: DeviceSet) -> DeviceProbabilities:
    """Each device uniform over all its states, so every configuration has probability 1/M."""
    on = tuple((1.0 / d.n_states,) * d.n_on_states for d in device_set.devices)
    return DeviceProbabilities(on, "max-entropy")


def runtime_model(device_set: DeviceSet, runtimes: Sequence[Sequence[int]], n: int) -> DeviceProbabilities:
    """Model from observed run times: ``runtimes[d][s]`` samples spent in on-state ``s``."""
    from .profile import device_probability_from_runtime

    on = tuple(
        tuple(device_probability_from_runtime(n_ds, n) for n_ds in dev) for dev in runtimes
    )
    model = DeviceProbabilities(on, f"run-times over n={n}")
    model.check_shape(device_set)
    return model


def state_probability(
    device_set: DeviceSet, model: DeviceProbabilities, digits: Sequence[int]
) -> float:
    """Probability of one configuration: the product of the device state probabilities."""
    model.check_shape(device_set)
    _check_digits(device_set, digits)
    return math.prod(float(model.state_probs(i)[s]) for i, s in enumerate(digits))


def z_state_probability(n: int, z: int, p_hat: float) -> float:
    """Probability of one particular on-off configuration with ``z`` of ``n`` devices on."""
    if not 0 <= z <= n:
        raise ValidationError(f"z={z} outside [0, {n}]")
    return p_hat**z * (1.0 - p_hat) ** (n - z)


@dataclass(frozen=True)
class PowerDistribution:
    """Probability mass per aggregated power value on the dense axis 0..P_total."""

    pmf: np.ndarray
    description: str = ""

    def __post_init__(self):
        if np.any(self.pmf < 0):
            raise ValidationError("negative probability mass")
        total = float(self.pmf.sum())
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise ValidationError(f"power distribution sums to {total}, not 1")

    def __getitem__(self, power: int) -> float:
        if 0 <= power < len(self.pmf):
            return float(self.pmf[power])
        return 0.0

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.pmf)

    def as_dict(self) -> dict[int, float]:
        return {int(p): float(self.pmf[p]) for p in self.support}

    def mean(self) -> float:
        return float(np.dot(np.arange(len(self.pmf)), self.pmf))


def _fold(device_set: DeviceSet, weights: list[np.ndarray], dtype) -> np.ndarray:
    # shift-and-add convolution: one pass per on-state, O(S * P_total)
    acc = np.zeros(1, dtype=dtype)
    acc[0] = 1
    for dev, w in zip(device_set.devices, weights):
        out = np.zeros(len(acc) + dev.max_power, dtype=dtype)
        for power, weight in zip(dev.state_powers, w):
            if weight:
                out[power : power + len(acc)] += weight * acc
        acc = out
    return acc


def convolve_counts(device_set: DeviceSet) -> np.ndarray:
    """Occupation numbers c(P) by convolving unit state counts (counting mode)."""
    dtype = _count_dtype(state_count(device_set))
    weights = [np.ones(d.n_states, dtype=dtype) for d in device_set.devices]
    return _fold(device_set, weights, dtype)


def power_distribution(device_set: DeviceSet, model: DeviceProbabilities) -> PowerDistribution:
    """Distribution of the aggregated power value under an independent-device model."""
    model.check_shape(device_set)
    weights = [model.state_probs(i) for i in range(device_set.n_devices)]
    return PowerDistribution(_fold(device_set, weights, float), model.description)


def enumerate_power_distribution(
    device_set: DeviceSet, model: DeviceProbabilities, cap: int = DEFAULT_ENUMERATION_CAP
) -> PowerDistribution:
    """Same as :func:`power_distribution`, by summing p_k over every configuration."""
    model.check_shape(device_set)
    _check_cap(device_set, cap)
    tables = _state_power_tables(device_set)
    probs = [model.state_probs(i) for i in range(device_set.n_devices)]
    pmf = np.zeros(total_power(device_set) + 1)
    for _, digits in iter_state_blocks(device_set):
        powers = sum(t[digits[:, i]] for i, t in enumerate(tables))
        p_k = np.ones(len(digits))
        for i, p in enumerate(probs):
            p_k *= p[digits[:, i]]
        pmf += np.bincount(powers, weights=p_k, minlength=len(pmf))
    return PowerDistribution(pmf, model.description)


def zero_power_probability(device_set: DeviceSet, model: DeviceProbabilities) -> float:
    """Probability that every device is off at once."""
    model.check_shape(device_set)
    return math.prod(model.off(i) for i in range(device_set.n_devices))


def expected_power(device_set: DeviceSet, model: DeviceProbabilities) -> float:
    """E[P] as the sum of per-device expected power."""
    model.check_shape(device_set)
    return sum(
        sum(p * w for p, w in zip(model.on[i], dev.on_states))
        for i, dev in enumerate(device_set.devices)
    )
