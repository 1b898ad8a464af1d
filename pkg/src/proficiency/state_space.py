"""Device-state configurations, their aggregated power, and occupation numbers.

States are indexed from zero. Index ``k`` decomposes in mixed radix with
device 1 varying fastest, so the all-off state is ``k = 0`` and the state
with every device at its highest value is ``k = M - 1``. (Published state
numbers ``1..M`` map to ``0..M-1``.)

The enumeration routines here walk every configuration explicitly. They are
exact and deliberately simple, and serve as the reference against which the
convolution engine in :mod:`proficiency.probability` is checked.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .device_model import DeviceSet, state_count, total_power
from .errors import EnumerationCapError, StateSpaceOverflowError, ValidationError

DEFAULT_ENUMERATION_CAP = 2**24
_BLOCK = 2**18


def _strides(radices: Sequence[int]) -> list[int]:
    strides, acc = [], 1
    for r in radices:
        strides.append(acc)
        acc *= r
    return strides


def digits_of_state(device_set: DeviceSet, k: int) -> tuple[int, ...]:
    """State index of every device for configuration ``k`` (0 = off)."""
    m = state_count(device_set)
    if not 0 <= k < m:
        raise ValidationError(f"state index {k} out of range [0, {m})")
    digits = []
    for r in device_set.radices:
        k, digit = divmod(k, r)
        digits.append(digit)
    return tuple(digits)


def state_index(device_set: DeviceSet, digits: Sequence[int]) -> int:
    """Inverse of :func:`digits_of_state`."""
    _check_digits(device_set, digits)
    return sum(d * s for d, s in zip(digits, _strides(device_set.radices)))


def _check_digits(device_set: DeviceSet, digits: Sequence[int]) -> None:
    if len(digits) != device_set.n_devices:
        raise ValidationError(
            f"expected {device_set.n_devices} state digits, got {len(digits)}"
        )
    for i, (d, r) in enumerate(zip(digits, device_set.radices)):
        if not 0 <= d < r:
            raise ValidationError(f"digit {d} of device {i + 1} outside [0, {r - 1}]")


def state_power(device_set: DeviceSet, digits: Sequence[int]) -> int:
    """Aggregated power of a configuration; digit 0 contributes 0 W."""
    _check_digits(device_set, digits)
    return sum(dev.state_powers[d] for dev, d in zip(device_set.devices, digits))


def iter_state_blocks(
    device_set: DeviceSet, block: int = _BLOCK
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield ``(k, digits)`` for consecutive index ranges covering all states.

    ``digits`` has shape ``(len(k), N)``. Blocks are produced in index order
    and do not depend on each other.
    """
    m = state_count(device_set)
    radices = np.array(device_set.radices, dtype=np.int64)
    strides = np.array(_strides(device_set.radices), dtype=np.int64)
    for start in range(0, m, block):
        k = np.arange(start, min(start + block, m), dtype=np.int64)
        digits = (k[:, None] // strides[None, :]) % radices[None, :]
        yield k, digits


def _state_power_tables(device_set: DeviceSet) -> list[np.ndarray]:
    return [np.array(d.state_powers, dtype=np.int64) for d in device_set.devices]


def enumerate_state_powers(device_set: DeviceSet, cap: int = DEFAULT_ENUMERATION_CAP) -> np.ndarray:
    """Aggregated power ``P_k`` for every state index, in index order."""
    _check_cap(device_set, cap)
    tables = _state_power_tables(device_set)
    out = np.empty(state_count(device_set), dtype=np.int64)
    for k, digits in iter_state_blocks(device_set):
        out[k] = sum(t[digits[:, i]] for i, t in enumerate(tables))
    return out


def _check_cap(device_set: DeviceSet, cap: int) -> None:
    m = state_count(device_set)
    if m > cap:
        raise EnumerationCapError(
            f"{device_set.name}: {m} states exceed the enumeration cap of {cap}; "
            "use the convolution engine instead"
        )


@dataclass(frozen=True)
class OccupationHistogram:
    """Exact number of configurations per aggregated power value.

    ``counts[P]`` is c(P) on the dense axis ``0..P_total``; unoccupied power
    values hold zero. ``by_z`` optionally splits counts by the number of
    devices switched on (rows z = 0..N), for on-off sets only.
    """

    counts: np.ndarray
    total_states: int
    by_z: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        if int(self.counts.sum()) != self.total_states:
            raise ValidationError("occupation counts do not sum to the number of states")
        if self.counts[0] < 1:
            raise ValidationError("the all-off state must occupy 0 W")

    @property
    def occupied(self) -> np.ndarray:
        """Power values with at least one configuration."""
        return np.flatnonzero(self.counts)

    @property
    def n_occupied(self) -> int:
        return int(np.count_nonzero(self.counts))

    @property
    def max_count(self) -> int:
        return int(self.counts.max())

    def as_dict(self) -> dict[int, int]:
        return {int(p): int(self.counts[p]) for p in self.occupied}

    def probabilities(self) -> np.ndarray:
        """c(P)/M, the power distribution under equally likely states."""
        return self.counts.astype(float) / self.total_states


def _count_dtype(m: int):
    # counts never exceed M, and M is bounded by the 64-bit unsigned range
    if m > 2**128 - 1:
        raise StateSpaceOverflowError("occupation counts exceed the 128-bit range")
    return np.int64 if m < 2**63 else object


def enumerate_occupation(
    device_set: DeviceSet, cap: int = DEFAULT_ENUMERATION_CAP, by_z: bool = False
) -> OccupationHistogram:
    """Occupation histogram by walking every configuration."""
    _check_cap(device_set, cap)
    m = state_count(device_set)
    p_total = total_power(device_set)
    tables = _state_power_tables(device_set)
    counts = np.zeros(p_total + 1, dtype=_count_dtype(m))
    split = None
    if by_z:
        if not device_set.is_on_off():
            raise ValidationError("a breakdown by z is defined for on-off sets only")
        split = np.zeros((device_set.n_devices + 1, p_total + 1), dtype=np.int64)
    for _, digits in iter_state_blocks(device_set):
        powers = sum(t[digits[:, i]] for i, t in enumerate(tables))
        counts += np.bincount(powers, minlength=p_total + 1).astype(counts.dtype)
        if split is not None:
            z = digits.sum(axis=1)
            np.add.at(split, (z, powers), 1)
    return OccupationHistogram(counts, m, split)


def occupation_histogram(
    device_set: DeviceSet, engine: str = "convolve", cap: int = DEFAULT_ENUMERATION_CAP
) -> OccupationHistogram:
    """Occupation numbers c(P) for every power value 0..P_total.

    ``engine="convolve"`` (default) folds per-device state counts along the
    power axis; ``engine="enumerate"`` walks all M states and refuses sets
    larger than ``cap``.
    """
    if engine == "enumerate":
        return enumerate_occupation(device_set, cap=cap)
    if engine == "convolve":
        from .probability import convolve_counts

        return OccupationHistogram(convolve_counts(device_set), state_count(device_set))
    raise ValidationError(f"unknown engine {engine!r}")


def average_occupation(hist: OccupationHistogram) -> float:
    """Mean occupation number over occupied power values, M / #occupied."""
    if hist.n_occupied == 0:
        raise ValidationError("empty histogram")
    return hist.total_states / hist.n_occupied


def states_by_z(n: int) -> list[int]:
    """Number of on-off configurations with z devices on, for z = 0..n."""
    if n < 0:
        raise ValidationError("n must be non-negative")
    return [math.comb(n, z) for z in range(n + 1)]


def mean_state_power(device_set: DeviceSet) -> float:
    """Average aggregated power over all M equally weighted states.

    Computed per device (each device contributes the mean of its state
    powers including off), without enumerating.
    """
    return sum(sum(d.state_powers) / d.n_states for d in device_set.devices)
