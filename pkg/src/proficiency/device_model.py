"""Appliance sets and their scalar characteristics.

A device is described only by its on-state power values in watts; the off
state (0 W) is implicit. A device set is an ordered collection of devices,
ordered by each device's highest on-state value.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import StateSpaceOverflowError, ValidationError

UINT64_MAX = 2**64 - 1


def _as_watts(value) -> int:
    # bool is an Integral; reject it explicitly
    if isinstance(value, bool):
        raise ValidationError(f"power value {value!r} is not an integer")
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, float) and value.is_integer():
        raise ValidationError(f"power value {value!r} must be given as an integer, not a float")
    raise ValidationError(f"power value {value!r} is not an integer")


@dataclass(frozen=True)
class Device:
    """One appliance: strictly increasing, positive on-state power values."""

    on_states: tuple[int, ...]

    def __post_init__(self):
        values = tuple(_as_watts(v) for v in self.on_states)
        if not values:
            raise ValidationError("a device needs at least one on-state")
        if values[0] <= 0:
            raise ValidationError(f"on-state power values must be positive, got {values[0]}")
        for lo, hi in zip(values, values[1:]):
            if hi <= lo:
                raise ValidationError(f"non-increasing on-states: {list(values)}")
        object.__setattr__(self, "on_states", values)

    @property
    def n_on_states(self) -> int:
        return len(self.on_states)

    @property
    def n_states(self) -> int:
        return len(self.on_states) + 1

    @property
    def max_power(self) -> int:
        return self.on_states[-1]

    @property
    def state_powers(self) -> tuple[int, ...]:
        """Power of every state, index 0 being off."""
        return (0,) + self.on_states

    def mean_on_power(self) -> float:
        return sum(self.on_states) / len(self.on_states)


@dataclass(frozen=True)
class DeviceSet:
    """Named, ordered collection of devices.

    Devices must already be ordered by their maximal on-state value (ties
    allowed). Use :meth:`from_values` to build a set from raw lists, which
    sorts instead of rejecting.
    """

    name: str
    devices: tuple[Device, ...]

    def __post_init__(self):
        devices = tuple(d if isinstance(d, Device) else Device(tuple(d)) for d in self.devices)
        if not devices:
            raise ValidationError("a device set needs at least one device")
        for i, (a, b) in enumerate(zip(devices, devices[1:])):
            if b.max_power < a.max_power:
                raise ValidationError(
                    f"devices not ordered by maximal power: device {i + 1} "
                    f"({a.max_power} W) > device {i + 2} ({b.max_power} W)"
                )
        object.__setattr__(self, "devices", devices)

    @classmethod
    def from_values(cls, name: str, values: Iterable[Sequence[int]]) -> "DeviceSet":
        """Build a set from nested power lists, sorting states and devices.

        On-states are sorted within each device (duplicates are rejected),
        then devices are stably sorted by their maximal value.
        """
        devices = []
        for raw in values:
            states = sorted(_as_watts(v) for v in raw)
            devices.append(Device(tuple(states)))
        devices.sort(key=lambda d: d.max_power)
        return cls(name, tuple(devices))

    def __len__(self):
        return len(self.devices)

    def __iter__(self):
        return iter(self.devices)

    @property
    def n_devices(self) -> int:
        return len(self.devices)

    @property
    def radices(self) -> tuple[int, ...]:
        """Number of states of every device (on-states plus off)."""
        return tuple(d.n_states for d in self.devices)

    def as_lists(self) -> list[list[int]]:
        return [list(d.on_states) for d in self.devices]

    def is_on_off(self) -> bool:
        return all(d.n_on_states == 1 for d in self.devices)


def total_power(device_set: DeviceSet) -> int:
    """Aggregated power with every device at its highest state."""
    return sum(d.max_power for d in device_set.devices)


def state_count(device_set: DeviceSet) -> int:
    """Number of device configurations M, the product of per-device state counts."""
    m = math.prod(device_set.radices)
    if m > UINT64_MAX:
        raise StateSpaceOverflowError(f"state count {m} exceeds the 64-bit unsigned range")
    return m


def power_value_count(device_set: DeviceSet, include_off: bool = False) -> int:
    """Number of on-state power values S.

    With ``include_off`` every device's off state is counted too, which is
    the convention some published tables use (S + N).
    """
    s = sum(d.n_on_states for d in device_set.devices)
    return s + device_set.n_devices if include_off else s


def average_set_power(device_set: DeviceSet) -> float:
    """Mean over devices of each device's mean on-state power."""
    return sum(d.mean_on_power() for d in device_set.devices) / device_set.n_devices


def expected_on_power(device_set: DeviceSet) -> float:
    """Expected aggregated power when every device is on at a uniformly drawn on-state.

    Equals ``n_devices * average_set_power``.
    """
    return sum(d.mean_on_power() for d in device_set.devices)


def linear_set(n: int, p1: int, p_delta: int, name: str | None = None) -> DeviceSet:
    """On-off set with a linear power spectrum P_d = P_{d-1} + p_delta."""
    if n < 1:
        raise ValidationError("n must be at least 1")
    p1, p_delta = _as_watts(p1), _as_watts(p_delta)
    if p1 <= 0:
        raise ValidationError("p1 must be positive")
    if p_delta < 0:
        raise ValidationError("p_delta must be non-negative")
    name = name or f"linear({n},{p1},{p_delta})"
    return DeviceSet(name, tuple(Device((p1 + i * p_delta,)) for i in range(n)))


def powerlaw_set(n: int, alpha: float, p1: int = 1, name: str | None = None) -> DeviceSet:
    """On-off set with P_d = round(alpha * P_{d-1}), rounded on the running integer value."""
    if n < 1:
        raise ValidationError("n must be at least 1")
    if alpha < 1:
        raise ValidationError("alpha must be >= 1")
    p1 = _as_watts(p1)
    if p1 < 1:
        raise ValidationError("p1 must be >= 1")
    values = [p1]
    for _ in range(n - 1):
        nxt = math.floor(alpha * values[-1] + 0.5)  # half-up, not banker's rounding
        if nxt <= values[-1]:
            raise ValidationError(
                f"alpha={alpha} produces a duplicate power value {nxt} after {values[-1]}"
            )
        values.append(nxt)
    name = name or f"powerlaw({n},{alpha},{p1})"
    return DeviceSet(name, tuple(Device((v,)) for v in values))
