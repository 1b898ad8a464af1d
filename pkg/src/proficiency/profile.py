"""Load profiles: energy, average power, p_hat estimation and synthesis.

Synthetic profiles model a discrete memoryless source. Every time step draws
each device's state independently from the device model and emits the sum of
the selected power values.

Random numbers come from numpy's Philox4x64 counter-based generator
(``numpy.random.Philox``), seeded with a single unsigned 64-bit integer.
Uniform doubles are drawn as a C-ordered ``(n, N)`` array, time step by time
step and device by device within a step. Device ``d`` at step ``i`` is in state
``s`` when ``u[i, d]`` falls in the ``s``-th interval of its cumulative state
probabilities (off first). Generation is chunked along time without changing
the stream order, so a profile is a pure function of (set, model, n, seed).
"""
from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .device_model import DeviceSet, total_power
from .errors import ParseError, ValidationError
from .probability import DeviceProbabilities, PowerDistribution

_CHUNK = 1 << 16


class PHatClampWarning(UserWarning):
    """Estimated p_hat exceeded 1 and was clamped."""


@dataclass(frozen=True)
class LoadProfile:
    samples: np.ndarray
    dt: float = 1.0

    def __post_init__(self):
        samples = np.asarray(self.samples)
        if samples.ndim != 1 or len(samples) < 1:
            raise ValidationError("a profile needs at least one sample")
        if not np.issubdtype(samples.dtype, np.integer):
            if not np.all(np.equal(np.mod(samples, 1), 0)):
                raise ValidationError("power samples must be integer watts")
            samples = samples.astype(np.int64)
        if np.any(samples < 0):
            raise ValidationError("power samples must be non-negative")
        if not self.dt > 0:
            raise ValidationError("sampling interval dt must be positive")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "dt", float(self.dt))

    def __len__(self):
        return len(self.samples)


def energy(profile: LoadProfile) -> float:
    """Consumed energy in watt-seconds."""
    return float(int(profile.samples.sum()) * profile.dt)


def average_power(profile: LoadProfile) -> float:
    return float(int(profile.samples.sum()) / len(profile))


def estimate_p_hat(profile: LoadProfile, device_set: DeviceSet) -> float:
    """Average device operation probability E / (P_total * n * dt).

    Unbiased for on-off sets only: with multi-state devices the on-states
    contribute unequal power, so the ratio no longer counts running devices.
    Values above 1 (profile incompatible with the set) are clamped to 1 with
    a :class:`PHatClampWarning`.
    """
    p_total = total_power(device_set)
    p = energy(profile) / (p_total * len(profile) * profile.dt)
    if p > 1.0:
        warnings.warn(f"estimated p_hat {p:.6g} > 1, clamped", PHatClampWarning, stacklevel=2)
        return 1.0
    return p


def device_probability_from_runtime(n_d: int, n: int) -> float:
    """Fraction of the ``n`` time steps a device spent running."""
    if n < 1:
        raise ValidationError("n must be at least 1")
    if not 0 <= n_d <= n:
        raise ValidationError(f"run time {n_d} outside [0, {n}]")
    return n_d / n


def synthesize(
    device_set: DeviceSet, model: DeviceProbabilities, n: int, seed: int, dt: float = 1.0
) -> LoadProfile:
    """Draw ``n`` independent configurations and return their aggregated power."""
    model.check_shape(device_set)
    if n < 1:
        raise ValidationError("n must be at least 1")
    if not 0 <= seed < 2**64:
        raise ValidationError("seed must be an unsigned 64-bit integer")
    rng = np.random.Generator(np.random.Philox(seed))
    n_dev = device_set.n_devices
    cdfs = []
    for i in range(n_dev):
        c = np.cumsum(model.state_probs(i))
        c[-1] = np.inf  # absorb rounding so every draw lands in a state
        cdfs.append(c)
    tables = [np.array(d.state_powers, dtype=np.int64) for d in device_set.devices]
    out = np.empty(n, dtype=np.int64)
    for start in range(0, n, _CHUNK):
        rows = min(_CHUNK, n - start)
        u = rng.random((rows, n_dev))
        acc = np.zeros(rows, dtype=np.int64)
        for i in range(n_dev):
            acc += tables[i][np.searchsorted(cdfs[i], u[:, i], side="right")]
        out[start : start + rows] = acc
    return LoadProfile(out, dt)


def empirical_distribution(profile: LoadProfile, p_total: int | None = None) -> np.ndarray:
    """Relative frequency of every power value 0..max(p_total, max sample)."""
    length = int(profile.samples.max()) + 1
    if p_total is not None:
        length = max(length, p_total + 1)
    return np.bincount(profile.samples, minlength=length) / len(profile)


def total_variation(empirical: np.ndarray, dist: PowerDistribution) -> float:
    """Total-variation distance between an empirical pmf and an analytic one."""
    n = max(len(empirical), len(dist.pmf))
    a = np.zeros(n)
    b = np.zeros(n)
    a[: len(empirical)] = empirical
    b[: len(dist.pmf)] = dist.pmf
    return 0.5 * float(np.abs(a - b).sum())


def profile_csv_text(profile: LoadProfile) -> str:
    """``t_s,power_w`` header plus one row per sample, LF line endings."""
    lines = ["t_s,power_w"]
    lines.extend(f"{i * profile.dt:.10g},{int(p)}" for i, p in enumerate(profile.samples))
    return "\n".join(lines) + "\n"


def write_profile_csv(profile: LoadProfile, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(profile_csv_text(profile))


def read_profile_csv(path) -> LoadProfile:
    """Read a ``t_s,power_w`` file; dt is taken from the first two timestamps."""
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["t_s", "power_w"]:
            raise ParseError(f"{path}: expected header 't_s,power_w', got {header!r}", 1, 1)
        times, powers = [], []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise ParseError(f"{path}: expected 2 fields, got {len(row)}", lineno, 1)
            try:
                times.append(float(row[0]))
            except ValueError:
                raise ParseError(f"{path}: bad time {row[0]!r}", lineno, 1) from None
            try:
                powers.append(int(row[1]))
            except ValueError:
                raise ParseError(f"{path}: power {row[1]!r} is not an integer", lineno, 2) from None
    if not powers:
        raise ParseError(f"{path}: no samples", 2, 1)
    dt = times[1] - times[0] if len(times) > 1 else 1.0
    return LoadProfile(np.array(powers, dtype=np.int64), dt)
