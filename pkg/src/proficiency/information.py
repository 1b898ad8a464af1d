"""Entropy, mutual information of power values, and proficiency.

All logarithms are binary; results are in bits. Proficiency is the
uncertainty coefficient ``C = I_P / H``: the fraction of the configuration
entropy that survives the mapping of configurations onto power values.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

from .device_model import DeviceSet, state_count
from .errors import UndefinedProficiencyError, ValidationError
from .probability import (
    NORMALIZATION_TOL,
    DeviceProbabilities,
    PowerDistribution,
    power_distribution,
    uniform_model,
    z_state_probability,
)
from .state_space import average_occupation, occupation_histogram


def entropy_terms(masses) -> np.ndarray:
    """Per-outcome contributions -p*ld(p), with 0*ld(0) taken as 0."""
    p = np.asarray(masses, dtype=float)
    out = np.zeros_like(p)
    nz = p > 0
    out[nz] = -p[nz] * np.log2(p[nz])
    return out


def entropy(masses) -> float:
    """Shannon entropy in bits of a normalized probability vector."""
    p = np.asarray(masses, dtype=float)
    if np.any(p < 0):
        raise ValidationError("negative probability mass")
    total = float(p.sum())
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise ValidationError(f"masses sum to {total}, not 1")
    return float(entropy_terms(p[p > 0]).sum())


def source_entropy(device_set: DeviceSet, model: DeviceProbabilities) -> float:
    """Entropy of the joint configuration distribution.

    Devices are independent, so this is the sum of per-device state
    entropies; no enumeration of the M configurations is needed.
    """
    model.check_shape(device_set)
    return sum(entropy(model.state_probs(i)) for i in range(device_set.n_devices))


def h_of_z(n: int, p_hat: float, z: int) -> float:
    """Entropy carried by all on-off configurations with ``z`` of ``n`` devices on."""
    p = z_state_probability(n, z, p_hat)
    if p <= 0.0:
        return 0.0
    return -math.comb(n, z) * p * math.log2(p)


def mutual_information(dist: PowerDistribution) -> float:
    """Entropy of the aggregated power value, I_P."""
    return entropy(dist.pmf)


def power_entropy_terms(dist: PowerDistribution) -> np.ndarray:
    """h^P(P) for every power value on the axis 0..P_total."""
    return entropy_terms(dist.pmf)


def proficiency(h: float, i_p: float) -> float:
    """Uncertainty coefficient I_P / H."""
    if h <= 0.0:
        raise UndefinedProficiencyError("proficiency is undefined for zero source entropy")
    if i_p < 0:
        raise ValidationError("mutual information must be non-negative")
    return i_p / h


def _safe_proficiency(h: float, i_p: float) -> float | None:
    # H below one ulp-scale counts as zero: degenerate p_hat in {0, 1}
    if h <= 1e-12:
        return None
    return min(1.0, i_p / h)


@dataclass(frozen=True)
class InfoReport:
    """Information measures for one set under one model.

    ``C`` is ``None`` when the source entropy is zero (proficiency undefined).
    The ``*_max`` fields and ``c_hat`` always refer to equally likely states.
    """

    set_name: str
    model: str
    M: int
    H: float
    H_max: float
    I_P: float
    I_P_max: float
    C: float | None
    C_max: float | None
    c_hat: float
    bound_C_max: float | None

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.C is None:
            d["C_note"] = "C undefined at H=0"
        return d


def _max_entropy_fields(device_set: DeviceSet, engine: str = "convolve") -> dict:
    hist = occupation_histogram(device_set, engine=engine)
    m = hist.total_states
    h_max = math.log2(m)
    i_p_max = float(entropy_terms(hist.counts[hist.counts > 0].astype(float) / m).sum())
    c_hat = average_occupation(hist)
    c_max = _safe_proficiency(h_max, i_p_max)
    bound = None if h_max == 0 else 1.0 - math.log2(c_hat) / h_max
    if c_max is not None and c_max > bound + 1e-12:
        raise AssertionError(f"{device_set.name}: C_max={c_max} exceeds its bound {bound}")
    return dict(M=m, H_max=h_max, I_P_max=i_p_max, C_max=c_max, c_hat=c_hat, bound_C_max=bound)


def max_entropy_report(device_set: DeviceSet, engine: str = "convolve") -> InfoReport:
    """Measures for equally likely configurations (every p_k = 1/M)."""
    f = _max_entropy_fields(device_set, engine)
    return InfoReport(
        set_name=device_set.name,
        model="max-entropy",
        H=f["H_max"],
        I_P=f["I_P_max"],
        C=f["C_max"],
        **f,
    )


def analyze(device_set: DeviceSet, model: DeviceProbabilities) -> InfoReport:
    """Measures under an explicit device model, alongside the max-entropy reference."""
    f = _max_entropy_fields(device_set)
    h = source_entropy(device_set, model)
    i_p = mutual_information(power_distribution(device_set, model))
    return InfoReport(
        set_name=device_set.name,
        model=model.description,
        H=h,
        I_P=i_p,
        C=_safe_proficiency(h, i_p),
        **f,
    )


@dataclass(frozen=True)
class SweepRow:
    p_hat: float
    H: float
    I_P: float
    C: float | None


def default_grid() -> list[float]:
    """0.05, 0.10, ..., 0.95."""
    return [round(0.05 * i, 10) for i in range(1, 20)]


def parse_grid(spec: str) -> list[float]:
    """Parse ``start:stop:step`` (inclusive stop) into a list of probabilities."""
    try:
        start, stop, step = (float(x) for x in spec.split(":"))
    except ValueError:
        raise ValidationError(f"grid must look like start:stop:step, got {spec!r}") from None
    if step <= 0:
        raise ValidationError("grid step must be positive")
    if not (0 <= start <= 1 and 0 <= stop <= 1):
        raise ValidationError("grid bounds must lie in [0, 1]")
    n = int(math.floor((stop - start) / step + 1e-9))
    # round to kill accumulated float noise in labels
    return [round(start + i * step, 10) for i in range(n + 1)]


def sweep(device_set: DeviceSet, p_grid: Iterable[float] | None = None) -> list[SweepRow]:
    """H, I_P and C under the uniform device model for every p_hat of the grid."""
    grid: Sequence[float] = default_grid() if p_grid is None else list(p_grid)
    rows = []
    for p in grid:
        model = uniform_model(device_set, p)
        h = source_entropy(device_set, model)
        i_p = mutual_information(power_distribution(device_set, model))
        rows.append(SweepRow(p, h, i_p, _safe_proficiency(h, i_p)))
    return rows
