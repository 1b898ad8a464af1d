"""Embedded device-set catalog and JSON readers/writers.

Device-set files hold exactly two fields::

    {"name": "x", "devices": [[5], [10, 20]]}

Model files hold either ``{"p_hat": 0.3}`` or
``{"per_device": [[0.1], [0.05, 0.02]]}`` (on-state probabilities per device,
in the set's device order).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .device_model import DeviceSet, linear_set
from .errors import ParseError, ValidationError
from .probability import DeviceProbabilities, uniform_model


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    set: DeviceSet
    provenance: str


_HOUSES = "on-state power values per house (GreenD, RedD and Eco), six appliances each"

# power values exactly as published; GreenD2's last device is printed with
# 173 W although the published derived figures correspond to 175 W
_REAL_SETS = {
    "greend1": [[55, 140, 240], [1220], [60, 148, 470, 570, 1225, 1265], [1790],
                [70, 155, 210, 260, 423, 1898], [40, 1900]],
    "greend2": [[60], [80], [850], [1580], [80, 1725], [90, 173, 1910]],
    "greend3": [[110, 235, 285, 360], [120, 1235], [55, 125, 540, 882, 1047, 1220, 1630],
                [70, 2002], [125, 245, 358, 1998, 2100], [70, 160, 2358, 2550]],
    "redd1": [[200, 420], [50, 210, 410, 890, 1115], [260, 710, 1440],
              [55, 110, 270, 300, 620, 1405, 1505], [1680, 2478], [2705]],
    "redd2": [[123], [410], [160, 420], [130, 210, 770], [1050], [40, 1718, 1850]],
    "redd3": [[100, 400], [210, 525, 730], [40, 365, 900, 1220, 1520],
              [860, 960, 1285, 1605], [120, 540, 1698], [2265]],
    "eco1": [[40], [72], [250, 440, 785], [50, 1225], [1800], [90, 180, 250, 365, 2168]],
    "eco2": [[70], [55, 175], [80, 185], [50, 310], [50, 1840], [120, 2132]],
    "eco3": [[100], [120], [130], [100, 175, 280], [40, 1365, 1485],
             [67, 190, 280, 445, 650, 785, 1065, 1545]],
}

_DISPLAY = {
    "a": "A", "b": "B", "b2": "B2", "b2plus": "B2+", "b2x": "B2x",
    "greend1": "GreenD1", "greend2": "GreenD2", "greend3": "GreenD3",
    "redd1": "RedD1", "redd2": "RedD2", "redd3": "RedD3",
    "eco1": "Eco1", "eco2": "Eco2", "eco3": "Eco3",
}


def _build_catalog() -> tuple[CatalogEntry, ...]:
    b2 = [[2**i] for i in range(10)]
    entries = [
        CatalogEntry("a", linear_set(10, 5, 5, name="A"), "linear spectrum, P_1 = P_delta = 5 W"),
        CatalogEntry(
            "b",
            DeviceSet.from_values("B", [[p] for p in (1, 2, 3, 5, 8, 14, 24, 41, 69, 117)]),
            "power-law like spectrum, roughly P_d = 1.69 P_(d-1)",
        ),
        CatalogEntry("b2", DeviceSet.from_values("B2", b2), "powers of two, 1..512 W"),
        CatalogEntry(
            "b2plus",
            DeviceSet.from_values("B2+", b2[:9] + [[2**i for i in range(10)]]),
            "B2 with device 10 also running at the values of devices 1-9",
        ),
        CatalogEntry(
            "b2x",
            DeviceSet.from_values("B2x", [[1]] + [[2 ** (i - 1), 2**i] for i in range(1, 10)]),
            "B2 with devices 2-10 given a second state at the previous device's value",
        ),
    ]
    for key, values in _REAL_SETS.items():
        entries.append(CatalogEntry(key, DeviceSet.from_values(_DISPLAY[key], values), _HOUSES))
    return tuple(entries)


_CATALOG = _build_catalog()
_BY_KEY = {e.key: e for e in _CATALOG}


def catalog() -> tuple[CatalogEntry, ...]:
    """All embedded device sets, artificial ones first."""
    return _CATALOG


def get_set(key: str) -> DeviceSet:
    try:
        return _BY_KEY[key.lower()].set
    except KeyError:
        raise ValidationError(
            f"unknown catalog key {key!r}; known: {', '.join(_BY_KEY)}"
        ) from None


def _load_json(path) -> object:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from None


def device_set_from_json(data: object, source: str = "<data>") -> DeviceSet:
    if not isinstance(data, dict):
        raise ValidationError(f"{source}: top level must be an object")
    unknown = set(data) - {"name", "devices"}
    if unknown:
        raise ValidationError(f"{source}: unknown fields {sorted(unknown)}")
    if not isinstance(data.get("name"), str):
        raise ValidationError(f"{source}: 'name' must be a string")
    devices = data.get("devices")
    if not isinstance(devices, list) or not all(isinstance(d, list) for d in devices):
        raise ValidationError(f"{source}: 'devices' must be an array of arrays")
    return DeviceSet.from_values(data["name"], devices)


def load_device_set(path) -> DeviceSet:
    """Read a device-set JSON file; devices and on-states are sorted on load."""
    return device_set_from_json(_load_json(path), str(path))


def save_device_set(device_set: DeviceSet, path) -> None:
    payload = {"name": device_set.name, "devices": device_set.as_lists()}
    Path(path).write_text(json.dumps(payload) + "\n", encoding="utf-8")


def load_model(path, device_set: DeviceSet) -> DeviceProbabilities:
    """Read a probability-model JSON file for ``device_set``."""
    data = _load_json(path)
    if not isinstance(data, dict) or len(data) != 1 or not set(data) <= {"p_hat", "per_device"}:
        raise ValidationError(f"{path}: expected exactly one of 'p_hat' or 'per_device'")
    if "p_hat" in data:
        p = data["p_hat"]
        if isinstance(p, bool) or not isinstance(p, (int, float)):
            raise ValidationError(f"{path}: 'p_hat' must be a number")
        return uniform_model(device_set, float(p))
    per_device = data["per_device"]
    if not isinstance(per_device, list) or not all(isinstance(d, list) for d in per_device):
        raise ValidationError(f"{path}: 'per_device' must be an array of arrays")
    model = DeviceProbabilities(tuple(tuple(d) for d in per_device), f"per-device ({Path(path).name})")
    model.check_shape(device_set)
    return model


def save_model(model: DeviceProbabilities, path) -> None:
    payload = {"per_device": [list(d) for d in model.on]}
    Path(path).write_text(json.dumps(payload) + "\n", encoding="utf-8")
