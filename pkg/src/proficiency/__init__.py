"""Information-theoretic analysis of appliance power-value sets.

How much of a device configuration can be recovered from the aggregated
power value alone: state spaces, occupation numbers, entropy, mutual
information and proficiency (uncertainty coefficient).
"""
from .datasets_io import catalog, get_set, load_device_set, load_model, save_device_set
from .device_model import (
    Device,
    DeviceSet,
    average_set_power,
    expected_on_power,
    linear_set,
    power_value_count,
    powerlaw_set,
    state_count,
    total_power,
)
from .information import (
    InfoReport,
    SweepRow,
    analyze,
    entropy,
    h_of_z,
    max_entropy_report,
    mutual_information,
    proficiency,
    source_entropy,
    sweep,
)
from .probability import (
    DeviceProbabilities,
    PowerDistribution,
    max_entropy_model,
    power_distribution,
    state_probability,
    uniform_model,
    z_state_probability,
    zero_power_probability,
)
from .profile import LoadProfile, synthesize
from .state_space import (
    OccupationHistogram,
    average_occupation,
    digits_of_state,
    occupation_histogram,
    state_power,
    states_by_z,
)

__version__ = "0.1.0"
