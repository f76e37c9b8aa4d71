"""Quantum Stirling and Otto cycles whose working medium is V(x) = V0 (x/a)^(2q)."""

__version__ = "0.1.0"

from .errors import DegenerateCycleError, DomainError, ModeError, SeriesNotConverged
from .otto import (
    OttoResult,
    classify_mode_otto,
    otto_efficiency,
    otto_net_work,
    otto_q_in,
    otto_q_out,
    run_otto_cycle,
)
from .spectrum import EnergyLevel, PotentialSpec, c_q, energy_level, gap_exponent, limit_spectra
from .stirling import (
    CalcMode,
    Mode,
    StirlingResult,
    classify_mode,
    cop,
    efficiency,
    heat_fluxes,
    net_work,
    run_cycle,
    stroke_heats,
)
from .thermo import (
    SeriesResult,
    StirlingPartitions,
    ThermalPair,
    mean_energy,
    occupation,
    partition_function,
    stirling_partitions,
)

__all__ = [
    "CalcMode",
    "DegenerateCycleError",
    "DomainError",
    "EnergyLevel",
    "Mode",
    "ModeError",
    "OttoResult",
    "PotentialSpec",
    "SeriesNotConverged",
    "SeriesResult",
    "StirlingPartitions",
    "StirlingResult",
    "ThermalPair",
    "c_q",
    "classify_mode",
    "classify_mode_otto",
    "cop",
    "efficiency",
    "energy_level",
    "gap_exponent",
    "heat_fluxes",
    "limit_spectra",
    "mean_energy",
    "net_work",
    "occupation",
    "otto_efficiency",
    "otto_net_work",
    "otto_q_in",
    "otto_q_out",
    "partition_function",
    "run_cycle",
    "run_otto_cycle",
    "stirling_partitions",
    "stroke_heats",
]
