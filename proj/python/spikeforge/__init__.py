"""Discrete-time spiking network simulation.

Two interchangeable backends (a homogeneous matrix kernel and a
heterogeneous agent-based engine), a delay-lowering pass, a naive
reference oracle, seeded random network generation, and the durable
file formats, all re-exported from the native module.
"""

from ._core import (
    INFINITE_LEAK,
    BenchScenario,
    FormatError,
    LoweredNetwork,
    NetworkDef,
    NeuronParams,
    ProxyInfo,
    RunResult,
    ScenarioBundle,
    SimulationConfig,
    SpikeEvent,
    SpikeRaster,
    StdpConfig,
    StimulusEntry,
    StimulusSchedule,
    SynapseDef,
    abm_run,
    behavior_names,
    build_scenario,
    erdos_renyi,
    lower_delays,
    mat_run,
    oracle_run,
    parse_network,
    parse_raster,
    parse_stdp,
    parse_stimulus,
    proxy_count,
    raster_equal,
    register_stochastic_lif,
    restrict_raster,
    serialize_network,
    serialize_stdp,
    validate_network,
    write_raster,
    write_stimulus,
)

__all__ = [
    "INFINITE_LEAK",
    "BenchScenario",
    "FormatError",
    "LoweredNetwork",
    "NetworkDef",
    "NeuronParams",
    "ProxyInfo",
    "RunResult",
    "ScenarioBundle",
    "SimulationConfig",
    "SpikeEvent",
    "SpikeRaster",
    "StdpConfig",
    "StimulusEntry",
    "StimulusSchedule",
    "SynapseDef",
    "abm_run",
    "behavior_names",
    "build_scenario",
    "erdos_renyi",
    "lower_delays",
    "mat_run",
    "oracle_run",
    "parse_network",
    "parse_raster",
    "parse_stdp",
    "parse_stimulus",
    "proxy_count",
    "raster_equal",
    "register_stochastic_lif",
    "restrict_raster",
    "serialize_network",
    "serialize_stdp",
    "validate_network",
    "write_raster",
    "write_stimulus",
]

__version__ = "0.1.0"
