"""Subset Sum on simulated robotic-wire-machine networks.

Build a wire network for a multiset of positive integers, replay it as an
RWM program, and answer subset-sum queries by connectivity, exact chain
counting, or resistor-network simulation.
"""

from .constructors import (
    BuildError,
    build,
    build_multiset_optimized,
    build_reduced,
    build_standard,
    expected_wire_count,
    grow,
)
from .measurement import (
    MeasurementError,
    RowMultigraph,
    decide,
    effective_resistance,
    estimate_count,
    exact_count,
    physical_measure,
    query,
    row_path_count,
)
from .model import (
    BuilderKind,
    ElectricalConfig,
    QueryResult,
    Root,
    Wire,
    WireNetwork,
    network_stats,
    validate_network,
)

__version__ = "0.1.0"
