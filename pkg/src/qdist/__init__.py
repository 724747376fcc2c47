"""Distance upper bounds for quantum stabilizer codes via decoupled BP-OSD."""

from .codes import (
    ClassicalCode,
    StabilizerCode,
    chamon,
    hypergraph_product,
    logical_basis,
    planar_surface,
    repetition,
    toric,
    validate,
    xyz_product,
    xzzx_surface,
    ztgre,
)
from .decoder import BPConfig, ChannelPrior, DecodeOutcome, decode
from .estimator import (
    DistanceReport,
    NoiseKind,
    OracleResult,
    ResidualClass,
    TrialConfig,
    brute_force_distance,
    classify_residual,
    estimate_upper_bound,
    sample_error,
    verify_witness,
)
from .pauli import SymplecticPauli, from_string, to_string

__all__ = [
    "BPConfig",
    "ChannelPrior",
    "ClassicalCode",
    "DecodeOutcome",
    "DistanceReport",
    "NoiseKind",
    "OracleResult",
    "ResidualClass",
    "StabilizerCode",
    "SymplecticPauli",
    "TrialConfig",
    "brute_force_distance",
    "chamon",
    "classify_residual",
    "decode",
    "estimate_upper_bound",
    "from_string",
    "hypergraph_product",
    "logical_basis",
    "planar_surface",
    "repetition",
    "sample_error",
    "to_string",
    "toric",
    "validate",
    "verify_witness",
    "xyz_product",
    "xzzx_surface",
    "ztgre",
]

__version__ = "0.1.0"
