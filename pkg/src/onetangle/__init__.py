"""One-tangling power of block-diagonal central-spin evolutions."""

from .analysis import (
    DegeneracyRow,
    SweepGrid,
    ThetaRegime,
    TimeMode,
    degeneracy_table,
    gap_map,
    locus_distance_grid,
    sweep2d,
    theta_regimes,
)
from .ensemble import (
    Ensemble,
    EnsembleSpec,
    SpeciesSpec,
    dephasing_time,
    ensemble_electronic_otp,
    gaussian_ensemble,
    read_ensemble_csv,
    write_ensemble_csv,
)
from .errors import (
    ConfigError,
    InvariantViolationError,
    NoCrossingError,
    ResourceLimitError,
)
from .evolution import (
    EvolutionKind,
    EvolutionSpec,
    RotationPair,
    cpmg_rotations,
    free_rotations,
    rotations,
)
from .model import (
    NcVariant,
    NucleusParams,
    build_blocks,
    delta_q_from_strain,
    noncollinear_from_quadrupolar,
)
from .oracle import (
    McEstimate,
    PedersenResult,
    SystemDims,
    block_unitary,
    choi_otp,
    mc_otp,
    pedersen_check,
    random_unitary,
)
from .results import SweepResult
from .spin_algebra import SpinOps, hermitian_expm, spin_operators, trace_inner
from .tangle import (
    G1Value,
    analytic_g1,
    electronic_otp,
    g1_series,
    makhlin_g1,
    nuclear_otp,
    resonance_times,
    simplified_g1,
)

__version__ = "0.1.0"
