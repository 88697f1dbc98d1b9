"""Local structure of a scalar-field vacuum in a Dirichlet cavity.

Global-to-local Bogoliubov transformations, Gaussian covariance matrices of
sub-regions, their Williamson normal forms, and the entanglement and particle
content released by suddenly inserting mirrors.
"""

__version__ = "0.1.0"

from .bogoliubov import (
    BogoliubovTable,
    build_table,
    build_tables,
    overlap,
    particle_spectrum,
    wronskian_residual,
)
from .cavity import (
    CavityConfig,
    Interval,
    ModeId,
    Region,
    ThreeRegion,
    TwoRegion,
    eval_global_mode,
    eval_local_mode_postslam,
    global_frequency,
    local_frequency,
)
from .diagonalization import DiagResult, eval_v_mode, extract_diag_bogo, spatial_profile, williamson
from .entanglement import entropy, log_negativity, mutual_information, negativity_map, symplectic_spectrum
from .errors import ConvergenceError, MalformedStateError, UnsupportedStateError
from .gaussian import (
    CovarianceMatrix,
    Ordering,
    assemble_three_region,
    assemble_two_region,
    free_evolution,
    reduce,
    two_mode,
)
