"""shockscan: Lopatinski determinant scanner for planar shock waves.

Builds small zero-speed Lax shocks of 2-D conservation-law systems,
evaluates the normalized Lopatinski determinant over the unit frequency
hemisphere (including its continuous extension to the neutral boundary),
and localizes boundary zeros. Includes a coupled Euler/linear-wave fixture
whose determinant vanishes at four predictable branch frequencies.
"""

from .characteristics import (
    CharField,
    char_fields,
    check_constant_multiplicity,
    eval_symbol,
    metivier_genuine_nonlinearity,
    metivier_transverse_convexity,
    sorted_speeds,
)
from .errors import (
    BracketError,
    CharacteristicBoundaryError,
    ClassificationError,
    ContinuationError,
    DegenerateShockError,
    DomainError,
    HyperbolicityError,
    MarginalShockError,
    MultiplicityError,
    ShockScanError,
    StructuralError,
    TuningError,
)
from .factory import (
    BranchPointSet,
    CoupledSystem,
    WaveBlockEigen,
    augment_shock,
    b_eigen_oracle,
    boundary_wave_directions,
    coincidence_gap,
    couple,
    predict_branch_points,
    supersonic_check,
)
from .lopatinski import (
    FrequencyPoint,
    LopatinskiValue,
    SubspaceBasis,
    boundary_subspaces,
    interior_subspaces,
    jump_column,
    lopatinski_delta,
    subspace_distance,
    symbol_matrix_A,
)
from .scan import (
    RefinedZero,
    ScanRecord,
    find_local_minima,
    hemisphere_grid,
    hemisphere_grid_size,
    locate_zeros,
    refine_zero,
    scan_boundary,
    scan_hemisphere,
)
from .shocks import (
    LaxClassification,
    ShockFamilyParams,
    ShockWave,
    lax_classify,
    rh_residual,
    solve_zero_speed_shock,
)
from .systems import (
    HyperbolicSystem,
    SYSTEM_REGISTRY,
    euler_isentropic,
    linear_wave,
    make_system,
)

__version__ = "0.1.0"
