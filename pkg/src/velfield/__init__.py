"""Region-wide acoustic velocity vectors from spherical-harmonic pressure
coefficients, and velocity-matched sound field reproduction."""

__version__ = "0.1.0"

from .exceptions import (
    DegreeTooSmallError,
    DomainError,
    EmptyDiskError,
    ExcludedPoint,
    InvalidOrderError,
    ScenarioError,
    ShapeError,
    SingularArgumentError,
    SingularSourceError,
    UndefinedConditioningError,
    VelfieldError,
)
from .shbasis import (
    SHVector,
    SphericalPoint,
    sh_degree_order,
    sh_index,
    sph_bessel_j,
    sph_bessel_j_radial_derivative_at_zero,
    sph_bessel_y,
    sph_hankel2,
    sph_harmonic,
)
from .coupling import gaunt_g, wigner3j
from .operators import (
    MediumConstants,
    OperatorMatrix,
    apply_operator,
    build_b1m,
    build_velocity_operator,
    load_operator,
    save_operator,
    velocity_operators,
)
from .sources import LoudspeakerArray, SourceSpec, plane_wave_coeffs, point_source_coeffs
from .field_eval import (
    FieldGrid,
    GridSpec,
    pressure_at,
    sample_plane,
    sample_plane_exact,
    velocity_at_finite_difference,
    velocity_at_origin_from_beta,
    velocity_at_via_zeta,
)
from .reproduction import (
    ReproductionSystem,
    Weights,
    build_g,
    build_h,
    build_reproduction_system,
    reproduce_field,
    solve_weights,
)
from .metrics import (
    DiskError,
    ErrorSweep,
    condition_number,
    direction_error,
    mean_error_over_disk,
    numerical_rank,
    sweep_errors,
)
