"""Volume-preserving mean curvature flow of revolution hypersurfaces in warped product spaces."""

from ._vpmcf import (
    AmbientSpace,
    CMCProfile,
    ConfigError,
    DomainError,
    FlowConfig,
    NumericalError,
    ProfileGrid,
    WarpValues,
    averaged_mean_curvature,
    beta,
    compute_bounds,
    critical_point_count,
    curvature_field,
    curve_length,
    cylinder_for_volume,
    delta,
    distance_to_cmc,
    enclosed_volume,
    lateral_area,
    read_profile_csv,
    rhs,
    run,
    run_config,
    sectional_curvatures,
    shoot_cmc,
    spatial_derivatives,
    validate_space,
    write_profile_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
