#pragma once

#include <vector>

#include "vpmcf/ambient.hpp"
#include "vpmcf/profile.hpp"

namespace vpmcf {

/// Discrete r' and r'' at every node. Second-order central differences in the
/// interior; reflected ghost nodes at both ends, so r' = 0 there and
/// r'' = 2 (r_adjacent - r_end) / dz^2.
struct SpatialDerivatives {
  std::vector<double> slope;
  std::vector<double> curvature;
};

SpatialDerivatives spatial_derivatives(const ProfileGrid& profile);

/// Principal curvatures of the revolution hypersurface at every node.
struct CurvatureField {
  std::vector<double> k1;  ///< meridian direction
  std::vector<double> k2;  ///< rotational directions (multiplicity n-1)
  std::vector<double> H;   ///< k1 + (n-1) k2
  std::vector<double> v;   ///< 1 / <N, E_r> = sqrt(r'^2 + f^2) / f
  std::vector<double> L2;  ///< k1^2 + (n-1) k2^2
};

/// Throws DomainError if any radius leaves the metric domain.
CurvatureField curvature_field(const ProfileGrid& profile, const AmbientSpace& space);

/// Everything the flow needs at one instant, from a single pass of warp evaluations.
struct NodalGeometry {
  SpatialDerivatives derivatives;
  std::vector<WarpValues> warp;
  CurvatureField curvature;
  std::vector<double> speed;         ///< sqrt(r'^2 + f^2)
  std::vector<double> area_density;  ///< sigma * speed * h^{n-1}
};

NodalGeometry nodal_geometry(const ProfileGrid& profile, const AmbientSpace& space);

/// sigma * int_a^b beta(r(z)) dz; beta by adaptive Simpson (relative 1e-10),
/// the z integral by the trapezoid rule on the grid.
double enclosed_volume(const ProfileGrid& profile, const AmbientSpace& space);

/// sigma * int_a^b sqrt(r'^2 + f^2) h^{n-1} dz.
double lateral_area(const ProfileGrid& profile, const AmbientSpace& space);

struct MeanCurvatureAverage {
  double Hbar;  ///< area-weighted mean of H
  double I1;    ///< meridian contribution, integrated-by-parts form
  double I2;    ///< rotational contribution
};

MeanCurvatureAverage averaged_mean_curvature(const ProfileGrid& profile, const AmbientSpace& space);

/// Length of the generating curve, int_a^b sqrt(r'^2 + f^2) dz.
double curve_length(const ProfileGrid& profile, const AmbientSpace& space);

/// Number of critical points of r including both ends. Slopes with
/// |r'| < slope_tol count as zero; a run of zero slopes strictly inside the
/// profile counts once. A negative slope_tol selects 1e-9 * max|r'|.
int critical_point_count(const ProfileGrid& profile, double slope_tol = -1.0);

}  // namespace vpmcf
