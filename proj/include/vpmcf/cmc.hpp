#pragma once

#include <string>

#include "vpmcf/ambient.hpp"
#include "vpmcf/profile.hpp"

namespace vpmcf {

/// Constant-mean-curvature profile used as an equilibrium reference for the flow.
struct CMCProfile {
  double H_const;
  ProfileGrid profile;
  /// max_i |H_i - H_const| measured by curvature_field on `profile`.
  double residual;
  double volume;
  /// "cylinder" or "unduloid".
  std::string branch;
  int iterations = 0;
};

/// Cylinder r = r1 enclosing V in [a, b].
CMCProfile cylinder_for_volume(const AmbientSpace& space, double a, double b, double volume, int m = 201);

struct ShootOptions {
  int m = 401;
  /// RK4 steps per grid interval.
  int substeps = 4;
  double slope_tol = 1e-10;
  int max_iterations = 100;
};

/// Solves k1 + (n-1) k2 = H_target with r'(a) = r'(b) = 0 by shooting on r(a)
/// from `r_guess` with secant updates. Throws NumericalError when the secant
/// iteration does not converge and DomainError when no trajectory stays in
/// the metric domain.
CMCProfile shoot_cmc(const AmbientSpace& space, double a, double b, double H_target, double r_guess,
                     const ShootOptions& opts = {});

struct CmcDistance {
  double h_best;     ///< area-weighted mean of H
  double deviation;  ///< max_i |H_i - h_best|
};

CmcDistance distance_to_cmc(const ProfileGrid& profile, const AmbientSpace& space);

}  // namespace vpmcf
