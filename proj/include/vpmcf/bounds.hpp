#pragma once

#include <functional>
#include <limits>

#include "vpmcf/ambient.hpp"

namespace vpmcf {

/// Volume of the unit sphere S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
double sphere_volume(int n);

/// beta(r) = int_0^r f h^{n-1} ds, the radial volume density of a solid cylinder.
double beta(const AmbientSpace& space, double r, double rel_tol = 1e-12);
/// delta(r) = int_0^r h^{n-1} ds.
double delta(const AmbientSpace& space, double r, double rel_tol = 1e-12);
/// int_lo^hi f h^{n-1} ds; lo may exceed hi.
double beta_increment(const AmbientSpace& space, double lo, double hi, double rel_tol = 1e-12);

/// Inverts a strictly increasing g on [0, x_max) for g(0) <= y. Expands a
/// bracket by doubling, then bisects to 1e-14 relative width. Throws
/// DomainError if y is not reached below x_max and std::invalid_argument if y < g(0).
double invert_increasing(const std::function<double(double)>& g, double y,
                         double x_max = std::numeric_limits<double>::infinity());

struct BoundsReport {
  double r1 = 0;  ///< radius of the cylinder enclosing V
  double r2 = 0;  ///< a-priori upper bound for r along the flow
  double r3 = 0;  ///< radius of the cylinder enclosing V/2
  double small_volume_threshold = 0;
  bool criterion_met = false;
  double sigma = 0;
};

/// Reference radii and the small-volume criterion for a slab [a, b], an
/// enclosed volume V and an initial lateral area `area`.
BoundsReport compute_bounds(const AmbientSpace& space, double a, double b, double volume, double area);

/// Length bound f(r2)(b-a) + (N0-1) r2 for the generating curve, where N0 counts
/// the critical points of the initial profile including both ends.
double curve_length_bound(const AmbientSpace& space, double a, double b, double r2, int initial_critical_points);

}  // namespace vpmcf
