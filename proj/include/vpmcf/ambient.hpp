#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace vpmcf {

/// Warp functions of the metric dr^2 + f(r)^2 dz^2 + h(r)^2 g_S and their
/// first two radial derivatives, all evaluated at one radius.
struct WarpValues {
  double f, df, d2f;
  double h, dh, d2h;
};

enum class Preset { Euclidean, Hyperbolic, Spherical, Custom };

std::string to_string(Preset preset);
/// Accepts the lowercase names produced by to_string; throws ConfigError otherwise.
Preset preset_from_string(const std::string& name);

/// A rotationally symmetric ambient space J x B^n_R. Immutable once built,
/// so instances can be shared freely between threads.
class AmbientSpace {
 public:
  using Warp = std::function<WarpValues(double)>;

  /// Custom space. `warp` must return analytic derivatives.
  AmbientSpace(int n, Warp warp, double r_max_domain = std::numeric_limits<double>::infinity(),
               std::string description = "custom");

  static AmbientSpace euclidean(int n);
  static AmbientSpace hyperbolic(double lambda, int n);
  static AmbientSpace spherical(double lambda, int n);

  /// Throws DomainError for r < 0 or r >= r_max_domain.
  WarpValues warp(double r) const;

  int dim() const { return n_; }
  double r_max_domain() const { return r_max_; }
  Preset preset() const { return preset_; }
  /// Sectional curvature of the constant-curvature presets, 0 for Euclidean and custom.
  double lambda() const { return lambda_; }
  const std::string& description() const { return description_; }
  bool in_domain(double r) const { return r >= 0.0 && r < r_max_; }

 private:
  AmbientSpace(int n, Warp warp, double r_max, Preset preset, double lambda, std::string description);

  int n_;
  Warp warp_;
  double r_max_;
  Preset preset_;
  double lambda_;
  std::string description_;
};

/// Builds one of the three constant-curvature model spaces. Throws
/// std::invalid_argument on a sign mismatch between `preset` and `lambda`,
/// for n < 2, or for Preset::Custom.
AmbientSpace make_preset(Preset preset, double lambda, int n);

struct SectionalCurvatures {
  double rz, ri, zi, ij;
};

/// S_rz = -f''/f, S_ri = -h''/h, S_zi = -h'f'/(hf), S_ij = (1-h'^2)/h^2.
SectionalCurvatures sectional_curvatures(const AmbientSpace& space, double r);

enum class Rss2Branch { None, CurvatureSigns, Euclidean };
std::string to_string(Rss2Branch branch);

struct ValidationReport {
  bool rss_ok = false;
  Rss2Branch rss2_branch = Rss2Branch::None;
  /// Axis-regularity or positivity failures; any entry makes rss_ok false.
  std::vector<std::string> violations;
  /// Curvature-sign failures that only rule out the negatively curved branch.
  std::vector<std::string> warnings;
  double probe_radius = 0.0;
  int samples = 0;
  /// Extrapolated axis limits of f, f', h, h'.
  double f0 = 0, df0 = 0, h0 = 0, dh0 = 0;
};

/// Checks f(0)=1, f'(0)=0, h(0)=0, h'(0)=1 by extrapolation from a small
/// probe radius, positivity of f and h, and the signs S_zi < 0, S_ri <= 0 at
/// `samples` radii in (0, r_probe_max]. The probe range is clipped to the
/// metric's domain.
ValidationReport validate_space(const AmbientSpace& space, double r_probe_max, int samples);

}  // namespace vpmcf
