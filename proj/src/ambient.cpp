#include "vpmcf/ambient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "vpmcf/errors.hpp"

namespace vpmcf {

std::string to_string(Preset preset) {
  switch (preset) {
    case Preset::Euclidean: return "euclidean";
    case Preset::Hyperbolic: return "hyperbolic";
    case Preset::Spherical: return "spherical";
    case Preset::Custom: return "custom";
  }
  return "custom";
}

Preset preset_from_string(const std::string& name) {
  for (Preset p : {Preset::Euclidean, Preset::Hyperbolic, Preset::Spherical, Preset::Custom})
    if (to_string(p) == name) return p;
  throw ConfigError("unknown space preset '" + name + "'");
}

std::string to_string(Rss2Branch branch) {
  switch (branch) {
    case Rss2Branch::None: return "none";
    case Rss2Branch::CurvatureSigns: return "a";
    case Rss2Branch::Euclidean: return "b";
  }
  return "none";
}

AmbientSpace::AmbientSpace(int n, Warp warp, double r_max_domain, std::string description)
    : AmbientSpace(n, std::move(warp), r_max_domain, Preset::Custom, 0.0, std::move(description)) {}

AmbientSpace::AmbientSpace(int n, Warp warp, double r_max, Preset preset, double lambda,
                           std::string description)
    : n_(n),
      warp_(std::move(warp)),
      r_max_(r_max),
      preset_(preset),
      lambda_(lambda),
      description_(std::move(description)) {
  if (n_ < 2) throw std::invalid_argument("hypersurface dimension n must be >= 2");
  if (!warp_) throw std::invalid_argument("warp evaluator is empty");
  if (!(r_max_ > 0.0)) throw std::invalid_argument("r_max_domain must be positive");
}

AmbientSpace AmbientSpace::euclidean(int n) {
  auto warp = [](double r) { return WarpValues{1.0, 0.0, 0.0, r, 1.0, 0.0}; };
  return AmbientSpace(n, warp, std::numeric_limits<double>::infinity(), Preset::Euclidean, 0.0,
                      "euclidean");
}

AmbientSpace AmbientSpace::hyperbolic(double lambda, int n) {
  if (!(lambda < 0.0)) throw std::invalid_argument("hyperbolic preset needs lambda < 0");
  const double k = std::sqrt(-lambda);
  auto warp = [k](double r) {
    double c = std::cosh(k * r);
    double s = std::sinh(k * r);
    return WarpValues{c, k * s, k * k * c, s / k, c, k * s};
  };
  std::ostringstream d;
  d << "hyperbolic(lambda=" << lambda << ")";
  return AmbientSpace(n, warp, std::numeric_limits<double>::infinity(), Preset::Hyperbolic, lambda,
                      d.str());
}

AmbientSpace AmbientSpace::spherical(double lambda, int n) {
  if (!(lambda > 0.0)) throw std::invalid_argument("spherical preset needs lambda > 0");
  const double k = std::sqrt(lambda);
  auto warp = [k](double r) {
    double c = std::cos(k * r);
    double s = std::sin(k * r);
    return WarpValues{c, -k * s, -k * k * c, s / k, c, -k * s};
  };
  std::ostringstream d;
  d << "spherical(lambda=" << lambda << ")";
  return AmbientSpace(n, warp, std::numbers::pi / (2.0 * k), Preset::Spherical, lambda, d.str());
}

WarpValues AmbientSpace::warp(double r) const {
  if (!in_domain(r)) {
    std::ostringstream msg;
    msg << "radius " << r << " outside the metric domain [0, " << r_max_ << ")";
    throw DomainError(msg.str());
  }
  return warp_(r);
}

AmbientSpace make_preset(Preset preset, double lambda, int n) {
  switch (preset) {
    case Preset::Euclidean:
      if (n < 2) throw std::invalid_argument("hypersurface dimension n must be >= 2");
      return AmbientSpace::euclidean(n);
    case Preset::Hyperbolic: return AmbientSpace::hyperbolic(lambda, n);
    case Preset::Spherical: return AmbientSpace::spherical(lambda, n);
    case Preset::Custom: break;
  }
  throw std::invalid_argument("make_preset does not build custom spaces");
}

SectionalCurvatures sectional_curvatures(const AmbientSpace& space, double r) {
  if (!(r > 0.0)) throw DomainError("sectional curvatures need r > 0");
  const WarpValues w = space.warp(r);
  return {-w.d2f / w.f, -w.d2h / w.h, -w.dh * w.df / (w.h * w.f), (1.0 - w.dh * w.dh) / (w.h * w.h)};
}

namespace {

// Limit at 0 from samples at rho, 2 rho, 4 rho; cancels the O(rho) and O(rho^2) terms.
double extrapolate_to_axis(double at1, double at2, double at4) {
  return (8.0 * at1 - 6.0 * at2 + at4) / 3.0;
}

constexpr double kAxisTol = 1e-10;
constexpr double kSignTol = 1e-12;

}  // namespace

ValidationReport validate_space(const AmbientSpace& space, double r_probe_max, int samples) {
  if (samples < 2) throw std::invalid_argument("validate_space needs samples >= 2");
  if (!(r_probe_max > 0.0)) throw std::invalid_argument("probe radius must be positive");
  ValidationReport report;
  report.samples = samples;
  report.probe_radius = std::isfinite(space.r_max_domain())
                            ? std::min(r_probe_max, 0.999 * space.r_max_domain())
                            : r_probe_max;

  const double rho = 1e-6 * report.probe_radius;
  const WarpValues w1 = space.warp(rho);
  const WarpValues w2 = space.warp(2 * rho);
  const WarpValues w4 = space.warp(4 * rho);
  report.f0 = extrapolate_to_axis(w1.f, w2.f, w4.f);
  report.df0 = extrapolate_to_axis(w1.df, w2.df, w4.df);
  report.h0 = extrapolate_to_axis(w1.h, w2.h, w4.h);
  report.dh0 = extrapolate_to_axis(w1.dh, w2.dh, w4.dh);

  auto check_limit = [&](double value, double expected, const char* label) {
    if (!(std::fabs(value - expected) <= kAxisTol)) {
      std::ostringstream msg;
      msg << label << " violated: limit evaluates to " << value;
      report.violations.push_back(msg.str());
    }
  };
  check_limit(report.f0, 1.0, "f(0)=1");
  check_limit(report.df0, 0.0, "f'(0)=0");
  check_limit(report.h0, 0.0, "h(0)=0");
  check_limit(report.dh0, 1.0, "h'(0)=1");

  bool zi_negative = true;
  bool ri_nonpositive = true;
  for (int k = 1; k <= samples; ++k) {
    const double r = report.probe_radius * k / samples;
    const WarpValues w = space.warp(r);
    std::ostringstream at;
    at << " at r=" << r;
    if (!(w.f > 0.0) || !std::isfinite(w.f)) report.violations.push_back("f > 0 violated" + at.str());
    if (!(w.h > 0.0) || !std::isfinite(w.h)) report.violations.push_back("h > 0 violated" + at.str());
    if (!(w.f > 0.0) || !(w.h > 0.0)) continue;
    const SectionalCurvatures s = sectional_curvatures(space, r);
    if (zi_negative && !(s.zi < 0.0)) {
      zi_negative = false;
      report.warnings.push_back("S_zi < 0 fails" + at.str());
    }
    if (ri_nonpositive && !(s.ri <= kSignTol)) {
      ri_nonpositive = false;
      report.warnings.push_back("S_ri <= 0 fails" + at.str());
    }
  }

  report.rss_ok = report.violations.empty();
  if (!report.rss_ok) return report;
  if (space.preset() == Preset::Euclidean) {
    report.rss2_branch = Rss2Branch::Euclidean;
    report.warnings.clear();
  } else if (zi_negative && ri_nonpositive) {
    report.rss2_branch = Rss2Branch::CurvatureSigns;
  }
  return report;
}

}  // namespace vpmcf
