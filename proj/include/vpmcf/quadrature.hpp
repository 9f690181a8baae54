#pragma once

#include <cmath>
#include <functional>
#include <span>

namespace vpmcf {

/// Adaptive Simpson quadrature of g over [lo, hi]. The local acceptance test
/// is |S_left + S_right - S_whole| <= 15 * tol with tol = rel_tol * |initial
/// estimate| (or rel_tol when that estimate vanishes), followed by one
/// Richardson correction per accepted panel.
double adaptive_simpson(const std::function<double(double)>& g, double lo, double hi,
                        double rel_tol, int max_depth = 48);

/// Composite trapezoid rule for nodal samples with uniform spacing.
inline double trapezoid(std::span<const double> values, double spacing) {
  if (values.size() < 2) return 0.0;
  double interior = 0.0;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) interior += values[i];
  return spacing * (interior + 0.5 * (values.front() + values.back()));
}

}  // namespace vpmcf
