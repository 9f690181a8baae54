#include "vpmcf/quadrature.hpp"

namespace vpmcf {

namespace {

struct Panel {
  double lo, hi, g_lo, g_mid, g_hi, whole;
};

double simpson(double lo, double hi, double g_lo, double g_mid, double g_hi) {
  return (hi - lo) / 6.0 * (g_lo + 4.0 * g_mid + g_hi);
}

double refine(const std::function<double(double)>& g, const Panel& p, double tol, int depth) {
  double mid = 0.5 * (p.lo + p.hi);
  double left_mid = 0.5 * (p.lo + mid);
  double right_mid = 0.5 * (mid + p.hi);
  double g_lm = g(left_mid);
  double g_rm = g(right_mid);
  double left = simpson(p.lo, mid, p.g_lo, g_lm, p.g_mid);
  double right = simpson(mid, p.hi, p.g_mid, g_rm, p.g_hi);
  double delta = left + right - p.whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return refine(g, {p.lo, mid, p.g_lo, g_lm, p.g_mid, left}, 0.5 * tol, depth - 1) +
         refine(g, {mid, p.hi, p.g_mid, g_rm, p.g_hi, right}, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& g, double lo, double hi,
                        double rel_tol, int max_depth) {
  if (hi == lo) return 0.0;
  double mid = 0.5 * (lo + hi);
  Panel whole{lo, hi, g(lo), g(mid), g(hi), 0.0};
  whole.whole = simpson(lo, hi, whole.g_lo, whole.g_mid, whole.g_hi);
  double scale = std::fabs(whole.whole);
  double tol = rel_tol * (scale > 0.0 ? scale : 1.0);
  return refine(g, whole, tol, max_depth);
}

}  // namespace vpmcf
