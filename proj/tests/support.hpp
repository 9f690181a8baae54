#pragma once

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

namespace vpmcf::test {

inline constexpr double kPi = std::numbers::pi;

/// Composite Simpson with an even panel count, used for independent oracles.
inline double simpson(const std::function<double(double)>& g, double lo, double hi, int panels = 20000) {
  if (panels % 2) ++panels;
  const double h = (hi - lo) / panels;
  double s = g(lo) + g(hi);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * g(lo + i * h);
  return s * h / 3.0;
}

/// Fresh scratch directory under the per-test root chosen by ctest.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const char* root = std::getenv("VPMCF_TEST_TMP");
  std::filesystem::path dir = std::filesystem::path(root ? root : std::filesystem::temp_directory_path().string()) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Observed convergence order from errors at two grids whose spacing differs by `ratio`.
inline double observed_order(double coarse, double fine, double ratio = 2.0) {
  return std::log(coarse / fine) / std::log(ratio);
}

}  // namespace vpmcf::test
