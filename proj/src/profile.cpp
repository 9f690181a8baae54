#include "vpmcf/profile.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "vpmcf/errors.hpp"

namespace vpmcf {

ProfileGrid::ProfileGrid(double a, double b, std::vector<double> radii) : a_(a), b_(b), r_(std::move(radii)) {
  if (!(a_ < b_) || !std::isfinite(a_) || !std::isfinite(b_))
    throw std::invalid_argument("profile slab needs finite a < b");
  if (r_.size() < 3) throw std::invalid_argument("profile needs at least 3 nodes");
  for (std::size_t i = 0; i < r_.size(); ++i) {
    if (!(r_[i] > 0.0) || !std::isfinite(r_[i])) {
      std::ostringstream msg;
      msg << "profile radius at node " << i << " is not a positive finite number (" << r_[i] << ")";
      throw std::invalid_argument(msg.str());
    }
  }
}

ProfileGrid ProfileGrid::sample(double a, double b, int m, const std::function<double(double)>& radius) {
  if (m < 3) throw std::invalid_argument("profile needs at least 3 nodes");
  std::vector<double> r(static_cast<std::size_t>(m));
  const double dz = (b - a) / (m - 1);
  for (int i = 0; i < m; ++i) r[static_cast<std::size_t>(i)] = radius(a + i * dz);
  return ProfileGrid(a, b, std::move(r));
}

ProfileGrid ProfileGrid::constant(double a, double b, int m, double radius) {
  if (m < 3) throw std::invalid_argument("profile needs at least 3 nodes");
  return ProfileGrid(a, b, std::vector<double>(static_cast<std::size_t>(m), radius));
}

ProfileGrid ProfileGrid::shifted(double offset) const {
  std::vector<double> r = r_;
  for (double& x : r) x += offset;
  return ProfileGrid(a_, b_, std::move(r));
}

void write_profile_csv(const ProfileGrid& profile, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "z,r\n";
  for (std::size_t i = 0; i < profile.size(); ++i) out << profile.z(i) << ',' << profile.r(i) << '\n';
}

ProfileGrid read_profile_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open profile " + path.string());
  auto fail = [&](int line, const std::string& what) {
    throw ConfigError(path.string() + ":" + std::to_string(line) + ": " + what);
  };
  std::string line;
  int lineno = 1;
  if (!std::getline(in, line)) fail(1, "empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "z,r") fail(1, "expected header 'z,r'");

  std::vector<double> z, r;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) fail(lineno, "expected two comma-separated values");
    try {
      std::size_t used = 0;
      double zi = std::stod(line.substr(0, comma), &used);
      double ri = std::stod(line.substr(comma + 1), &used);
      z.push_back(zi);
      r.push_back(ri);
    } catch (const std::logic_error&) {
      fail(lineno, "unparseable number");
    }
    if (!(r.back() > 0.0) || !std::isfinite(r.back())) fail(lineno, "radius must be positive");
    if (z.size() > 1 && !(z.back() > z[z.size() - 2])) fail(lineno, "z must be strictly increasing");
  }
  if (z.size() < 3) fail(lineno, "profile needs at least 3 nodes");
  const double a = z.front();
  const double b = z.back();
  const double dz = (b - a) / static_cast<double>(z.size() - 1);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (std::fabs(z[i] - (a + static_cast<double>(i) * dz)) > 1e-9 * (b - a))
      fail(static_cast<int>(i) + 2, "z spacing is not uniform");
  }
  return ProfileGrid(a, b, std::move(r));
}

}  // namespace vpmcf
