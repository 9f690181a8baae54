#pragma once

#include <filesystem>
#include <functional>
#include <span>
#include <vector>

namespace vpmcf {

/// Generating curve r(z) sampled on a uniform grid over the slab [a, b].
/// Nodal radii are strictly positive; slopes at both ends are zero by the
/// reflected ghost-node convention (r_{-1} = r_1, r_m = r_{m-2}).
class ProfileGrid {
 public:
  /// Throws std::invalid_argument unless a < b, m >= 3 and every r_i is finite and > 0.
  ProfileGrid(double a, double b, std::vector<double> radii);

  /// Samples `radius(z)` at m uniform nodes.
  static ProfileGrid sample(double a, double b, int m, const std::function<double(double)>& radius);
  static ProfileGrid constant(double a, double b, int m, double radius);

  double a() const { return a_; }
  double b() const { return b_; }
  std::size_t size() const { return r_.size(); }
  double dz() const { return (b_ - a_) / static_cast<double>(r_.size() - 1); }
  double z(std::size_t i) const { return a_ + static_cast<double>(i) * dz(); }
  double r(std::size_t i) const { return r_[i]; }
  std::span<const double> radii() const { return r_; }

  /// Same grid with every radius shifted by `offset`; validated like the constructor.
  ProfileGrid shifted(double offset) const;
  ProfileGrid with_radii(std::vector<double> radii) const { return ProfileGrid(a_, b_, std::move(radii)); }

 private:
  double a_, b_;
  std::vector<double> r_;
};

/// Writes the profile as CSV with header `z,r`, one node per row, round-trip precision.
void write_profile_csv(const ProfileGrid& profile, const std::filesystem::path& path);
/// Reads a `z,r` CSV. Throws ConfigError for a bad header, non-uniform or
/// non-increasing z, or non-positive r (the message carries the line number).
ProfileGrid read_profile_csv(const std::filesystem::path& path);

}  // namespace vpmcf
