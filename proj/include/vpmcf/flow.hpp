#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vpmcf/ambient.hpp"
#include "vpmcf/bounds.hpp"
#include "vpmcf/hypersurface.hpp"
#include "vpmcf/profile.hpp"

namespace vpmcf {

struct FlowConfig {
  double dt_safety = 0.4;
  double max_t = 10.0;
  /// Unset: 1e-3 * min r0.
  std::optional<double> r_min_stop;
  double v_max_stop = 1e6;
  /// Tolerance on max|H - Hbar|. Unset: 1e-6 * |Hbar0|.
  std::optional<double> conv_tol;
  int record_every = 100;
  bool volume_projection = true;
  /// Keep a profile snapshot every this many steps (0 keeps only the first and last).
  int snapshot_every = 0;
  /// Slope tolerance for the critical-point census; negative selects the relative default.
  double slope_tol = -1.0;
};

/// Fills the unset thresholds from the initial profile.
FlowConfig resolve_defaults(FlowConfig cfg, const ProfileGrid& initial, const AmbientSpace& space);

struct DiagnosticsRecord {
  double t = 0, V = 0, area = 0, Hbar = 0, I1 = 0, I2 = 0;
  double min_r = 0, max_r = 0, max_v = 0;
  int N = 0;
  double curve_len = 0, max_L2 = 0;
};

enum class StopTag { Converged, Singularity, GraphFailure, MaxTime, Instability };
std::string to_string(StopTag tag);

struct StopReason {
  StopTag tag = StopTag::MaxTime;
  /// z of the minimizing node for singularities.
  std::optional<double> location;
  std::string detail;
};

/// One instant of the flow. The volume comes from per-node beta values
/// carried forward with compensated summation, so the cache tracks a fresh
/// enclosed_volume of the same profile to rounding level.
struct FlowState {
  ProfileGrid profile;
  double t = 0;
  long step = 0;
  double target_volume = 0;
  std::vector<double> beta_nodes;
  std::vector<double> beta_carry;
  NodalGeometry geometry;
  DiagnosticsRecord cached;
  /// max_i |H_i - Hbar|
  double cmc_deviation = 0;
  double slope_tol = -1.0;
};

/// Builds the state at t = 0 with the target volume taken from `profile`.
FlowState initial_state(const ProfileGrid& profile, const AmbientSpace& space, double slope_tol = -1.0);

/// dr/dt at every node for a given averaged mean curvature.
std::vector<double> rhs(const ProfileGrid& profile, const AmbientSpace& space, double Hbar);

/// Largest stable explicit step: dt_safety * dz^2 * min_i(r'^2 + f^2) / 2.
double stable_time_step(const NodalGeometry& geometry, double dz, double dt_safety);

struct StepOutcome {
  FlowState state;
  /// Set when the step could not be committed; `state` is then the pre-step state.
  std::optional<StopReason> stop;
};

/// One explicit Euler step with Hbar lagged from the current profile,
/// followed by the optional additive volume projection.
StepOutcome step(const FlowState& state, const AmbientSpace& space, const FlowConfig& cfg);

struct Snapshot {
  double t;
  long step;
  ProfileGrid profile;
};

struct RunResult {
  FlowState final_state;
  StopReason reason;
  std::vector<DiagnosticsRecord> history;
  std::vector<Snapshot> snapshots;
  FlowConfig config;  ///< with defaults resolved
  long steps = 0;
};

RunResult run(const ProfileGrid& initial, const AmbientSpace& space, const FlowConfig& cfg);

struct InvariantCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct AuditContext {
  BoundsReport bounds;
  double a = 0, b = 1;
  int initial_critical_points = 2;
  bool rss2 = false;
  bool volume_projection = true;
  /// The bounded-v check only applies to runs that did not end in a singularity.
  bool ended_in_singularity = false;
};

/// Checks a recorded history against the a-priori properties of the flow:
/// volume conservation, area monotonicity, max r < r2, Hbar > 0, I1 >= 0 and
/// I2 > 0 (RSS2 only), the curve-length bound, N(t) non-increasing and the
/// bounded growth of max v.
std::vector<InvariantCheck> audit_history(const std::vector<DiagnosticsRecord>& history,
                                          const AmbientSpace& space, const AuditContext& ctx);

}  // namespace vpmcf
