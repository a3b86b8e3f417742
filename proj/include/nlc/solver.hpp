#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlc/grid.hpp"
#include "nlc/kernel.hpp"
#include "nlc/scheme.hpp"
#include "nlc/velocity.hpp"

namespace nlc {

struct Ball {
  Coord center{0.0, 0.0};
  double radius = 0.0;
};

/// Smallest ball around the box center containing the whole box.
Ball bounding_ball(const Box& box);

struct RunOptions {
  /// Times at which a copy of the state is returned; must lie between the
  /// start time and t_final.
  std::vector<double> snapshot_times;
  /// Regions whose mass is tracked at every record.
  std::vector<Ball> balls;
  /// Extra diagnostic record every this many steps (0: snapshots only).
  int report_every = 0;
  /// |rho| above this counts as support.
  double support_threshold = 1e-12;
  /// Step halvings allowed after a CFL rejection before giving up.
  int max_rejections = 40;
};

/// Diagnostic time series of one evolution. Entry k of every series belongs
/// to times[k]; the first record is the initial state.
struct RunReport {
  double start_time = 0.0;
  int direction = 1;
  std::vector<double> times;
  std::vector<std::vector<double>> mass;                      // [record][population]
  std::vector<std::vector<std::optional<Box>>> support;       // [record][population]
  std::vector<Ball> balls;
  std::vector<std::vector<std::vector<double>>> region_mass;  // [record][ball][population]
  std::vector<double> deviation_l1;                           // ||rho(t) - rho(t0)||_L1
  std::vector<long> outside_cells;  // support cells beyond every ball (dilated by 2 spacings)
  std::vector<double> boundary_loss;  // cumulative mass lost through the domain boundary
  double velocity_bound = 0.0;        // W = L_V |grad eta|_inf |rho_0|_L1
  double initial_l1 = 0.0;
  double max_spacing = 0.0;
  double support_threshold = 0.0;
  long steps_taken = 0;
  long rejected_steps = 0;
  double boundary_mass_lost = 0.0;
};

struct Evolution {
  std::vector<DensityField> snapshots;  // one per requested snapshot time, in order
  DensityField final_state;
  RunReport report;
};

/// Integrates from initial.time() to t_final with adaptive CFL steps.
///
/// Backward runs (t_final < initial.time()) use the same loop with the
/// velocity negated and a positive internal step. Steps are truncated to hit
/// every snapshot time and t_final exactly.
Evolution evolve(const DensityField& initial, const Kernel& kernel, const VelocityModel& model,
                 const SchemeConfig& cfg, double t_final, const RunOptions& options = {});

/// Same loop driven by an elapsed duration instead of an end time, so that
/// runs of equal length take identical steps whatever their start time.
Evolution evolve_by(const DensityField& initial, const Kernel& kernel, const VelocityModel& model,
                    const SchemeConfig& cfg, double duration, int direction,
                    const RunOptions& options = {});

struct CheckResult {
  std::string name;
  bool pass = true;
  double margin = 0.0;
  std::string detail;
};

/// Support of every record inside B(x_o, r + W |t - t0| + 2 max spacing);
/// margin is the smallest slack (negative on failure).
CheckResult check_propagation_bound(const RunReport& report, const Ball& initial_support);

struct ClusterCheck {
  std::vector<CheckResult> per_ball;
  CheckResult containment;
  bool pass() const;
};

/// Per-ball mass constancy (relative 1e-8) and support containment in the
/// union of balls over records whose time lies in t_range. Throws ConfigError
/// unless |x_h - x_j| > r_h + r_j + ell for every pair.
ClusterCheck check_cluster_independence(const RunReport& report, const std::vector<Ball>& balls,
                                        double ell, std::pair<double, double> t_range);

/// Relative mass tolerance of check_cluster_independence.
inline constexpr double kClusterMassTolerance = 1e-8;

enum class Symmetry { swap_axes, reflect_axis0, reflect_axis1, rotate90 };

std::string_view to_string(Symmetry symmetry);
Symmetry symmetry_from_string(std::string_view name);

/// Image of a field under a grid-compatible orthogonal map:
/// result(x) = field(R x).
DensityField apply_symmetry(const DensityField& field, Symmetry symmetry);

/// max |rho(x) - rho(R x)| over cells and populations.
double check_symmetry(const DensityField& field, Symmetry symmetry);

}  // namespace nlc
