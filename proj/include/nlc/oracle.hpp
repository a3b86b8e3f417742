#pragma once

#include <vector>

#include "nlc/convolution.hpp"
#include "nlc/grid.hpp"
#include "nlc/kernel.hpp"
#include "nlc/velocity.hpp"

namespace nlc {

/// Velocity fields at uniformly spaced times, interpolated linearly in time
/// and multilinearly in space (constant extension past the outer cell
/// centers). Divergences come from centered differences.
class VelocityHistory {
 public:
  VelocityHistory(const Grid& grid, double start_time, double step,
                  std::vector<VelocityField> fields);

  const Grid& grid() const { return grid_; }
  std::size_t samples() const { return fields_.size(); }
  double time(std::size_t k) const { return start_ + step_ * static_cast<double>(k); }
  const VelocityField& field(std::size_t k) const { return fields_[k]; }

  /// Velocity of population `pop` and its divergence at (t, x).
  void sample(int pop, double t, Coord x, Coord& v, double& div) const;

 private:
  Grid grid_;
  double start_;
  double step_;
  std::vector<VelocityField> fields_;
  std::vector<std::vector<double>> divergence_;  // [sample][pop * cells + cell]
};

/// Multilinear interpolation of cell values at x with constant extension.
double interpolate(const Grid& grid, std::span<const double> values, Coord x);

struct CharacteristicPath {
  std::vector<double> times;
  std::vector<Coord> positions;
  /// int_{t0}^{t1} div v(s, X(s)) ds, signed by the direction of travel.
  double divergence_integral = 0.0;
  /// Set when the path left the grid (velocity is extended constantly there).
  bool truncated = false;
  Coord end() const { return positions.back(); }
};

/// Integrates dX/ds = v(s, X) from (t0, x0) to t1 (either direction) with
/// classical RK4 and substeps no longer than max_substep.
CharacteristicPath trace_characteristic(const VelocityHistory& history, int pop, double t0,
                                        Coord x0, double t1, double max_substep);

/// rho0(X(start; t, x)) exp(-int_start^t div v) along the characteristic
/// through (t, x), where start is the first sample time of the history.
double lagrangian_density(const DensityField& rho0, const VelocityHistory& history, int pop,
                          double t, Coord x, double max_substep);

struct OracleOptions {
  int iterations = 8;
  /// Time intervals of the velocity history; 0 picks max(8, T / dt_cfl).
  int time_samples = 0;
  /// Stop early once the Picard gap drops to this value (0 never stops early).
  double tolerance = 0.0;
  /// RK4 substeps per sample interval.
  int substeps = 4;
  ConvolutionMethod convolution = ConvolutionMethod::automatic;
};

struct OracleResult {
  DensityField solution;
  std::vector<DensityField> trajectory;  // the final iterate at every sample time
  std::vector<double> gap_history;       // max over samples of the L1 change per iteration
  double gap = 0.0;
  int iterations = 0;
  int time_samples = 0;
};

/// Characteristic (Lagrangian) solution by Picard iteration on the velocity:
/// freeze v from the previous iterate, transport rho0 along its
/// characteristics, recompute v, repeat.
OracleResult picard_solve(const DensityField& rho0, const Kernel& kernel,
                          const VelocityModel& model, double horizon,
                          const OracleOptions& options = {});

}  // namespace nlc
