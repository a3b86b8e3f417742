#pragma once

#include <string_view>

#include "nlc/convolution.hpp"
#include "nlc/grid.hpp"
#include "nlc/kernel.hpp"
#include "nlc/velocity.hpp"

namespace nlc {

enum class Flux { upwind, lax_friedrichs };

/// Sequential: sweep axis 0 then axis 1. Symmetric: average of both sweep
/// orders, which commutes with axis swaps.
enum class Splitting { sequential, symmetric };

std::string_view to_string(Flux flux);
Flux flux_from_string(std::string_view name);
std::string_view to_string(Splitting splitting);
Splitting splitting_from_string(std::string_view name);

struct SchemeConfig {
  Flux flux = Flux::upwind;
  double cfl = 0.9;
  Splitting splitting = Splitting::sequential;
  ConvolutionMethod convolution = ConvolutionMethod::automatic;

  void validate() const;
};

/// Speeds below this count as a resting state in cfl_timestep.
inline constexpr double kRestingSpeed = 1e-14;

/// cfl * min_j(spacing_j / max |v_j|); cfl * min spacing when every speed is
/// below kRestingSpeed.
double cfl_timestep(const VelocityField& v, const Grid& grid, double cfl);

/// Conservative 1D update along `axis` with outflow (copy) ghost cells.
///
/// Interface velocities are the mean of the adjacent cell-center values.
/// Upwind is evaluated in its convex-combination form so nonnegative input
/// stays nonnegative without clipping. Throws StepRejected when a Courant
/// number (including the total outflow of a cell for upwind) exceeds one.
/// `outflow` receives the mass that left through the two boundary faces.
DensityField sweep_axis(const DensityField& field, const VelocityField& v, int axis, double dt,
                        const SchemeConfig& cfg, double& outflow);
DensityField sweep_axis(const DensityField& field, const VelocityField& v, int axis, double dt,
                        const SchemeConfig& cfg);

/// All sweeps of one step with a frozen velocity; advances the time stamp.
DensityField advance(const DensityField& field, const VelocityField& v, double dt,
                     const SchemeConfig& cfg, double& outflow);

/// Assembles the velocity from `field`, then advances by dt.
DensityField step(const DensityField& field, const Kernel& kernel, const VelocityModel& model,
                  double dt, const SchemeConfig& cfg);

}  // namespace nlc
