#pragma once

#include <memory>
#include <string_view>

#include "nlc/grid.hpp"
#include "nlc/kernel.hpp"

namespace nlc {

enum class ConvolutionMethod { automatic, direct, fft };

std::string_view to_string(ConvolutionMethod method);
ConvolutionMethod convolution_method_from_string(std::string_view name);

/// Evaluates (grad rho_i * eta) = (rho_i * grad eta) at every cell center with
/// zero density outside the domain.
///
/// The direct path sums the stencil in its fixed (d0, d1) order. The FFT path
/// performs the same linear (zero-padded) convolution with FFTW and agrees
/// with the direct sum to round-off; `automatic` takes the direct path while
/// cells x stencil stays below kFftCostFactor times the padded FFT size
/// times its log2 (one forward and n backward transforms per population). Results do not depend on the
/// thread count. One convolver must not be used from two threads at once.
class GradientConvolver {
 public:
  GradientConvolver(const Kernel& kernel, const Grid& grid,
                    ConvolutionMethod method = ConvolutionMethod::automatic);
  ~GradientConvolver();
  GradientConvolver(GradientConvolver&&) noexcept;
  GradientConvolver& operator=(GradientConvolver&&) noexcept;

  GradientField apply(const DensityField& field);
  void apply(const DensityField& field, GradientField& out);

  /// Method actually in use (never `automatic`).
  ConvolutionMethod method() const { return method_; }
  const Grid& grid() const { return grid_; }

  /// Multiply-adds of the direct sum worth one FFT point-log2 unit.
  static constexpr double kFftCostFactor = 8.0;

 private:
  struct FftPlan;
  void apply_direct(const DensityField& field, GradientField& out) const;
  void apply_fft(const DensityField& field, GradientField& out);

  Kernel kernel_;
  Grid grid_;
  ConvolutionMethod method_;
  std::unique_ptr<FftPlan> fft_;
};

/// One-shot convenience wrapper around GradientConvolver.
GradientField convolve_gradient(const DensityField& field, const Kernel& kernel,
                                ConvolutionMethod method = ConvolutionMethod::automatic);

}  // namespace nlc
