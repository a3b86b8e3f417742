#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "nlc/convolution.hpp"
#include "nlc/grid.hpp"
#include "nlc/kernel.hpp"

namespace nlc {

enum class VelocityVariant { saturating, rotated_saturating, negated_saturating, identity };

std::string_view to_string(VelocityVariant variant);
VelocityVariant velocity_variant_from_string(std::string_view name);

/// Dense n x m matrix, column i holding the n-vector of population i.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;  // column-major: values[i * rows + j]

  Matrix() = default;
  Matrix(int rows, int cols) : rows(rows), cols(cols), values(static_cast<std::size_t>(rows) * cols) {}
  double& operator()(int j, int i) { return values[static_cast<std::size_t>(i) * rows + j]; }
  double operator()(int j, int i) const { return values[static_cast<std::size_t>(i) * rows + j]; }
};

/// Closure V mapping the n x m convolved-gradient matrix to velocities:
///   saturating variants: sign * R w / sqrt(1 + |w|^2), |w| the Frobenius norm
///   identity:            sign * w
/// R is the identity unless the variant is rotated_saturating.
class VelocityModel {
 public:
  static VelocityModel saturating(int dim);
  static VelocityModel rotated_saturating(std::vector<double> rotation_row_major);
  static VelocityModel negated_saturating(int dim);
  static VelocityModel identity(int dim);

  VelocityVariant variant() const { return variant_; }
  int dim() const { return dim_; }
  double sign() const { return sign_; }
  const std::vector<double>& rotation() const { return rotation_; }
  /// Lipschitz bound L_V; 1 for every supported variant.
  double lipschitz() const { return 1.0; }

  /// Same model with the overall sign flipped (the -V of backward evolution).
  VelocityModel negated() const;
  VelocityModel with_sign(double sign) const;

  /// Column-major w (n*m values) to column-major velocities.
  void apply(std::span<const double> w, std::span<double> out) const;

 private:
  VelocityVariant variant_ = VelocityVariant::saturating;
  int dim_ = 2;
  double sign_ = 1.0;
  bool rotate_ = false;
  std::vector<double> rotation_;  // row-major dim x dim
};

Matrix eval_velocity(const VelocityModel& model, const Matrix& w);

/// Velocity field assembly with a reusable convolver.
class VelocityAssembler {
 public:
  VelocityAssembler(const Kernel& kernel, const VelocityModel& model, const Grid& grid,
                    ConvolutionMethod method = ConvolutionMethod::automatic);

  VelocityField assemble(const DensityField& field);
  void assemble(const DensityField& field, VelocityField& out);

  const VelocityModel& model() const { return model_; }
  void set_model(const VelocityModel& model);
  ConvolutionMethod method() const { return convolver_.method(); }

 private:
  VelocityModel model_;
  GradientConvolver convolver_;
  GradientField scratch_;
};

/// v_i(x) = V((grad rho * eta)(x)) column i, at every cell center.
VelocityField assemble_velocity(const DensityField& field, const Kernel& kernel,
                                const VelocityModel& model,
                                ConvolutionMethod method = ConvolutionMethod::automatic);

}  // namespace nlc
