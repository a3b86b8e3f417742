#include "nlc/velocity.hpp"

#include <cmath>
#include <string>

#include "nlc/error.hpp"

namespace nlc {
namespace {

void check_orthogonal(const std::vector<double>& r, int n) {
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += r[k * n + a] * r[k * n + b];
      if (std::abs(s - (a == b ? 1.0 : 0.0)) > 1e-12) {
        throw ParameterError("velocity rotation matrix is not orthogonal");
      }
    }
  }
}

}  // namespace

std::string_view to_string(VelocityVariant variant) {
  switch (variant) {
    case VelocityVariant::saturating: return "saturating";
    case VelocityVariant::rotated_saturating: return "rotated_saturating";
    case VelocityVariant::negated_saturating: return "negated_saturating";
    case VelocityVariant::identity: return "identity";
  }
  return "?";
}

VelocityVariant velocity_variant_from_string(std::string_view name) {
  if (name == "saturating") return VelocityVariant::saturating;
  if (name == "rotated_saturating") return VelocityVariant::rotated_saturating;
  if (name == "negated_saturating") return VelocityVariant::negated_saturating;
  if (name == "identity") return VelocityVariant::identity;
  throw ParameterError("unknown velocity variant '" + std::string(name) + "'");
}

VelocityModel VelocityModel::saturating(int dim) {
  VelocityModel m;
  m.variant_ = VelocityVariant::saturating;
  m.dim_ = dim;
  return m;
}

VelocityModel VelocityModel::rotated_saturating(std::vector<double> rotation_row_major) {
  const auto n2 = rotation_row_major.size();
  int n = 0;
  while (static_cast<std::size_t>(n * n) < n2) ++n;
  if (static_cast<std::size_t>(n * n) != n2 || n < 1 || n > 2) {
    throw ParameterError("rotation must be a 1x1 or 2x2 matrix given row-major");
  }
  check_orthogonal(rotation_row_major, n);
  VelocityModel m;
  m.variant_ = VelocityVariant::rotated_saturating;
  m.dim_ = n;
  m.rotate_ = true;
  m.rotation_ = std::move(rotation_row_major);
  return m;
}

VelocityModel VelocityModel::negated_saturating(int dim) {
  VelocityModel m = saturating(dim);
  m.variant_ = VelocityVariant::negated_saturating;
  m.sign_ = -1.0;
  return m;
}

VelocityModel VelocityModel::identity(int dim) {
  VelocityModel m;
  m.variant_ = VelocityVariant::identity;
  m.dim_ = dim;
  return m;
}

VelocityModel VelocityModel::negated() const {
  VelocityModel m = *this;
  m.sign_ = -sign_;
  return m;
}

VelocityModel VelocityModel::with_sign(double sign) const {
  if (sign != 1.0 && sign != -1.0) throw ParameterError("velocity sign must be +1 or -1");
  VelocityModel m = *this;
  m.sign_ = variant_ == VelocityVariant::negated_saturating ? -sign : sign;
  return m;
}

void VelocityModel::apply(std::span<const double> w, std::span<double> out) const {
  const int n = dim_;
  const std::size_t cols = w.size() / n;
  double factor = sign_;
  if (variant_ != VelocityVariant::identity) {
    double norm2 = 0.0;
    for (double x : w) norm2 += x * x;
    factor = sign_ / std::sqrt(1.0 + norm2);
  }
  for (std::size_t i = 0; i < cols; ++i) {
    const double* wi = w.data() + i * n;
    double* vi = out.data() + i * n;
    if (rotate_) {
      for (int r = 0; r < n; ++r) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += rotation_[r * n + k] * wi[k];
        vi[r] = factor * s;
      }
    } else {
      for (int r = 0; r < n; ++r) vi[r] = factor * wi[r];
    }
  }
}

Matrix eval_velocity(const VelocityModel& model, const Matrix& w) {
  if (w.rows != model.dim()) throw ParameterError("velocity input has the wrong number of rows");
  Matrix out(w.rows, w.cols);
  model.apply(w.values, out.values);
  return out;
}

VelocityAssembler::VelocityAssembler(const Kernel& kernel, const VelocityModel& model,
                                     const Grid& grid, ConvolutionMethod method)
    : model_(model), convolver_(kernel, grid, method) {
  if (model.dim() != grid.dim) {
    throw ConfigError("velocity model dimension does not match the grid");
  }
}

void VelocityAssembler::set_model(const VelocityModel& model) {
  if (model.dim() != model_.dim()) throw ConfigError("velocity model dimension changed");
  model_ = model;
}

VelocityField VelocityAssembler::assemble(const DensityField& field) {
  VelocityField out(field.grid(), field.populations());
  assemble(field, out);
  return out;
}

void VelocityAssembler::assemble(const DensityField& field, VelocityField& out) {
  convolver_.apply(field, scratch_);
  const Grid& g = field.grid();
  const int n = g.dim;
  const int m = field.populations();
  if (!(out.grid() == g) || out.populations() != m) out = VelocityField(g, m);
  const long cells = static_cast<long>(g.size());
#pragma omp parallel
  {
    std::vector<double> w(static_cast<std::size_t>(n) * m);
    std::vector<double> v(w.size());
#pragma omp for schedule(static)
    for (long c = 0; c < cells; ++c) {
      for (int p = 0; p < m; ++p) {
        for (int a = 0; a < n; ++a) w[p * n + a] = scratch_.at(p, a, c);
      }
      model_.apply(w, v);
      for (int p = 0; p < m; ++p) {
        for (int a = 0; a < n; ++a) out.at(p, a, c) = v[p * n + a];
      }
    }
  }
}

VelocityField assemble_velocity(const DensityField& field, const Kernel& kernel,
                                const VelocityModel& model, ConvolutionMethod method) {
  VelocityAssembler assembler(kernel, model, field.grid(), method);
  return assembler.assemble(field);
}

}  // namespace nlc
