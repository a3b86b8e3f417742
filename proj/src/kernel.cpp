#include "nlc/kernel.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "nlc/error.hpp"

namespace nlc {
namespace {

using std::numbers::pi;

// int_0^u t^3 (w - t)^3 dt
double cubic_product_integral(double u, double w) {
  const double u4 = u * u * u * u;
  return u4 * (w * w * w / 4.0 - 3.0 * w * w * u / 5.0 + w * u * u / 2.0 - u * u * u / 7.0);
}

double radial_a(double s, double r, double ell, double k) {
  if (s <= r || s >= ell) return 0.0;
  const double p = (s - r) * (ell - s);
  return k * p * p * p;
}

double radial_profile(double s, double r, double ell, double k) {
  if (s >= ell) return 0.0;
  const double w = ell - r;
  const double u = std::clamp(s - r, 0.0, w);
  return k * (cubic_product_integral(w, w) - cubic_product_integral(u, w));
}

double bump_eta(double x, double ell) {
  const double s = x / ell;
  if (std::abs(s) >= 1.0) return 0.0;
  return x * std::exp(-1.0 / (1.0 - s * s));
}

double bump_grad(double x, double ell) {
  const double s = x / ell;
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  return std::exp(-1.0 / q) * (1.0 - 2.0 * s * s / (q * q));
}

// Dense scan plus golden-section polish of max |f| on [0, b).
template <typename F>
double sup_abs(F f, double b) {
  constexpr int kSamples = 20000;
  int best = 0;
  double best_val = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double v = std::abs(f(b * i / kSamples));
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double lo = b * std::max(best - 1, 0) / kSamples;
  double hi = b * std::min(best + 1, kSamples - 1) / kSamples;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 80; ++it) {
    const double m1 = hi - g * (hi - lo);
    const double m2 = lo + g * (hi - lo);
    if (std::abs(f(m1)) > std::abs(f(m2))) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return std::max(best_val, std::abs(f(0.5 * (lo + hi))));
}

}  // namespace

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::radial_poly: return "radial_poly";
    case KernelFamily::bump_1d: return "bump_1d";
    case KernelFamily::cosine_2d: return "cosine_2d";
  }
  return "?";
}

KernelFamily kernel_family_from_string(std::string_view name) {
  if (name == "radial_poly") return KernelFamily::radial_poly;
  if (name == "bump_1d") return KernelFamily::bump_1d;
  if (name == "cosine_2d") return KernelFamily::cosine_2d;
  throw ParameterError("unknown kernel family '" + std::string(name) + "'");
}

double Kernel::eta_at(Coord x) const {
  switch (family_) {
    case KernelFamily::radial_poly: {
      const double s = dim_ == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]);
      return radial_profile(s, inner_, outer_, k_);
    }
    case KernelFamily::bump_1d:
      return bump_eta(x[0], outer_);
    case KernelFamily::cosine_2d: {
      const double s2 = x[0] * x[0] + x[1] * x[1];
      return s2 < 1.0 ? std::cos(0.5 * pi * s2) : 0.0;
    }
  }
  return 0.0;
}

Coord Kernel::grad_eta_at(Coord x) const {
  switch (family_) {
    case KernelFamily::radial_poly: {
      if (dim_ == 1) {
        const double s = std::abs(x[0]);
        const double a = radial_a(s, inner_, outer_, k_);
        return {x[0] > 0.0 ? -a : (x[0] < 0.0 ? a : 0.0), 0.0};
      }
      const double s = std::sqrt(x[0] * x[0] + x[1] * x[1]);
      const double a = radial_a(s, inner_, outer_, k_);
      if (a == 0.0) return {0.0, 0.0};
      return {-a * x[0] / s, -a * x[1] / s};
    }
    case KernelFamily::bump_1d:
      return {bump_grad(x[0], outer_), 0.0};
    case KernelFamily::cosine_2d: {
      const double s2 = x[0] * x[0] + x[1] * x[1];
      if (s2 >= 1.0) return {0.0, 0.0};
      const double f = -pi * std::sin(0.5 * pi * s2);
      return {f * x[0], f * x[1]};
    }
  }
  return {0.0, 0.0};
}

const Stencil& Kernel::stencil() const {
  if (!stencil_) throw ConfigError("kernel has no stencil; bind it to a grid first");
  return *stencil_;
}

Kernel Kernel::bind(const Grid& grid) const {
  grid.validate();
  if (grid.dim != dim_) {
    throw ConfigError("kernel dimension " + std::to_string(dim_) + " does not match grid dimension " +
                      std::to_string(grid.dim));
  }
  auto st = std::make_shared<Stencil>();
  st->grid = grid;
  const double vol = grid.cell_volume();
  // Offsets beyond the grid extent can never pair two cells of the domain.
  const int reach0 = std::min(static_cast<int>(std::ceil(outer_ / grid.spacing[0])), grid.cells[0] - 1);
  const int reach1 =
      dim_ == 1 ? 0 : std::min(static_cast<int>(std::ceil(outer_ / grid.spacing[1])), grid.cells[1] - 1);
  for (int d0 = -reach0; d0 <= reach0; ++d0) {
    for (int d1 = -reach1; d1 <= reach1; ++d1) {
      const Coord off{d0 * grid.spacing[0], dim_ == 2 ? d1 * grid.spacing[1] : 0.0};
      const Coord g = grad_eta_at(off);
      if (g[0] == 0.0 && g[1] == 0.0) continue;
      st->d0.push_back(d0);
      st->d1.push_back(d1);
      st->w0.push_back(g[0] * vol);
      st->w1.push_back(g[1] * vol);
      st->grad_max = std::max(st->grad_max, std::hypot(g[0], g[1]));
      st->reach0 = std::max(st->reach0, std::abs(d0));
      st->reach1 = std::max(st->reach1, std::abs(d1));
    }
  }
  Kernel out = *this;
  out.stencil_ = std::move(st);
  return out;
}

Kernel make_radial_kernel(double r, double ell, int dim) {
  if (!(r >= 0.0) || !(ell > r)) {
    throw ParameterError("radial kernel needs 0 <= r < l (r=" + std::to_string(r) +
                         ", l=" + std::to_string(ell) + ")");
  }
  if (dim != 1 && dim != 2) throw ParameterError("radial kernel dimension must be 1 or 2");
  Kernel kern;
  kern.family_ = KernelFamily::radial_poly;
  kern.dim_ = dim;
  kern.inner_ = r;
  kern.outer_ = ell;
  // Mass of the k = 1 profile, radial Jacobian 2 (1D) or 2 pi s (2D).
  auto integrand = [&](double s) {
    const double jac = dim == 1 ? 2.0 : 2.0 * pi * s;
    return jac * radial_profile(s, r, ell, 1.0);
  };
  using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  double mass = Quad::integrate(integrand, r, ell, 15, 1e-10);
  if (r > 0.0) mass += Quad::integrate(integrand, 0.0, r, 15, 1e-10);
  kern.k_ = 1.0 / mass;
  const double half = 0.5 * (ell - r);
  kern.grad_sup_ = kern.k_ * std::pow(half, 6);
  return kern;
}

Kernel build_radial_kernel(double r, double ell, const Grid& grid) {
  return make_radial_kernel(r, ell, grid.dim).bind(grid);
}

Kernel build_bump_kernel_1d(double ell) {
  if (!(ell > 0.0)) throw ParameterError("bump kernel needs l > 0");
  Kernel kern;
  kern.family_ = KernelFamily::bump_1d;
  kern.dim_ = 1;
  kern.inner_ = 0.0;
  kern.outer_ = ell;
  kern.k_ = 1.0;
  kern.grad_sup_ = sup_abs([ell](double x) { return bump_grad(x, ell); }, ell);
  return kern;
}

Kernel build_cosine_kernel_2d() {
  Kernel kern;
  kern.family_ = KernelFamily::cosine_2d;
  kern.dim_ = 2;
  kern.inner_ = 0.0;
  kern.outer_ = 1.0;
  kern.k_ = 1.0;
  // |grad eta| = pi s sin(pi s^2 / 2) increases to pi at the support edge.
  kern.grad_sup_ = pi;
  return kern;
}

Kernel make_kernel(const KernelSpec& spec, const Grid& grid) {
  switch (spec.family) {
    case KernelFamily::radial_poly:
      return build_radial_kernel(spec.inner_radius, spec.outer_radius, grid);
    case KernelFamily::bump_1d:
      return build_bump_kernel_1d(spec.outer_radius).bind(grid);
    case KernelFamily::cosine_2d:
      return build_cosine_kernel_2d().bind(grid);
  }
  throw ParameterError("unknown kernel family");
}

}  // namespace nlc
