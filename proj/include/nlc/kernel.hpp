#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlc/grid.hpp"

namespace nlc {

enum class KernelFamily { radial_poly, bump_1d, cosine_2d };

std::string_view to_string(KernelFamily family);
KernelFamily kernel_family_from_string(std::string_view name);

/// Parameters selecting a kernel: family plus radii. `inner_radius` is only
/// read by the radial family; the cosine family always has r = 0, l = 1.
struct KernelSpec {
  KernelFamily family = KernelFamily::radial_poly;
  double inner_radius = 0.0;
  double outer_radius = 1.0;
};

/// Nonzero samples of grad(eta) at cell-offset vectors, pre-multiplied by the
/// cell volume. Entries are sorted by (d0, d1).
struct Stencil {
  Grid grid;
  int reach0 = 0;
  int reach1 = 0;
  std::vector<int> d0;
  std::vector<int> d1;
  std::vector<double> w0;
  std::vector<double> w1;
  double grad_max = 0.0;  // max |grad eta| over the sampled offsets

  std::size_t size() const { return d0.size(); }
};

/// Compactly supported convolution kernel with analytic gradient.
///
/// A kernel is first built from its analytic profile and becomes usable for
/// convolutions once bound to a grid, which samples grad(eta) on every cell
/// offset inside the support.
class Kernel {
 public:
  KernelFamily family() const { return family_; }
  int dim() const { return dim_; }
  double inner_radius() const { return inner_; }
  double outer_radius() const { return outer_; }
  /// Constant k multiplying the radial profile; 1 for the other families.
  double normalization() const { return k_; }
  /// sup |grad eta| of the continuous kernel.
  double grad_sup() const { return grad_sup_; }

  double eta_at(Coord x) const;
  Coord grad_eta_at(Coord x) const;

  /// Copy of this kernel carrying a stencil sampled on `grid`.
  Kernel bind(const Grid& grid) const;
  bool is_bound_to(const Grid& grid) const { return stencil_ && stencil_->grid == grid; }
  const Stencil& stencil() const;

 private:
  friend Kernel make_radial_kernel(double r, double ell, int dim);
  friend Kernel build_bump_kernel_1d(double ell);
  friend Kernel build_cosine_kernel_2d();

  KernelFamily family_ = KernelFamily::radial_poly;
  int dim_ = 2;
  double inner_ = 0.0;
  double outer_ = 1.0;
  double k_ = 1.0;
  double grad_sup_ = 0.0;
  std::shared_ptr<const Stencil> stencil_;
};

/// Radial profile a(s) = k (s-r)^3 (l-s)^3 on [r, l], eta(x) = int_{|x|}^{l} a,
/// with k fixed so that eta integrates to one over R^dim. Not bound to a grid.
Kernel make_radial_kernel(double r, double ell, int dim);

/// make_radial_kernel bound to `grid`.
Kernel build_radial_kernel(double r, double ell, const Grid& grid);

/// Odd 1D kernel eta(s) = s exp(-1 / (1 - (s/l)^2)) on (-l, l); unnormalized.
Kernel build_bump_kernel_1d(double ell);

/// eta(x) = cos(pi |x|^2 / 2) on the open unit disc.
Kernel build_cosine_kernel_2d();

/// Builds the kernel described by `spec` and binds it to `grid`.
Kernel make_kernel(const KernelSpec& spec, const Grid& grid);

}  // namespace nlc
