#pragma once

#include <random>

#include "nlc/grid.hpp"

namespace testing {

// Nonnegative random field, zero within `margin` cells of the boundary.
inline nlc::DensityField random_field(const nlc::Grid& g, int m, unsigned seed, int margin = 0) {
  nlc::DensityField f(g, m);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int p = 0; p < m; ++p) {
    for (int i = 0; i < g.cells[0]; ++i) {
      for (int j = 0; j < g.cells[1]; ++j) {
        const bool inside = i >= margin && i < g.cells[0] - margin &&
                            (g.dim == 1 || (j >= margin && j < g.cells[1] - margin));
        f.at(p, g.flat(i, j)) = inside ? u(rng) : 0.0;
      }
    }
  }
  return f;
}

// Composite Simpson rule with n (even) panels.
template <typename F>
double simpson(F&& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

}  // namespace testing
