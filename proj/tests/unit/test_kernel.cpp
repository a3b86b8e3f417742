#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "nlc/error.hpp"
#include "nlc/kernel.hpp"

using namespace nlc;
using std::numbers::pi;

namespace {

// Unnormalized radial profile: int_s^l (t-r)^3 (l-t)^3 dt, constant below r.
double profile(double s, double r, double ell) {
  const double lo = std::max(s, r);
  if (lo >= ell) return 0.0;
  return testing::simpson(
      [&](double t) { return std::pow(t - r, 3) * std::pow(ell - t, 3); }, lo, ell, 1000);
}

double reference_normalization_2d(double r, double ell) {
  auto f = [&](double s) { return 2.0 * pi * s * profile(s, r, ell); };
  const double inner = r > 0.0 ? testing::simpson(f, 0.0, r, 1000) : 0.0;
  return 1.0 / (inner + testing::simpson(f, r, ell, 1000));
}

double reference_normalization_1d(double r, double ell) {
  auto f = [&](double s) { return 2.0 * profile(s, r, ell); };
  const double inner = r > 0.0 ? testing::simpson(f, 0.0, r, 1000) : 0.0;
  return 1.0 / (inner + testing::simpson(f, r, ell, 1000));
}

}  // namespace

TEST_CASE("radial kernel normalization against polar quadrature") {
  for (auto [r, ell] : {std::pair{0.5, 0.8}, std::pair{0.8, 1.5}, std::pair{0.6, 1.5},
                        std::pair{0.0, 1.0}}) {
    const Kernel k = make_radial_kernel(r, ell, 2);
    CHECK(k.normalization() == doctest::Approx(reference_normalization_2d(r, ell)).epsilon(1e-9));
    const Kernel k1 = make_radial_kernel(r, ell, 1);
    CHECK(k1.normalization() == doctest::Approx(reference_normalization_1d(r, ell)).epsilon(1e-9));
  }
  // r = 0, l = 1 in 1D: 2 int_0^1 t^4 (1-t)^3 dt = 2 B(5, 4) = 1/140.
  CHECK(make_radial_kernel(0.0, 1.0, 1).normalization() == doctest::Approx(140.0).epsilon(1e-13));
}

TEST_CASE("radial kernel integrates to one on a fine grid") {
  const Kernel k = make_radial_kernel(0.5, 0.8, 2);
  const Grid g = Grid::plane({800, 800}, {-0.8, -0.8}, {0.8, 0.8});
  double sum = 0.0;
  for (int i = 0; i < 800; ++i) {
    for (int j = 0; j < 800; ++j) sum += k.eta_at(cell_center(g, {i, j}));
  }
  CHECK(sum * g.cell_volume() == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("radial kernel gradient") {
  const double r = 0.5, ell = 0.8;
  const Kernel k = make_radial_kernel(r, ell, 2);
  // Flat core and compact support.
  CHECK(k.grad_eta_at({0.3, 0.2})[0] == 0.0);
  CHECK(k.grad_eta_at({0.3, 0.2})[1] == 0.0);
  CHECK(k.grad_eta_at({0.7, 0.5})[0] == 0.0);
  CHECK(k.eta_at({0.9, 0.0}) == 0.0);
  // Central differences of eta.
  const double h = 1e-6;
  for (Coord x : {Coord{0.6, 0.1}, Coord{-0.3, 0.5}, Coord{0.45, -0.4}}) {
    const Coord g = k.grad_eta_at(x);
    const double d0 = (k.eta_at({x[0] + h, x[1]}) - k.eta_at({x[0] - h, x[1]})) / (2 * h);
    const double d1 = (k.eta_at({x[0], x[1] + h}) - k.eta_at({x[0], x[1] - h})) / (2 * h);
    CHECK(g[0] == doctest::Approx(d0).epsilon(1e-6));
    CHECK(g[1] == doctest::Approx(d1).epsilon(1e-6));
  }
  // sup |grad eta| from a dense radial scan.
  double scan = 0.0;
  for (int n = 0; n <= 30000; ++n) {
    const double s = r + (ell - r) * n / 30000.0;
    const Coord g = k.grad_eta_at({s, 0.0});
    scan = std::max(scan, std::hypot(g[0], g[1]));
  }
  CHECK(k.grad_sup() == doctest::Approx(scan).epsilon(1e-8));
}

TEST_CASE("radial kernel parameter checks") {
  CHECK_THROWS_AS(make_radial_kernel(0.8, 0.8, 2), ParameterError);
  CHECK_THROWS_AS(make_radial_kernel(-0.1, 0.8, 2), ParameterError);
  CHECK_THROWS_AS(make_radial_kernel(0.9, 0.8, 2), ParameterError);
  const Kernel unbound = make_radial_kernel(0.5, 0.8, 2);
  CHECK_THROWS_AS(unbound.stencil(), ConfigError);
  CHECK_THROWS_AS(unbound.bind(Grid::line(10, 0, 1)), ConfigError);
}

TEST_CASE("radial stencil is antisymmetric and matches the analytic gradient") {
  const Grid g = Grid::plane({40, 40}, {-1, -1}, {1, 1});
  const Kernel k = build_radial_kernel(0.3, 0.5, g);
  const Stencil& st = k.stencil();
  REQUIRE(st.size() > 0);
  for (std::size_t e = 0; e < st.size(); ++e) {
    const Coord off{st.d0[e] * g.spacing[0], st.d1[e] * g.spacing[1]};
    const Coord grad = k.grad_eta_at(off);
    CHECK(st.w0[e] == doctest::Approx(grad[0] * g.cell_volume()));
    CHECK(st.w1[e] == doctest::Approx(grad[1] * g.cell_volume()));
    // Mirror entry.
    for (std::size_t f = 0; f < st.size(); ++f) {
      if (st.d0[f] == -st.d0[e] && st.d1[f] == -st.d1[e]) {
        CHECK(st.w0[f] == -st.w0[e]);
        CHECK(st.w1[f] == -st.w1[e]);
      }
    }
  }
}

TEST_CASE("bump kernel") {
  const double ell = 0.25;
  const Kernel k = build_bump_kernel_1d(ell);
  CHECK(k.dim() == 1);
  CHECK(k.eta_at({0.3, 0.0}) == 0.0);
  CHECK(k.eta_at({0.1, 0.0}) == doctest::Approx(0.1 * std::exp(-1.0 / (1.0 - 0.16))));
  CHECK(k.eta_at({-0.1, 0.0}) == -k.eta_at({0.1, 0.0}));
  // The kernel is odd, so its derivative is even.
  for (double s : {0.01, 0.1, 0.2, 0.24}) {
    CHECK(k.grad_eta_at({s, 0.0})[0] == k.grad_eta_at({-s, 0.0})[0]);
    const double h = 1e-7;
    const double fd = (k.eta_at({s + h, 0.0}) - k.eta_at({s - h, 0.0})) / (2 * h);
    CHECK(k.grad_eta_at({s, 0.0})[0] == doctest::Approx(fd).epsilon(1e-6));
  }
  double scan = 0.0;
  for (int n = 0; n <= 200000; ++n) {
    scan = std::max(scan, std::abs(k.grad_eta_at({ell * n / 200000.0, 0.0})[0]));
  }
  CHECK(k.grad_sup() == doctest::Approx(scan).epsilon(1e-8));
  const Kernel bound = k.bind(Grid::line(100, -1, 1));
  const Stencil& st = bound.stencil();
  for (std::size_t e = 0; e < st.size(); ++e) {
    for (std::size_t f = 0; f < st.size(); ++f) {
      if (st.d0[f] == -st.d0[e]) CHECK(st.w0[f] == st.w0[e]);
    }
  }
  CHECK_THROWS_AS(build_bump_kernel_1d(0.0), ParameterError);
}

TEST_CASE("cosine kernel") {
  const Kernel k = build_cosine_kernel_2d();
  CHECK(k.eta_at({0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(k.eta_at({1.0, 0.5}) == 0.0);
  const Coord x{0.3, -0.6};
  const double s2 = x[0] * x[0] + x[1] * x[1];
  const Coord g = k.grad_eta_at(x);
  CHECK(g[0] == doctest::Approx(-pi * std::sin(pi * s2 / 2) * x[0]));
  CHECK(g[1] == doctest::Approx(-pi * std::sin(pi * s2 / 2) * x[1]));
  CHECK(k.grad_sup() == doctest::Approx(pi));
}

TEST_CASE("kernel family names") {
  for (KernelFamily f : {KernelFamily::radial_poly, KernelFamily::bump_1d, KernelFamily::cosine_2d}) {
    CHECK(kernel_family_from_string(to_string(f)) == f);
  }
  CHECK_THROWS_AS(kernel_family_from_string("gauss"), ParameterError);
}
