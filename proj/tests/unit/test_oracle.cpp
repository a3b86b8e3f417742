#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "nlc/error.hpp"
#include "nlc/oracle.hpp"
#include "nlc/scenario.hpp"

using namespace nlc;

namespace {

// Two identical velocity samples of a time-independent field.
VelocityHistory steady(const Grid& g, double (*f0)(Coord), double (*f1)(Coord), double t1) {
  VelocityField v(g, 1);
  for (int i = 0; i < g.cells[0]; ++i) {
    for (int j = 0; j < g.cells[1]; ++j) {
      const Coord x = cell_center(g, {i, j});
      v.at(0, 0, g.flat(i, j)) = f0(x);
      if (g.dim == 2) v.at(0, 1, g.flat(i, j)) = f1(x);
    }
  }
  return VelocityHistory(g, 0.0, t1, {v, v});
}

double zero(Coord) { return 0.0; }
double half(Coord) { return 0.5; }
double minus_quarter(Coord) { return -0.25; }
double linear(Coord x) { return 0.7 * x[0]; }
double swirl0(Coord x) { return -x[1]; }
double swirl1(Coord x) { return x[0]; }

}  // namespace

TEST_CASE("characteristics of a constant field are straight lines") {
  const Grid g = Grid::plane({20, 20}, {-2, -2}, {2, 2});
  const VelocityHistory h = steady(g, half, minus_quarter, 1.0);
  const CharacteristicPath p = trace_characteristic(h, 0, 0.0, {0.1, 0.2}, 1.0, 0.01);
  CHECK(p.end()[0] == doctest::Approx(0.6));
  CHECK(p.end()[1] == doctest::Approx(-0.05));
  CHECK(p.divergence_integral == doctest::Approx(0.0).scale(1.0));
  CHECK_FALSE(p.truncated);
  CHECK(p.times.front() == 0.0);
  CHECK(p.times.back() == 1.0);
  const VelocityHistory still = steady(g, zero, zero, 1.0);
  const CharacteristicPath q = trace_characteristic(still, 0, 0.0, {0.3, -0.4}, 1.0, 0.1);
  CHECK(q.end()[0] == 0.3);
  CHECK(q.end()[1] == -0.4);
}

TEST_CASE("characteristics of a linear field grow exponentially") {
  const Grid g = Grid::line(400, -4, 4);
  const VelocityHistory h = steady(g, linear, zero, 1.0);
  const CharacteristicPath p = trace_characteristic(h, 0, 0.0, {0.3, 0.0}, 1.0, 0.01);
  CHECK(p.end()[0] == doctest::Approx(0.3 * std::exp(0.7)).epsilon(1e-9));
  CHECK(p.divergence_integral == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("tracing forward then backward returns to the start") {
  const Grid g = Grid::plane({200, 200}, {-3, -3}, {3, 3});
  const VelocityHistory h = steady(g, swirl0, swirl1, 1.0);
  const Coord x0{0.8, -0.3};
  const CharacteristicPath fwd = trace_characteristic(h, 0, 0.0, x0, 1.0, 0.01);
  const CharacteristicPath back = trace_characteristic(h, 0, 1.0, fwd.end(), 0.0, 0.01);
  CHECK(back.end()[0] == doctest::Approx(x0[0]).epsilon(1e-8));
  CHECK(back.end()[1] == doctest::Approx(x0[1]).epsilon(1e-8));
  CHECK(fwd.divergence_integral == -back.divergence_integral);
}

TEST_CASE("paths leaving the grid are flagged") {
  const Grid g = Grid::line(40, -1, 1);
  const VelocityHistory h = steady(g, half, zero, 1.0);
  CHECK(trace_characteristic(h, 0, 0.0, {0.8, 0.0}, 1.0, 0.05).truncated);
}

TEST_CASE("Lagrangian density of the linear field") {
  const Grid g = Grid::line(2000, -4, 4);
  const VelocityHistory h = steady(g, linear, zero, 1.0);
  DensityField rho0(g, 1);
  auto f = [](double x) { return std::exp(-x * x); };
  for (int i = 0; i < 2000; ++i) rho0.at(0, i) = f(g.center(0, i));
  for (double x : {-0.5, 0.0, 0.4, 1.1}) {
    const double expected = f(x * std::exp(-0.7)) * std::exp(-0.7);
    CHECK(lagrangian_density(rho0, h, 0, 1.0, {x, 0.0}, 0.01) ==
          doctest::Approx(expected).epsilon(1e-5));
  }
  const VelocityHistory still = steady(g, zero, zero, 1.0);
  CHECK(lagrangian_density(rho0, still, 0, 1.0, {g.center(0, 900), 0.0}, 0.1) ==
        rho0.at(0, 900));
}

TEST_CASE("divergence-free transport conserves mass") {
  const Grid g = Grid::plane({100, 100}, {-2, -2}, {2, 2});
  const VelocityHistory h = steady(g, swirl0, swirl1, 1.0);
  DensityField rho0(g, 1);
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      const Coord x = cell_center(g, {i, j});
      rho0.at(0, g.flat(i, j)) = std::exp(-8.0 * ((x[0] - 0.5) * (x[0] - 0.5) + x[1] * x[1]));
    }
  }
  DensityField out(g, 1);
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      out.at(0, g.flat(i, j)) = lagrangian_density(rho0, h, 0, 1.0, cell_center(g, {i, j}), 0.02);
    }
  }
  CHECK(total_mass(out)[0] == doctest::Approx(total_mass(rho0)[0]).epsilon(1e-6));
}

TEST_CASE("Picard iteration on trivial and stationary data") {
  const Grid g = Grid::line(200, -1, 1);
  const Kernel k = build_bump_kernel_1d(0.25).bind(g);
  const DensityField zero(g, 1);
  OracleOptions opt;
  opt.iterations = 2;
  opt.time_samples = 8;
  const OracleResult z = picard_solve(zero, k, VelocityModel::saturating(1), 0.1, opt);
  CHECK(z.gap == 0.0);
  CHECK(l1_norm(z.solution) == 0.0);

  Scenario s = preset("stationary");
  s.grid = Grid::plane({40, 40}, {-0.5, -0.5}, {0.5, 0.5});
  const DensityField rho0 = build_datum(s.datum, s.grid);
  OracleOptions so;
  so.iterations = 2;
  so.time_samples = 4;
  so.convolution = ConvolutionMethod::direct;
  const OracleResult st =
      picard_solve(rho0, make_kernel(s.kernel, s.grid), s.model, 1.0, so);
  CHECK(st.gap <= 1e-12);
  CHECK(l1_distance(st.solution, rho0) <= 1e-12 * l1_norm(rho0));
  CHECK_THROWS_AS(picard_solve(rho0, make_kernel(s.kernel, s.grid), s.model, 0.0, so),
                  ParameterError);
}

TEST_CASE("Picard gaps decrease") {
  const Grid g = Grid::line(400, -1, 1);
  const Kernel k = build_bump_kernel_1d(0.25).bind(g);
  DensityField rho0(g, 1);
  for (int i = 0; i < 400; ++i) {
    const double x = g.center(0, i) / 0.5;
    rho0.at(0, i) = std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0;
  }
  OracleOptions opt;
  opt.iterations = 6;
  opt.time_samples = 16;
  const OracleResult r = picard_solve(rho0, k, VelocityModel::saturating(1), 0.2, opt);
  REQUIRE(r.gap_history.size() == 6);
  for (std::size_t i = 1; i < r.gap_history.size(); ++i) {
    CHECK(r.gap_history[i] <= r.gap_history[i - 1]);
  }
  CHECK(r.trajectory.size() == 17);
  CHECK(r.solution.time() == doctest::Approx(0.2));
}
