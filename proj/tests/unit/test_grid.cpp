#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "nlc/error.hpp"
#include "nlc/grid.hpp"
#include "nlc/scenario.hpp"

using namespace nlc;

TEST_CASE("cell centers") {
  const Grid a = Grid::from_spacing(1, {6, 1}, {-3.0, 0.0}, {1.0, 1.0});
  CHECK(cell_center(a, {0, 0})[0] == -2.5);
  const Grid b = Grid::from_spacing(1, {4, 1}, {0.0, 0.0}, {0.5, 1.0});
  CHECK(cell_center(b, {3, 0})[0] == 1.75);
  const Grid c = Grid::from_spacing(2, {4, 4}, {-1.0, -1.0}, {1.0, 1.0});
  const Coord x = cell_center(c, {0, 1});
  CHECK(x[0] == -0.5);
  CHECK(x[1] == 0.5);
  CHECK_THROWS_AS(cell_center(c, {4, 0}), BoundsError);
  CHECK_THROWS_AS(cell_center(c, {0, -1}), BoundsError);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid::line(3, 0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(Grid::line(10, 1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(Grid::from_spacing(3, {4, 4}, {0, 0}, {1, 1}), ParameterError);
  const Grid g = Grid::plane({8, 4}, {-1.0, 0.0}, {1.0, 2.0});
  CHECK(g.size() == 32);
  CHECK(g.cell_volume() == doctest::Approx(0.25 * 0.5));
  CHECK(g.flat(2, 3) == 11);
}

TEST_CASE("total mass of a zero field is zero for every population") {
  const DensityField f(Grid::plane({10, 10}, {0, 0}, {1, 1}), 3);
  for (double m : total_mass(f)) CHECK(m == 0.0);
}

TEST_CASE("total mass of the three-bump signal matches its exact integral") {
  // Exact integral of the three theta bumps: sum over (a, b) of
  // int_a^b (1 - x/a)^2 (1 - x/b)^4 dx, evaluated in rational arithmetic.
  const double exact = 20543.0 / 26880.0;
  DatumSpec spec;
  spec.kind = DatumKind::theta_bumps;
  spec.bumps = {{-0.8, -0.2}, {-0.4, 0.4}, {0.2, 0.8}};
  // Independent check of the rational value by Simpson quadrature.
  double quad = 0.0;
  for (const auto& [a, b] : spec.bumps) {
    quad += testing::simpson([&](double x) { return theta_bump(x, a, b); }, a, b, 2000);
  }
  CHECK(quad == doctest::Approx(exact).epsilon(1e-12));
  const DensityField f = build_datum(spec, Grid::line(100000, -1.0, 1.0));
  CHECK(total_mass(f)[0] == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("disc datum mass converges to the analytic disc areas") {
  DatumSpec spec;
  spec.kind = DatumKind::disc_sum;
  spec.discs = {{1.0, {-2, 2}, 0.2},   {1.0, {-1.8, -1.5}, 0.8}, {0.5, {2, 2}, 0.5},
                {0.75, {1, 1.5}, 0.5}, {1.0, {2, 1}, 0.25},     {0.5, {1, -1.5}, 0.6},
                {2.5, {2, -2}, 0.3}};
  double exact = 0.0;
  for (const Disc& d : spec.discs) exact += std::numbers::pi * d.height * d.radius * d.radius;
  CHECK(exact == doctest::Approx(4.586725274241098).epsilon(1e-14));
  const double coarse =
      std::abs(total_mass(build_datum(spec, Grid::plane({300, 300}, {-3, -3}, {3, 3})))[0] - exact);
  const double fine =
      std::abs(total_mass(build_datum(spec, Grid::plane({1500, 1500}, {-3, -3}, {3, 3})))[0] - exact);
  CHECK(fine < coarse);
  CHECK(fine < 2e-3 * exact);
}

TEST_CASE("region mass") {
  const Grid g = Grid::plane({20, 20}, {-1, -1}, {1, 1});
  DensityField f(g, 1);
  for (double& v : f.values()) v = 1.0;
  CHECK_THROWS_AS(region_mass(f, {0, 0}, 0.0), ParameterError);
  CHECK(region_mass(f, {0, 0}, 10.0)[0] == doctest::Approx(total_mass(f)[0]));
  // Ball of radius 0.06 around a cell center holds exactly that cell.
  const Coord c = cell_center(g, {3, 7});
  CHECK(region_mass(f, c, 0.06)[0] == doctest::Approx(g.cell_volume()));
}

TEST_CASE("support boxes") {
  const Grid g = Grid::plane({10, 10}, {0, 0}, {1, 1});
  DensityField f(g, 2);
  f.at(0, g.flat(2, 5)) = 1.0;
  const auto boxes = support_bbox(f, 0.0);
  REQUIRE(boxes[0].has_value());
  CHECK(boxes[0]->lo[0] == doctest::Approx(0.2));
  CHECK(boxes[0]->hi[0] == doctest::Approx(0.3));
  CHECK(boxes[0]->lo[1] == doctest::Approx(0.5));
  CHECK(boxes[0]->hi[1] == doctest::Approx(0.6));
  CHECK_FALSE(boxes[1].has_value());
  CHECK_THROWS_AS(support_bbox(f, -1.0), ParameterError);
}

TEST_CASE("L1 norm uses the Euclidean norm across populations") {
  const Grid g = Grid::line(4, 0.0, 4.0);
  DensityField f(g, 2);
  f.at(0, 1) = 3.0;
  f.at(1, 1) = 4.0;
  CHECK(l1_norm(f) == doctest::Approx(5.0));
  DensityField h(g, 2);
  CHECK(l1_distance(f, h) == doctest::Approx(5.0));
  DensityField other(Grid::line(5, 0.0, 5.0), 2);
  CHECK_THROWS_AS(l1_distance(f, other), ConfigError);
}

TEST_CASE("finiteness") {
  DensityField f(Grid::line(4, 0.0, 1.0), 1);
  CHECK(f.all_finite());
  f.at(0, 2) = std::nan("");
  CHECK_FALSE(f.all_finite());
}
