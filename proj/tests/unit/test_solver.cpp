#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "nlc/error.hpp"
#include "nlc/scenario.hpp"
#include "nlc/solver.hpp"

using namespace nlc;

namespace {

struct Setup {
  Grid grid = Grid::line(200, -1, 1);
  Kernel kernel = build_bump_kernel_1d(0.25).bind(Grid::line(200, -1, 1));
  VelocityModel model = VelocityModel::saturating(1);
  DensityField datum;
  Setup() {
    DatumSpec d;
    d.kind = DatumKind::theta_bumps;
    d.bumps = {{-0.4, 0.4}};
    datum = build_datum(d, grid);
  }
};

}  // namespace

TEST_CASE("zero-length evolution returns the datum unchanged") {
  Setup s;
  const Evolution e = evolve(s.datum, s.kernel, s.model, SchemeConfig{}, 0.0);
  CHECK(l1_distance(e.final_state, s.datum) == 0.0);
  CHECK(e.report.steps_taken == 0);
  CHECK(e.report.times.size() == 1);
}

TEST_CASE("snapshots are hit exactly and never overshot") {
  Setup s;
  RunOptions opt;
  opt.snapshot_times = {0.3, 0.1, 0.2};
  opt.report_every = 3;
  const Evolution e = evolve(s.datum, s.kernel, s.model, SchemeConfig{}, 0.35, opt);
  REQUIRE(e.snapshots.size() == 3);
  CHECK(e.snapshots[0].time() == 0.3);
  CHECK(e.snapshots[1].time() == 0.1);
  CHECK(e.snapshots[2].time() == 0.2);
  CHECK(e.final_state.time() == 0.35);
  for (std::size_t k = 1; k < e.report.times.size(); ++k) {
    CHECK(e.report.times[k] > e.report.times[k - 1]);
    CHECK(e.report.times[k] <= 0.35);
  }
  // Stopping at a snapshot and restarting gives a different step sequence,
  // but the snapshot itself equals a run that ends there.
  const Evolution direct = evolve(s.datum, s.kernel, s.model, SchemeConfig{}, 0.1);
  RunOptions only;
  only.snapshot_times = {0.1};
  const Evolution via = evolve(s.datum, s.kernel, s.model, SchemeConfig{}, 0.35, only);
  CHECK(l1_distance(direct.final_state, via.snapshots[0]) == 0.0);
  CHECK_THROWS_AS(evolve(s.datum, s.kernel, s.model, SchemeConfig{}, 0.05, opt), ParameterError);
}

TEST_CASE("backward evolution runs with decreasing time") {
  Setup s;
  DensityField start = s.datum;
  start.set_time(1.0);
  RunOptions opt;
  opt.snapshot_times = {0.75};
  const Evolution e = evolve(start, s.kernel, s.model, SchemeConfig{}, 0.5, opt);
  CHECK(e.report.direction == -1);
  CHECK(e.final_state.time() == 0.5);
  CHECK(e.snapshots[0].time() == 0.75);
  for (std::size_t k = 1; k < e.report.times.size(); ++k) {
    CHECK(e.report.times[k] < e.report.times[k - 1]);
  }
  // Backward with V is forward with -V.
  RunOptions same;
  same.snapshot_times = {0.25};
  const Evolution f =
      evolve_by(s.datum, s.kernel, s.model.negated(), SchemeConfig{}, 0.5, 1, same);
  CHECK(l1_distance(e.final_state, f.final_state) == 0.0);
}

TEST_CASE("mass is conserved for interior data") {
  Setup s;
  const Evolution e = evolve(s.datum, s.kernel, s.model, SchemeConfig{}, 1.0);
  const double m0 = e.report.mass.front()[0];
  for (const auto& m : e.report.mass) CHECK(std::abs(m[0] - m0) <= 1e-12 * m0);
  CHECK(e.report.boundary_mass_lost == 0.0);
}

TEST_CASE("boundary outflow is accounted") {
  const Grid g = Grid::line(100, 0, 1);
  const Kernel k = build_bump_kernel_1d(0.25).bind(g);
  DensityField rho(g, 1);
  for (int c = 80; c < 100; ++c) rho.at(0, c) = 1.0;
  double lost = 0.0;
  for (const VelocityModel& m : {VelocityModel::saturating(1), VelocityModel::negated_saturating(1)}) {
    const Evolution e = evolve(rho, k, m, SchemeConfig{}, 0.5);
    lost = std::max(lost, e.report.boundary_mass_lost);
    CHECK(total_mass(e.final_state)[0] + e.report.boundary_mass_lost ==
          doctest::Approx(total_mass(rho)[0]).epsilon(1e-13));
    CHECK(e.report.boundary_loss.back() == e.report.boundary_mass_lost);
  }
  // One of the two laws pushes the block through the right boundary.
  CHECK(lost > 0.0);
}

TEST_CASE("non-finite data abort") {
  Setup s;
  DensityField bad = s.datum;
  bad.at(0, 10) = std::nan("");
  CHECK_THROWS_AS(evolve(bad, s.kernel, s.model, SchemeConfig{}, 0.1), NonFiniteError);
}

TEST_CASE("propagation bound") {
  Setup s;
  const Evolution e = evolve(s.datum, s.kernel, s.model, SchemeConfig{}, 0.5);
  CHECK(e.report.velocity_bound ==
        doctest::Approx(s.kernel.grad_sup() * l1_norm(s.datum)));
  const CheckResult ok = check_propagation_bound(e.report, Ball{{0, 0}, 0.4});
  CHECK(ok.pass);
  CHECK(ok.margin >= 0.0);
  // A ball that misses the datum fails at t = 0.
  CHECK_FALSE(check_propagation_bound(e.report, Ball{{0.9, 0}, 0.05}).pass);
  // Zero datum: empty supports pass trivially.
  const DensityField zero(s.grid, 1);
  const Evolution z = evolve(zero, s.kernel, s.model, SchemeConfig{}, 0.5);
  CHECK(check_propagation_bound(z.report, Ball{{0, 0}, 0.1}).pass);
}

TEST_CASE("cluster independence preconditions") {
  const Grid g = Grid::plane({60, 60}, {-3, -3}, {3, 3});
  const Kernel k = build_radial_kernel(0.2, 0.5, g);
  DatumSpec d;
  d.kind = DatumKind::disc_sum;
  d.discs = {{1.0, {-1.5, 0.0}, 0.4}, {1.0, {1.5, 0.0}, 0.4}};
  const DensityField rho = build_datum(d, g);
  RunOptions opt;
  opt.balls = {{{-1.5, 0.0}, 0.5}, {{1.5, 0.0}, 0.5}};
  opt.report_every = 1;
  const Evolution e = evolve(rho, k, VelocityModel::saturating(2), SchemeConfig{}, 0.5, opt);
  const ClusterCheck c = check_cluster_independence(e.report, opt.balls, 0.5, {0.0, 0.5});
  CHECK(c.pass());
  CHECK(c.per_ball.size() == 2);
  // Exactly r1 + r2 + l apart is not enough.
  const std::vector<Ball> touching = {{{-0.75, 0.0}, 0.5}, {{0.75, 0.0}, 0.5}};
  CHECK_THROWS_AS(check_cluster_independence(e.report, touching, 0.5, {0.0, 0.5}), ConfigError);
  // Single ball: per-ball mass is the global mass.
  RunOptions one;
  one.balls = {{{0.0, 0.0}, 2.9}};
  const Evolution f = evolve(rho, k, VelocityModel::saturating(2), SchemeConfig{}, 0.5, one);
  const ClusterCheck single = check_cluster_independence(f.report, one.balls, 0.5, {0.0, 0.5});
  CHECK(single.pass());
  CHECK(f.report.region_mass.back()[0][0] == doctest::Approx(f.report.mass.back()[0]));
}

TEST_CASE("symmetry measurement") {
  const Grid g = Grid::plane({20, 20}, {-1, -1}, {1, 1});
  DatumSpec d;
  d.kind = DatumKind::disc_sum;
  d.discs = {{1.0, {0.0, 0.0}, 0.5}};
  const DensityField disc = build_datum(d, g);
  for (Symmetry s : {Symmetry::swap_axes, Symmetry::reflect_axis0, Symmetry::reflect_axis1,
                     Symmetry::rotate90}) {
    CHECK(check_symmetry(disc, s) == 0.0);
    CHECK(symmetry_from_string(to_string(s)) == s);
  }
  DensityField lopsided = disc;
  lopsided.at(0, g.flat(2, 15)) = 3.0;
  CHECK(check_symmetry(lopsided, Symmetry::rotate90) > 0.0);
  // Rotation by 90 degrees: (x, y) -> (-y, x).
  DensityField point(g, 1);
  point.at(0, g.flat(15, 12)) = 1.0;  // x > 0, y > 0
  const DensityField image = apply_symmetry(point, Symmetry::rotate90);
  // image(x) = point(Rx); the nonzero cell of image sits at R^{-1} of the original.
  const Coord p = cell_center(g, {15, 12});
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      if (image.at(0, g.flat(i, j)) != 0.0) {
        const Coord x = cell_center(g, {i, j});
        CHECK(-x[1] == doctest::Approx(p[0]));
        CHECK(x[0] == doctest::Approx(p[1]));
      }
    }
  }
  const Grid shifted = Grid::plane({20, 20}, {0, 0}, {2, 2});
  CHECK_THROWS_AS(check_symmetry(DensityField(shifted, 1), Symmetry::rotate90), ParameterError);
  const Grid oblong = Grid::plane({20, 10}, {-1, -1}, {1, 1});
  CHECK_THROWS_AS(check_symmetry(DensityField(oblong, 1), Symmetry::swap_axes), ParameterError);
  CHECK_NOTHROW(check_symmetry(DensityField(oblong, 1), Symmetry::reflect_axis1));
}
