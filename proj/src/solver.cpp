#include "nlc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nlc/error.hpp"

namespace nlc {
namespace {

class Recorder {
 public:
  Recorder(RunReport& report, const DensityField& initial, const RunOptions& options)
      : report_(report), initial_(initial), options_(options) {}

  void record(const DensityField& state, double cumulative_loss) {
    report_.times.push_back(state.time());
    report_.mass.push_back(total_mass(state));
    report_.support.push_back(support_bbox(state, options_.support_threshold));
    std::vector<std::vector<double>> balls;
    for (const Ball& b : options_.balls) balls.push_back(region_mass(state, b.center, b.radius));
    report_.region_mass.push_back(std::move(balls));
    report_.deviation_l1.push_back(l1_distance(state, initial_));
    report_.outside_cells.push_back(options_.balls.empty() ? 0 : count_outside(state));
    report_.boundary_loss.push_back(cumulative_loss);
  }

 private:
  long count_outside(const DensityField& state) const {
    const Grid& g = state.grid();
    const double slack = 2.0 * g.max_spacing();
    long count = 0;
    for (int i = 0; i < g.cells[0]; ++i) {
      for (int j = 0; j < g.cells[1]; ++j) {
        const std::size_t c = g.flat(i, j);
        bool occupied = false;
        for (int p = 0; p < state.populations(); ++p) {
          occupied = occupied || std::abs(state.at(p, c)) > options_.support_threshold;
        }
        if (!occupied) continue;
        const double x = g.center(0, i);
        const double y = g.dim == 2 ? g.center(1, j) : 0.0;
        bool inside = false;
        for (const Ball& b : options_.balls) {
          const double r = b.radius + slack;
          const double dx = x - b.center[0];
          const double dy = y - b.center[1];
          inside = inside || dx * dx + dy * dy <= r * r;
        }
        if (!inside) ++count;
      }
    }
    return count;
  }

  RunReport& report_;
  const DensityField& initial_;
  const RunOptions& options_;
};

}  // namespace

Ball bounding_ball(const Box& box) {
  Ball b;
  b.center = {0.5 * (box.lo[0] + box.hi[0]), 0.5 * (box.lo[1] + box.hi[1])};
  b.radius = 0.5 * std::hypot(box.hi[0] - box.lo[0], box.hi[1] - box.lo[1]);
  return b;
}

namespace {

Evolution evolve_impl(const DensityField& initial, const Kernel& kernel,
                      const VelocityModel& model, const SchemeConfig& cfg, int direction,
                      double duration, double t_final, const RunOptions& options) {
  cfg.validate();
  if (!initial.all_finite()) throw NonFiniteError("initial datum contains NaN or Inf");
  const double t0 = initial.time();

  struct Target {
    double elapsed;
    double time;
    int snapshot;  // index into snapshot_times, -1 for the final time only
  };
  std::vector<Target> targets;
  for (std::size_t s = 0; s < options.snapshot_times.size(); ++s) {
    const double ts = options.snapshot_times[s];
    const double elapsed = (ts - t0) * direction;
    if (!(elapsed >= 0.0) || elapsed > duration) {
      throw ParameterError("snapshot time " + std::to_string(ts) +
                           " lies outside the integration interval");
    }
    targets.push_back({elapsed, ts, static_cast<int>(s)});
  }
  std::stable_sort(targets.begin(), targets.end(),
                   [](const Target& a, const Target& b) { return a.elapsed < b.elapsed; });
  targets.push_back({duration, t_final, -1});

  Evolution result;
  result.snapshots.resize(options.snapshot_times.size());
  RunReport& report = result.report;
  report.start_time = t0;
  report.direction = direction;
  report.balls = options.balls;
  report.initial_l1 = l1_norm(initial);
  report.velocity_bound = model.lipschitz() * kernel.grad_sup() * report.initial_l1;
  report.max_spacing = initial.grid().max_spacing();
  report.support_threshold = options.support_threshold;

  Recorder recorder(report, initial, options);
  DensityField state = initial;
  recorder.record(state, 0.0);
  double last_recorded = 0.0;

  VelocityAssembler assembler(kernel, direction > 0 ? model : model.negated(), initial.grid(),
                              cfg.convolution);
  VelocityField velocity;
  double elapsed = 0.0;
  double lost = 0.0;
  for (const Target& target : targets) {
    while (elapsed < target.elapsed) {
      assembler.assemble(state, velocity);
      if (!velocity.all_finite()) throw NonFiniteError("velocity field became non-finite");
      double dt = cfl_timestep(velocity, state.grid(), cfg.cfl);
      bool landing = dt >= target.elapsed - elapsed;
      if (landing) dt = target.elapsed - elapsed;
      DensityField next;
      double outflow = 0.0;
      for (int attempt = 0;; ++attempt) {
        try {
          next = advance(state, velocity, dt, cfg, outflow);
          break;
        } catch (const StepRejected&) {
          if (attempt >= options.max_rejections) throw;
          ++report.rejected_steps;
          dt *= 0.5;
          landing = false;
        }
      }
      elapsed = landing ? target.elapsed : elapsed + dt;
      if (elapsed >= target.elapsed) {
        elapsed = target.elapsed;
        landing = true;
      }
      next.set_time(landing ? target.time : t0 + direction * elapsed);
      if (!next.all_finite()) {
        std::ostringstream msg;
        msg << "density became non-finite at t = " << next.time() << " after "
            << report.steps_taken + 1 << " steps";
        throw NonFiniteError(msg.str());
      }
      state = std::move(next);
      lost += outflow;
      ++report.steps_taken;
      if (options.report_every > 0 && report.steps_taken % options.report_every == 0 &&
          elapsed < target.elapsed) {
        recorder.record(state, lost);
        last_recorded = elapsed;
      }
    }
    if (elapsed > last_recorded) {
      recorder.record(state, lost);
      last_recorded = elapsed;
    }
    if (target.snapshot >= 0) {
      DensityField snap = state;
      snap.set_time(target.time);
      result.snapshots[target.snapshot] = std::move(snap);
    }
  }
  report.boundary_mass_lost = lost;
  result.final_state = std::move(state);
  return result;
}

}  // namespace

Evolution evolve(const DensityField& initial, const Kernel& kernel, const VelocityModel& model,
                 const SchemeConfig& cfg, double t_final, const RunOptions& options) {
  if (!std::isfinite(t_final)) throw ParameterError("t_final must be finite");
  const double t0 = initial.time();
  return evolve_impl(initial, kernel, model, cfg, t_final >= t0 ? 1 : -1, std::abs(t_final - t0),
                     t_final, options);
}

Evolution evolve_by(const DensityField& initial, const Kernel& kernel, const VelocityModel& model,
                    const SchemeConfig& cfg, double duration, int direction,
                    const RunOptions& options) {
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw ParameterError("evolution duration must be finite and nonnegative");
  }
  if (direction != 1 && direction != -1) throw ParameterError("direction must be +1 or -1");
  return evolve_impl(initial, kernel, model, cfg, direction, duration,
                     initial.time() + direction * duration, options);
}

CheckResult check_propagation_bound(const RunReport& report, const Ball& initial_support) {
  CheckResult res;
  res.name = "propagation";
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < report.times.size(); ++k) {
    const double t = std::abs(report.times[k] - report.start_time);
    const double bound =
        initial_support.radius + report.velocity_bound * t + 2.0 * report.max_spacing;
    for (const auto& box : report.support[k]) {
      if (!box) continue;
      double far = 0.0;
      for (double x : {box->lo[0], box->hi[0]}) {
        for (double y : {box->lo[1], box->hi[1]}) {
          far = std::max(far, std::hypot(x - initial_support.center[0],
                                         y - initial_support.center[1]));
        }
      }
      worst = std::min(worst, bound - far);
    }
  }
  if (!std::isfinite(worst)) {
    // Empty support throughout.
    worst = initial_support.radius + 2.0 * report.max_spacing;
  }
  res.margin = worst;
  res.pass = worst >= 0.0;
  std::ostringstream d;
  d << "W = " << report.velocity_bound << ", worst slack " << worst;
  res.detail = d.str();
  return res;
}

bool ClusterCheck::pass() const {
  return containment.pass &&
         std::all_of(per_ball.begin(), per_ball.end(), [](const CheckResult& r) { return r.pass; });
}

ClusterCheck check_cluster_independence(const RunReport& report, const std::vector<Ball>& balls,
                                        double ell, std::pair<double, double> t_range) {
  for (std::size_t h = 0; h < balls.size(); ++h) {
    for (std::size_t j = h + 1; j < balls.size(); ++j) {
      const double d = std::hypot(balls[h].center[0] - balls[j].center[0],
                                  balls[h].center[1] - balls[j].center[1]);
      if (!(d > balls[h].radius + balls[j].radius + ell)) {
        throw ConfigError("balls " + std::to_string(h) + " and " + std::to_string(j) +
                          " are not separated by more than the interaction radius");
      }
    }
  }
  if (balls.size() != report.balls.size()) {
    throw ConfigError("cluster balls differ from the balls tracked in the run");
  }
  for (std::size_t h = 0; h < balls.size(); ++h) {
    if (balls[h].center != report.balls[h].center || balls[h].radius != report.balls[h].radius) {
      throw ConfigError("cluster balls differ from the balls tracked in the run");
    }
  }
  const double lo = std::min(t_range.first, t_range.second);
  const double hi = std::max(t_range.first, t_range.second);
  std::vector<std::size_t> records;
  for (std::size_t k = 0; k < report.times.size(); ++k) {
    if (report.times[k] >= lo && report.times[k] <= hi) records.push_back(k);
  }

  ClusterCheck out;
  double total = 0.0;
  if (!report.mass.empty()) {
    for (double m : report.mass.front()) total += std::abs(m);
  }
  for (std::size_t h = 0; h < balls.size(); ++h) {
    CheckResult r;
    r.name = "ball " + std::to_string(h);
    double worst = 0.0;
    if (!records.empty()) {
      const auto& ref = report.region_mass[records.front()][h];
      for (std::size_t k : records) {
        for (std::size_t p = 0; p < ref.size(); ++p) {
          const double scale = std::abs(ref[p]) > 0.0 ? std::abs(ref[p]) : std::max(total, 1.0);
          worst = std::max(worst, std::abs(report.region_mass[k][h][p] - ref[p]) / scale);
        }
      }
    }
    r.margin = kClusterMassTolerance - worst;
    r.pass = worst <= kClusterMassTolerance;
    std::ostringstream d;
    d << "max relative mass drift " << worst;
    r.detail = d.str();
    out.per_ball.push_back(std::move(r));
  }
  long outside = 0;
  for (std::size_t k : records) outside = std::max(outside, report.outside_cells[k]);
  out.containment.name = "containment";
  out.containment.pass = outside == 0;
  out.containment.margin = -static_cast<double>(outside);
  out.containment.detail = std::to_string(outside) + " support cells outside the balls";
  return out;
}

std::string_view to_string(Symmetry symmetry) {
  switch (symmetry) {
    case Symmetry::swap_axes: return "swap_axes";
    case Symmetry::reflect_axis0: return "reflect_axis0";
    case Symmetry::reflect_axis1: return "reflect_axis1";
    case Symmetry::rotate90: return "rotate90";
  }
  return "?";
}

Symmetry symmetry_from_string(std::string_view name) {
  if (name == "swap_axes") return Symmetry::swap_axes;
  if (name == "reflect_axis0") return Symmetry::reflect_axis0;
  if (name == "reflect_axis1") return Symmetry::reflect_axis1;
  if (name == "rotate90") return Symmetry::rotate90;
  throw ParameterError("unknown symmetry '" + std::string(name) + "'");
}

namespace {

bool centered(const Grid& g, int axis) {
  const double tol = 1e-12 * std::max(1.0, g.half_width(axis));
  return std::abs(g.lower(axis) + g.upper(axis)) <= tol;
}

bool square(const Grid& g) {
  return g.dim == 2 && g.cells[0] == g.cells[1] &&
         std::abs(g.spacing[0] - g.spacing[1]) <= 1e-14 * g.spacing[0] &&
         std::abs(g.origin[0] - g.origin[1]) <= 1e-12 * std::max(1.0, std::abs(g.origin[0]));
}

}  // namespace

DensityField apply_symmetry(const DensityField& field, Symmetry symmetry) {
  const Grid& g = field.grid();
  bool ok = false;
  switch (symmetry) {
    case Symmetry::swap_axes: ok = square(g); break;
    case Symmetry::reflect_axis0: ok = centered(g, 0); break;
    case Symmetry::reflect_axis1: ok = g.dim == 2 && centered(g, 1); break;
    case Symmetry::rotate90: ok = square(g) && centered(g, 0) && centered(g, 1); break;
  }
  if (!ok) {
    throw ParameterError("symmetry " + std::string(to_string(symmetry)) +
                         " does not map this grid's cell centers onto themselves");
  }
  DensityField out(g, field.populations(), field.time());
  const int n0 = g.cells[0];
  const int n1 = g.cells[1];
  for (int p = 0; p < field.populations(); ++p) {
    for (int i = 0; i < n0; ++i) {
      for (int j = 0; j < n1; ++j) {
        int si = i;
        int sj = j;
        switch (symmetry) {
          case Symmetry::swap_axes: si = j; sj = i; break;
          case Symmetry::reflect_axis0: si = n0 - 1 - i; break;
          case Symmetry::reflect_axis1: sj = n1 - 1 - j; break;
          // R (x, y) = (-y, x)
          case Symmetry::rotate90: si = n1 - 1 - j; sj = i; break;
        }
        out.at(p, g.flat(i, j)) = field.at(p, g.flat(si, sj));
      }
    }
  }
  return out;
}

double check_symmetry(const DensityField& field, Symmetry symmetry) {
  const DensityField image = apply_symmetry(field, symmetry);
  double worst = 0.0;
  auto a = field.values();
  auto b = image.values();
  for (std::size_t c = 0; c < a.size(); ++c) worst = std::max(worst, std::abs(a[c] - b[c]));
  return worst;
}

}  // namespace nlc
