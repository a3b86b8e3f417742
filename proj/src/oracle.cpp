#include "nlc/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "nlc/error.hpp"
#include "nlc/scheme.hpp"

namespace nlc {
namespace {

// Index and weight of the lower neighbor among cell centers along one axis.
void locate(const Grid& g, int axis, double x, int& i, double& w) {
  const int n = g.cells[axis];
  const double s = (x - g.origin[axis]) / g.spacing[axis] - 0.5;
  if (s <= 0.0) {
    i = 0;
    w = 0.0;
  } else if (s >= n - 1) {
    i = n - 2;
    w = 1.0;
  } else {
    i = static_cast<int>(std::floor(s));
    w = s - i;
  }
}

}  // namespace

double interpolate(const Grid& g, std::span<const double> values, Coord x) {
  int i = 0;
  double wi = 0.0;
  locate(g, 0, x[0], i, wi);
  if (g.dim == 1) return (1.0 - wi) * values[i] + wi * values[i + 1];
  int j = 0;
  double wj = 0.0;
  locate(g, 1, x[1], j, wj);
  const double a = (1.0 - wj) * values[g.flat(i, j)] + wj * values[g.flat(i, j + 1)];
  const double b = (1.0 - wj) * values[g.flat(i + 1, j)] + wj * values[g.flat(i + 1, j + 1)];
  return (1.0 - wi) * a + wi * b;
}

VelocityHistory::VelocityHistory(const Grid& grid, double start_time, double step,
                                 std::vector<VelocityField> fields)
    : grid_(grid), start_(start_time), step_(step), fields_(std::move(fields)) {
  if (fields_.size() < 2 || !(step_ > 0.0)) {
    throw ParameterError("velocity history needs at least two samples and a positive step");
  }
  const int n0 = grid_.cells[0];
  const int n1 = grid_.cells[1];
  for (const VelocityField& v : fields_) {
    if (!(v.grid() == grid_)) throw ConfigError("velocity sample on a different grid");
    const int m = v.populations();
    std::vector<double> div(static_cast<std::size_t>(m) * grid_.size(), 0.0);
    for (int p = 0; p < m; ++p) {
      double* d = div.data() + static_cast<std::size_t>(p) * grid_.size();
      for (int axis = 0; axis < grid_.dim; ++axis) {
        auto c = v.component(p, axis);
        const double h = grid_.spacing[axis];
        for (int i = 0; i < n0; ++i) {
          for (int j = 0; j < n1; ++j) {
            const int k = axis == 0 ? i : j;
            const int n = axis == 0 ? n0 : n1;
            const int lo = std::max(k - 1, 0);
            const int hi = std::min(k + 1, n - 1);
            const std::size_t a = axis == 0 ? grid_.flat(lo, j) : grid_.flat(i, lo);
            const std::size_t b = axis == 0 ? grid_.flat(hi, j) : grid_.flat(i, hi);
            d[grid_.flat(i, j)] += (c[b] - c[a]) / ((hi - lo) * h);
          }
        }
      }
    }
    divergence_.push_back(std::move(div));
  }
}

void VelocityHistory::sample(int pop, double t, Coord x, Coord& v, double& div) const {
  double s = (t - start_) / step_;
  s = std::clamp(s, 0.0, static_cast<double>(fields_.size() - 1));
  std::size_t k = std::min(static_cast<std::size_t>(s), fields_.size() - 2);
  const double w = s - static_cast<double>(k);
  v = {0.0, 0.0};
  for (int axis = 0; axis < grid_.dim; ++axis) {
    const double a = interpolate(grid_, fields_[k].component(pop, axis), x);
    const double b = interpolate(grid_, fields_[k + 1].component(pop, axis), x);
    v[axis] = (1.0 - w) * a + w * b;
  }
  const std::size_t cells = grid_.size();
  const std::span<const double> da(divergence_[k].data() + pop * cells, cells);
  const std::span<const double> db(divergence_[k + 1].data() + pop * cells, cells);
  div = (1.0 - w) * interpolate(grid_, da, x) + w * interpolate(grid_, db, x);
}

namespace {

struct Endpoint {
  Coord x;
  double divergence;
  bool truncated;
};

bool outside(const Grid& g, const Coord& x) {
  for (int axis = 0; axis < g.dim; ++axis) {
    if (x[axis] < g.lower(axis) || x[axis] > g.upper(axis)) return true;
  }
  return false;
}

Endpoint integrate(const VelocityHistory& history, int pop, double t0, Coord x0, double t1,
                   double max_substep, CharacteristicPath* path) {
  const Grid& g = history.grid();
  Endpoint e{x0, 0.0, outside(g, x0)};
  if (path) {
    path->times.push_back(t0);
    path->positions.push_back(x0);
  }
  const double span = t1 - t0;
  if (span == 0.0) return e;
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(span) / max_substep - 1e-9)));
  const double h = span / steps;
  const int dim = g.dim;
  Coord X = x0;
  double A = 0.0;
  for (int n = 0; n < steps; ++n) {
    const double s = t0 + n * h;
    Coord k1, k2, k3, k4, tmp = X;
    double a1, a2, a3, a4;
    history.sample(pop, s, X, k1, a1);
    for (int d = 0; d < dim; ++d) tmp[d] = X[d] + 0.5 * h * k1[d];
    history.sample(pop, s + 0.5 * h, tmp, k2, a2);
    for (int d = 0; d < dim; ++d) tmp[d] = X[d] + 0.5 * h * k2[d];
    history.sample(pop, s + 0.5 * h, tmp, k3, a3);
    for (int d = 0; d < dim; ++d) tmp[d] = X[d] + h * k3[d];
    history.sample(pop, s + h, tmp, k4, a4);
    for (int d = 0; d < dim; ++d) X[d] += h / 6.0 * (k1[d] + 2.0 * k2[d] + 2.0 * k3[d] + k4[d]);
    A += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    e.truncated = e.truncated || outside(g, X);
    if (path) {
      path->times.push_back(n + 1 == steps ? t1 : t0 + (n + 1) * h);
      path->positions.push_back(X);
    }
  }
  e.x = X;
  e.divergence = A;
  return e;
}

}  // namespace

CharacteristicPath trace_characteristic(const VelocityHistory& history, int pop, double t0,
                                        Coord x0, double t1, double max_substep) {
  if (!(max_substep > 0.0)) throw ParameterError("characteristic substep must be positive");
  CharacteristicPath path;
  const Endpoint e = integrate(history, pop, t0, x0, t1, max_substep, &path);
  path.divergence_integral = e.divergence;
  path.truncated = e.truncated;
  return path;
}

double lagrangian_density(const DensityField& rho0, const VelocityHistory& history, int pop,
                          double t, Coord x, double max_substep) {
  // Integrating from t back to the start gives int_t^start div v = -int_start^t div v.
  const Endpoint e = integrate(history, pop, t, x, history.time(0), max_substep, nullptr);
  return interpolate(rho0.grid(), rho0.population(pop), e.x) * std::exp(e.divergence);
}

OracleResult picard_solve(const DensityField& rho0, const Kernel& kernel,
                          const VelocityModel& model, double horizon,
                          const OracleOptions& options) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw ParameterError("oracle horizon must be positive and finite");
  }
  if (options.iterations < 1) throw ParameterError("oracle needs at least one iteration");
  if (options.substeps < 1) throw ParameterError("oracle needs at least one substep");
  const Grid& g = rho0.grid();
  VelocityAssembler assembler(kernel, model, g, options.convolution);

  int samples = options.time_samples;
  if (samples <= 0) {
    const double dt = cfl_timestep(assembler.assemble(rho0), g, 1.0);
    samples = std::max(8, static_cast<int>(std::ceil(horizon / dt)));
  }
  const double t0 = rho0.time();
  const double step = horizon / samples;
  const double substep = step / options.substeps;

  OracleResult result;
  result.time_samples = samples;
  std::vector<DensityField> iterate(samples + 1, rho0);
  for (int k = 0; k <= samples; ++k) iterate[k].set_time(t0 + k * step);

  const int n0 = g.cells[0];
  const int n1 = g.cells[1];
  for (int it = 0; it < options.iterations; ++it) {
    std::vector<VelocityField> fields;
    fields.reserve(iterate.size());
    for (const DensityField& f : iterate) fields.push_back(assembler.assemble(f));
    const VelocityHistory history(g, t0, step, std::move(fields));

    std::vector<DensityField> next(iterate.size());
    next[0] = rho0;
    double gap = 0.0;
    for (int k = 1; k <= samples; ++k) {
      DensityField f(g, rho0.populations(), t0 + k * step);
      const double t = f.time();
      for (int p = 0; p < rho0.populations(); ++p) {
        auto out = f.population(p);
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n0; ++i) {
          for (int j = 0; j < n1; ++j) {
            const Coord x{g.center(0, i), g.dim == 2 ? g.center(1, j) : 0.0};
            out[g.flat(i, j)] = lagrangian_density(rho0, history, p, t, x, substep);
          }
        }
      }
      if (!f.all_finite()) throw NonFiniteError("oracle iterate became non-finite");
      gap = std::max(gap, l1_distance(f, iterate[k]));
      next[k] = std::move(f);
    }
    iterate = std::move(next);
    result.gap_history.push_back(gap);
    result.gap = gap;
    result.iterations = it + 1;
    if (options.tolerance > 0.0 && gap <= options.tolerance) break;
  }
  result.solution = iterate.back();
  result.trajectory = std::move(iterate);
  return result;
}

}  // namespace nlc
