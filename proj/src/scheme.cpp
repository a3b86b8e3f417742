#include "nlc/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "nlc/error.hpp"

namespace nlc {
namespace {

struct LineResult {
  double courant = 0.0;    // worst Courant number seen on the line
  double left_flux = 0.0;  // flux through the lower boundary face, positive along the axis
  double right_flux = 0.0;
};

LineResult upwind_line(const double* rho, const double* v, double* out, int n, double lam,
                       std::vector<double>& vhat) {
  vhat.resize(static_cast<std::size_t>(n) + 1);
  vhat[0] = v[0];
  vhat[n] = v[n - 1];
  for (int k = 1; k < n; ++k) vhat[k] = 0.5 * (v[k - 1] + v[k]);

  LineResult res;
  for (int k = 0; k <= n; ++k) res.courant = std::max(res.courant, lam * std::abs(vhat[k]));
  for (int k = 0; k < n; ++k) {
    const double left = vhat[k];
    const double right = vhat[k + 1];
    const double outgoing = lam * (std::max(right, 0.0) + std::max(-left, 0.0));
    res.courant = std::max(res.courant, outgoing);
    const double rl = k > 0 ? rho[k - 1] : rho[0];
    const double rr = k + 1 < n ? rho[k + 1] : rho[n - 1];
    const double incoming = lam * std::max(left, 0.0) * rl + lam * std::max(-right, 0.0) * rr;
    out[k] = rho[k] * (1.0 - outgoing) + incoming;
  }
  res.left_flux = vhat[0] * rho[0];
  res.right_flux = vhat[n] * rho[n - 1];
  return res;
}

LineResult lax_friedrichs_line(const double* rho, const double* v, double* out, int n,
                               double lam) {
  LineResult res;
  for (int k = 0; k < n; ++k) res.courant = std::max(res.courant, lam * std::abs(v[k]));
  for (int k = 0; k < n; ++k) {
    const int l = k > 0 ? k - 1 : 0;
    const int r = k + 1 < n ? k + 1 : n - 1;
    out[k] = 0.5 * ((1.0 + lam * v[l]) * rho[l] + (1.0 - lam * v[r]) * rho[r]);
  }
  res.left_flux = v[0] * rho[0];
  res.right_flux = v[n - 1] * rho[n - 1];
  return res;
}

DensityField split_step(const DensityField& field, const VelocityField& v, double dt,
                        const SchemeConfig& cfg, bool axis0_first, double& outflow) {
  if (field.grid().dim == 1) return sweep_axis(field, v, 0, dt, cfg, outflow);
  double a = 0.0;
  double b = 0.0;
  const int first = axis0_first ? 0 : 1;
  DensityField half = sweep_axis(field, v, first, dt, cfg, a);
  DensityField full = sweep_axis(half, v, 1 - first, dt, cfg, b);
  outflow = a + b;
  return full;
}

}  // namespace

std::string_view to_string(Flux flux) {
  return flux == Flux::upwind ? "upwind" : "lax_friedrichs";
}

Flux flux_from_string(std::string_view name) {
  if (name == "upwind") return Flux::upwind;
  if (name == "lax_friedrichs") return Flux::lax_friedrichs;
  throw ParameterError("unknown flux '" + std::string(name) + "'");
}

std::string_view to_string(Splitting splitting) {
  return splitting == Splitting::sequential ? "sequential" : "symmetric";
}

Splitting splitting_from_string(std::string_view name) {
  if (name == "sequential") return Splitting::sequential;
  if (name == "symmetric") return Splitting::symmetric;
  throw ParameterError("unknown splitting '" + std::string(name) + "'");
}

void SchemeConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) {
    throw ParameterError("scheme.cfl must lie in (0, 1], got " + std::to_string(cfl));
  }
}

double cfl_timestep(const VelocityField& v, const Grid& grid, double cfl) {
  double dt = cfl * grid.min_spacing();
  bool moving = false;
  double best = 0.0;
  for (int a = 0; a < grid.dim; ++a) {
    const double vmax = v.max_abs(a);
    if (vmax < kRestingSpeed) continue;
    const double candidate = grid.spacing[a] / vmax;
    best = moving ? std::min(best, candidate) : candidate;
    moving = true;
  }
  if (moving) dt = cfl * best;
  return dt;
}

DensityField sweep_axis(const DensityField& field, const VelocityField& v, int axis, double dt,
                        const SchemeConfig& cfg, double& outflow) {
  const Grid& g = field.grid();
  if (!(v.grid() == g) || v.populations() != field.populations()) {
    throw ConfigError("velocity field does not match the density field");
  }
  if (axis < 0 || axis >= g.dim) throw ParameterError("sweep axis out of range");
  if (!(dt > 0.0)) throw ParameterError("time step must be positive");

  const int n = g.cells[axis];
  const int lines = g.cells[1 - axis];
  const std::size_t stride = axis == 0 ? static_cast<std::size_t>(g.cells[1]) : 1;
  const std::size_t line_stride = axis == 0 ? 1 : static_cast<std::size_t>(g.cells[1]);
  const double lam = dt / g.spacing[axis];
  const double face = g.dim == 2 ? g.spacing[1 - axis] : 1.0;

  DensityField next(g, field.populations(), field.time());
  double courant = 0.0;
  double flux_balance = 0.0;
  for (int p = 0; p < field.populations(); ++p) {
    const double* rho = field.population(p).data();
    const double* vel = v.component(p, axis).data();
    double* dst = next.population(p).data();
#pragma omp parallel reduction(max : courant) reduction(+ : flux_balance)
    {
      std::vector<double> rl(n), vl(n), ol(n), vhat;
#pragma omp for schedule(static)
      for (int line = 0; line < lines; ++line) {
        const std::size_t base = line * line_stride;
        for (int k = 0; k < n; ++k) {
          rl[k] = rho[base + k * stride];
          vl[k] = vel[base + k * stride];
        }
        const LineResult res = cfg.flux == Flux::upwind
                                   ? upwind_line(rl.data(), vl.data(), ol.data(), n, lam, vhat)
                                   : lax_friedrichs_line(rl.data(), vl.data(), ol.data(), n, lam);
        courant = std::max(courant, res.courant);
        flux_balance += res.right_flux - res.left_flux;
        for (int k = 0; k < n; ++k) dst[base + k * stride] = ol[k];
      }
    }
  }
  if (courant > 1.0) {
    throw StepRejected("CFL violation on axis " + std::to_string(axis) +
                           ": Courant number " + std::to_string(courant),
                       courant);
  }
  outflow = flux_balance * dt * face;
  return next;
}

DensityField sweep_axis(const DensityField& field, const VelocityField& v, int axis, double dt,
                        const SchemeConfig& cfg) {
  double outflow = 0.0;
  return sweep_axis(field, v, axis, dt, cfg, outflow);
}

DensityField advance(const DensityField& field, const VelocityField& v, double dt,
                     const SchemeConfig& cfg, double& outflow) {
  DensityField next;
  if (cfg.splitting == Splitting::symmetric && field.grid().dim == 2) {
    double a = 0.0;
    double b = 0.0;
    DensityField xy = split_step(field, v, dt, cfg, true, a);
    DensityField yx = split_step(field, v, dt, cfg, false, b);
    auto out = xy.values();
    auto other = yx.values();
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = 0.5 * (out[c] + other[c]);
    outflow = 0.5 * (a + b);
    next = std::move(xy);
  } else {
    next = split_step(field, v, dt, cfg, true, outflow);
  }
  next.set_time(field.time() + dt);
  return next;
}

DensityField step(const DensityField& field, const Kernel& kernel, const VelocityModel& model,
                  double dt, const SchemeConfig& cfg) {
  cfg.validate();
  const VelocityField v = assemble_velocity(field, kernel, model, cfg.convolution);
  double outflow = 0.0;
  return advance(field, v, dt, cfg, outflow);
}

}  // namespace nlc
