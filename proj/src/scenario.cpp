#include "nlc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "nlc/error.hpp"
#include "nlc/nlcd.hpp"

namespace nlc {

std::string_view to_string(Resolution resolution) {
  return resolution == Resolution::full ? "full" : "desk";
}

Resolution resolution_from_string(std::string_view name) {
  if (name == "desk") return Resolution::desk;
  if (name == "full") return Resolution::full;
  throw ParameterError("unknown resolution '" + std::string(name) + "' (expected desk or full)");
}

namespace {

// Rethrows library errors from a reader with the config line attached.
template <typename F>
auto at_line(const Config& cfg, std::string_view key, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), cfg.has(key) ? cfg.line_of(key) : 0);
  }
}

std::vector<double> exact_count(const Config& cfg, std::string_view key, std::size_t count) {
  std::vector<double> v = cfg.get_doubles(key);
  if (v.size() != count) {
    throw ParseError("'" + std::string(key) + "' expects " + std::to_string(count) +
                         " values, got " + std::to_string(v.size()),
                     cfg.line_of(key));
  }
  return v;
}

int as_count(const Config& cfg, std::string_view key, double value) {
  if (!(value >= 1.0) || value > 1e9 || std::floor(value) != value) {
    throw ParseError("'" + std::string(key) + "' expects positive integers", cfg.line_of(key));
  }
  return static_cast<int>(value);
}

}  // namespace

Grid read_grid(const Config& cfg, Resolution resolution) {
  const int dim = cfg.get_int("grid.dim");
  if (dim != 1 && dim != 2) {
    throw ParseError("grid.dim must be 1 or 2", cfg.line_of("grid.dim"));
  }
  std::string cells_key = "grid.cells";
  if (resolution == Resolution::full) {
    if (!cfg.has("grid.cells.full")) {
      throw ConfigError("configuration has no grid.cells.full for full resolution");
    }
    cells_key = "grid.cells.full";
  }
  const auto n = exact_count(cfg, cells_key, dim);
  MultiIndex cells{1, 1};
  for (int a = 0; a < dim; ++a) cells[a] = as_count(cfg, cells_key, n[a]);

  const bool bounds = cfg.has("grid.lower") || cfg.has("grid.upper");
  const bool spacing = cfg.has("grid.origin") || cfg.has("grid.spacing");
  if (bounds == spacing) {
    throw ParseError("grid needs either grid.lower/grid.upper or grid.origin/grid.spacing", 0);
  }
  if (bounds) {
    const auto lo = exact_count(cfg, "grid.lower", dim);
    const auto hi = exact_count(cfg, "grid.upper", dim);
    return at_line(cfg, "grid.lower", [&] {
      for (int a = 0; a < dim; ++a) {
        if (!(hi[a] > lo[a])) throw ParameterError("grid.upper must exceed grid.lower");
      }
      return dim == 1 ? Grid::line(cells[0], lo[0], hi[0])
                      : Grid::plane(cells, {lo[0], lo[1]}, {hi[0], hi[1]});
    });
  }
  const auto o = exact_count(cfg, "grid.origin", dim);
  const auto h = exact_count(cfg, "grid.spacing", dim);
  return at_line(cfg, "grid.spacing", [&] {
    return Grid::from_spacing(dim, cells, {o[0], dim == 2 ? o[1] : 0.0},
                              {h[0], dim == 2 ? h[1] : 1.0});
  });
}

KernelSpec read_kernel(const Config& cfg) {
  KernelSpec spec;
  spec.family = at_line(cfg, "kernel.family", [&] {
    return kernel_family_from_string(cfg.get_string("kernel.family", "radial_poly"));
  });
  switch (spec.family) {
    case KernelFamily::radial_poly:
      spec.inner_radius = cfg.get_double("kernel.inner_radius");
      spec.outer_radius = cfg.get_double("kernel.outer_radius");
      if (!(spec.inner_radius >= 0.0 && spec.inner_radius < spec.outer_radius)) {
        throw ParseError("radial kernel needs 0 <= inner_radius < outer_radius",
                         cfg.line_of("kernel.outer_radius"));
      }
      break;
    case KernelFamily::bump_1d:
      spec.inner_radius = 0.0;
      spec.outer_radius = cfg.get_double("kernel.outer_radius");
      if (!(spec.outer_radius > 0.0)) {
        throw ParseError("kernel.outer_radius must be positive",
                         cfg.line_of("kernel.outer_radius"));
      }
      break;
    case KernelFamily::cosine_2d:
      spec.inner_radius = 0.0;
      spec.outer_radius = 1.0;
      break;
  }
  return spec;
}

VelocityModel read_velocity(const Config& cfg, int dim) {
  const VelocityVariant variant = at_line(cfg, "velocity.variant", [&] {
    return velocity_variant_from_string(cfg.get_string("velocity.variant", "saturating"));
  });
  if (cfg.has("velocity.rotation") && variant != VelocityVariant::rotated_saturating) {
    throw ParseError("velocity.rotation only applies to rotated_saturating",
                     cfg.line_of("velocity.rotation"));
  }
  VelocityModel model = VelocityModel::saturating(dim);
  switch (variant) {
    case VelocityVariant::saturating: break;
    case VelocityVariant::negated_saturating: model = VelocityModel::negated_saturating(dim); break;
    case VelocityVariant::identity: model = VelocityModel::identity(dim); break;
    case VelocityVariant::rotated_saturating: {
      const auto r = exact_count(cfg, "velocity.rotation", static_cast<std::size_t>(dim * dim));
      model = at_line(cfg, "velocity.rotation", [&] { return VelocityModel::rotated_saturating(r); });
      break;
    }
  }
  const double sign = cfg.get_double("velocity.sign", 1.0);
  return at_line(cfg, "velocity.sign", [&] { return model.with_sign(sign); });
}

SchemeConfig read_scheme(const Config& cfg) {
  SchemeConfig s;
  s.flux = at_line(cfg, "scheme.flux",
                   [&] { return flux_from_string(cfg.get_string("scheme.flux", "upwind")); });
  s.cfl = cfg.get_double("scheme.cfl", 0.9);
  s.splitting = at_line(cfg, "scheme.splitting", [&] {
    return splitting_from_string(cfg.get_string("scheme.splitting", "sequential"));
  });
  s.convolution = at_line(cfg, "scheme.convolution", [&] {
    return convolution_method_from_string(cfg.get_string("scheme.convolution", "auto"));
  });
  at_line(cfg, "scheme.cfl", [&] {
    s.validate();
    return 0;
  });
  return s;
}

void write_grid(Config& cfg, const Grid& grid) {
  cfg.set("grid.dim", std::to_string(grid.dim));
  std::vector<double> cells, origin, spacing;
  for (int a = 0; a < grid.dim; ++a) {
    cells.push_back(grid.cells[a]);
    origin.push_back(grid.origin[a]);
    spacing.push_back(grid.spacing[a]);
  }
  cfg.set("grid.cells", format_doubles(cells));
  cfg.set("grid.origin", format_doubles(origin));
  cfg.set("grid.spacing", format_doubles(spacing));
}

void write_kernel(Config& cfg, const KernelSpec& kernel) {
  cfg.set("kernel.family", std::string(to_string(kernel.family)));
  if (kernel.family == KernelFamily::radial_poly) {
    cfg.set("kernel.inner_radius", format_double(kernel.inner_radius));
  }
  if (kernel.family != KernelFamily::cosine_2d) {
    cfg.set("kernel.outer_radius", format_double(kernel.outer_radius));
  }
}

void write_velocity(Config& cfg, const VelocityModel& model) {
  cfg.set("velocity.variant", std::string(to_string(model.variant())));
  if (model.variant() == VelocityVariant::rotated_saturating) {
    cfg.set("velocity.rotation", format_doubles(model.rotation()));
  }
  const double base = model.variant() == VelocityVariant::negated_saturating ? -1.0 : 1.0;
  cfg.set("velocity.sign", format_double(model.sign() * base));
}

void write_scheme(Config& cfg, const SchemeConfig& scheme) {
  cfg.set("scheme.flux", std::string(to_string(scheme.flux)));
  cfg.set("scheme.cfl", format_double(scheme.cfl));
  cfg.set("scheme.splitting", std::string(to_string(scheme.splitting)));
  cfg.set("scheme.convolution", std::string(to_string(scheme.convolution)));
}

const std::set<std::string, std::less<>>& section_keys() {
  static const std::set<std::string, std::less<>> keys = {
      "grid.dim",         "grid.cells",        "grid.cells.full",  "grid.lower",
      "grid.upper",       "grid.origin",       "grid.spacing",      "kernel.family",
      "kernel.inner_radius", "kernel.outer_radius", "velocity.variant", "velocity.rotation",
      "velocity.sign",    "scheme.flux",       "scheme.cfl",        "scheme.splitting",
      "scheme.convolution"};
  return keys;
}

std::string_view to_string(DatumKind kind) {
  switch (kind) {
    case DatumKind::disc_sum: return "disc_sum";
    case DatumKind::sine_box: return "sine_box";
    case DatumKind::theta_bumps: return "theta_bumps";
    case DatumKind::floor_rings: return "floor_rings";
    case DatumKind::quadrants: return "quadrants";
    case DatumKind::file: return "file";
  }
  return "?";
}

DatumKind datum_kind_from_string(std::string_view name) {
  for (DatumKind k : {DatumKind::disc_sum, DatumKind::sine_box, DatumKind::theta_bumps,
                      DatumKind::floor_rings, DatumKind::quadrants, DatumKind::file}) {
    if (to_string(k) == name) return k;
  }
  throw ParameterError("unknown datum type '" + std::string(name) + "'");
}

double theta_bump(double x, double a, double b) {
  if (x < a || x > b) return 0.0;
  const double u = 1.0 - x / a;
  const double v = 1.0 - x / b;
  return u * u * v * v * v * v;
}

double datum_value(const DatumSpec& spec, Coord x) {
  switch (spec.kind) {
    case DatumKind::disc_sum: {
      double sum = 0.0;
      for (const Disc& d : spec.discs) {
        const double dx = x[0] - d.center[0];
        const double dy = x[1] - d.center[1];
        if (dx * dx + dy * dy < d.radius * d.radius) sum += d.height;
      }
      return sum;
    }
    case DatumKind::sine_box:
      if (std::abs(x[0]) > spec.half_width || std::abs(x[1]) > spec.half_width) return 0.0;
      return spec.base + std::sin(spec.frequency * x[1]);
    case DatumKind::theta_bumps: {
      double sum = 0.0;
      for (const auto& [a, b] : spec.bumps) sum += theta_bump(x[0], a, b);
      return sum;
    }
    case DatumKind::floor_rings: {
      if (x[0] * x[0] + x[1] * x[1] >= spec.radius * spec.radius) return 0.0;
      const double s0 = std::sin(x[0]);
      const double s1 = std::sin(x[1]);
      return std::floor(4.0 * s0 * s0) + std::floor(3.0 * s1 * s1);
    }
    case DatumKind::quadrants: {
      const double R = spec.radius;
      const bool in_disc = x[0] * x[0] + x[1] * x[1] < R * R;
      const auto& h = spec.heights;
      double sum = 0.0;
      if (x[0] > 0.0 && x[1] > 0.0 && in_disc) sum += h[0];
      if (x[0] >= -R && x[0] <= 0.0 && x[1] >= 0.0 && x[1] <= R) sum += h[1];
      if (x[0] < 0.0 && x[1] < 0.0 && in_disc) sum += h[2];
      if (x[0] >= 0.0 && x[0] <= R && x[1] >= -R && x[1] <= 0.0) sum += h[3];
      return sum;
    }
    case DatumKind::file: break;
  }
  throw ParameterError("file data have no pointwise formula");
}

DensityField build_datum(const DatumSpec& spec, const Grid& grid, double time) {
  if (spec.kind == DatumKind::file) {
    DensityField f = read_nlcd(spec.path);
    if (!(f.grid() == grid)) {
      throw ConfigError("datum file " + spec.path.string() + " is on a different grid");
    }
    if (!f.all_finite()) throw NonFiniteError("datum file contains NaN or Inf");
    f.set_time(time);
    return f;
  }
  const bool planar = spec.kind == DatumKind::sine_box || spec.kind == DatumKind::floor_rings ||
                      spec.kind == DatumKind::quadrants;
  if (planar && grid.dim != 2) {
    throw ConfigError("datum " + std::string(to_string(spec.kind)) + " needs a 2D grid");
  }
  if (spec.kind == DatumKind::theta_bumps && grid.dim != 1) {
    throw ConfigError("datum theta_bumps needs a 1D grid");
  }
  DensityField f(grid, 1, time);
  auto rho = f.population(0);
  for (int i = 0; i < grid.cells[0]; ++i) {
    for (int j = 0; j < grid.cells[1]; ++j) {
      const Coord x{grid.center(0, i), grid.dim == 2 ? grid.center(1, j) : 0.0};
      rho[grid.flat(i, j)] = datum_value(spec, x);
    }
  }
  return f;
}

namespace {

DatumSpec read_datum(const Config& cfg, int dim) {
  DatumSpec d;
  d.kind = at_line(cfg, "datum.type",
                   [&] { return datum_kind_from_string(cfg.get_string("datum.type")); });
  auto allowed = [&](std::initializer_list<const char*> keys) {
    static const char* all[] = {"datum.discs",      "datum.bumps", "datum.radius",
                                "datum.heights",    "datum.half_width", "datum.base",
                                "datum.frequency",  "datum.path"};
    for (const char* k : all) {
      if (!cfg.has(k)) continue;
      if (std::find_if(keys.begin(), keys.end(), [&](const char* a) {
            return std::string_view(a) == k;
          }) == keys.end()) {
        throw ParseError("'" + std::string(k) + "' does not apply to datum type " +
                             std::string(to_string(d.kind)),
                         cfg.line_of(k));
      }
    }
  };
  switch (d.kind) {
    case DatumKind::disc_sum:
      allowed({"datum.discs"});
      for (const auto& g : cfg.get_groups("datum.discs")) {
        if (g.size() != static_cast<std::size_t>(dim + 2) || !(g.back() > 0.0)) {
          throw ParseError("each disc is 'height center radius' with a positive radius",
                           cfg.line_of("datum.discs"));
        }
        Disc disc;
        disc.height = g[0];
        disc.center = {g[1], dim == 2 ? g[2] : 0.0};
        disc.radius = g.back();
        d.discs.push_back(disc);
      }
      break;
    case DatumKind::sine_box:
      allowed({"datum.half_width", "datum.base", "datum.frequency"});
      d.half_width = cfg.get_double("datum.half_width", d.half_width);
      d.base = cfg.get_double("datum.base", d.base);
      d.frequency = cfg.get_double("datum.frequency", d.frequency);
      if (!(d.half_width > 0.0)) {
        throw ParseError("datum.half_width must be positive", cfg.line_of("datum.half_width"));
      }
      break;
    case DatumKind::theta_bumps:
      allowed({"datum.bumps"});
      for (const auto& g : cfg.get_groups("datum.bumps")) {
        if (g.size() != 2 || !(g[0] < g[1]) || g[0] == 0.0 || g[1] == 0.0) {
          throw ParseError("each bump is 'a b' with a < b, both nonzero",
                           cfg.line_of("datum.bumps"));
        }
        d.bumps.emplace_back(g[0], g[1]);
      }
      break;
    case DatumKind::floor_rings:
    case DatumKind::quadrants:
      if (d.kind == DatumKind::quadrants) {
        allowed({"datum.radius", "datum.heights"});
        if (cfg.has("datum.heights")) d.heights = exact_count(cfg, "datum.heights", 4);
      } else {
        allowed({"datum.radius"});
      }
      d.radius = cfg.get_double("datum.radius", d.kind == DatumKind::quadrants ? 3.0 : 4.0);
      if (!(d.radius > 0.0)) {
        throw ParseError("datum.radius must be positive", cfg.line_of("datum.radius"));
      }
      break;
    case DatumKind::file:
      allowed({"datum.path"});
      d.path = cfg.get_string("datum.path");
      break;
  }
  return d;
}

std::vector<double> snapshot_grid(double start, double final, double every) {
  std::vector<double> out;
  const double duration = std::abs(final - start);
  const double dir = final >= start ? 1.0 : -1.0;
  for (int k = 1;; ++k) {
    const double elapsed = k * every;
    if (elapsed > duration * (1.0 + 1e-12)) break;
    out.push_back(std::abs(elapsed - duration) <= 1e-12 * duration ? final
                                                                    : start + dir * elapsed);
  }
  return out;
}

const std::set<std::string, std::less<>>& scenario_keys() {
  static const std::set<std::string, std::less<>> keys = [] {
    std::set<std::string, std::less<>> k = section_keys();
    for (const char* key :
         {"name", "description", "mode", "time.start", "time.final", "time.snapshots",
          "time.snapshot_every", "datum.type", "datum.discs", "datum.bumps", "datum.radius",
          "datum.heights", "datum.half_width", "datum.base", "datum.frequency", "datum.path",
          "balls", "report.every", "report.support_threshold", "check.mass", "check.positivity",
          "check.propagation", "check.clusters", "check.stationarity",
          "check.stationarity_tolerance", "check.symmetry", "check.symmetry_tolerance",
          "check.roundtrip_tolerance"}) {
      k.insert(key);
    }
    return k;
  }();
  return keys;
}

}  // namespace

Scenario parse_scenario(const Config& cfg, Resolution resolution) {
  cfg.reject_unknown(scenario_keys());
  Scenario s;
  s.name = cfg.get_string("name", "scenario");
  s.description = cfg.get_string("description", "");
  const std::string mode = cfg.get_string("mode", "evolve");
  if (mode == "evolve") {
    s.mode = RunMode::evolve;
  } else if (mode == "roundtrip") {
    s.mode = RunMode::roundtrip;
  } else {
    throw ParseError("mode must be evolve or roundtrip", cfg.line_of("mode"));
  }
  s.grid = read_grid(cfg, resolution);
  s.kernel = read_kernel(cfg);
  s.model = read_velocity(cfg, s.grid.dim);
  s.scheme = read_scheme(cfg);
  if (s.kernel.family == KernelFamily::bump_1d && s.grid.dim != 1) {
    throw ParseError("kernel bump_1d needs a 1D grid", cfg.line_of("kernel.family"));
  }
  if (s.kernel.family == KernelFamily::cosine_2d && s.grid.dim != 2) {
    throw ParseError("kernel cosine_2d needs a 2D grid", cfg.line_of("kernel.family"));
  }
  s.datum = read_datum(cfg, s.grid.dim);

  s.t_start = cfg.get_double("time.start", 0.0);
  s.t_final = cfg.get_double("time.final");
  if (s.mode == RunMode::roundtrip && !(s.t_final > s.t_start)) {
    throw ParseError("roundtrip mode needs time.final > time.start", cfg.line_of("time.final"));
  }
  if (cfg.has("time.snapshots") && cfg.has("time.snapshot_every")) {
    throw ParseError("give either time.snapshots or time.snapshot_every",
                     cfg.line_of("time.snapshot_every"));
  }
  if (cfg.has("time.snapshots")) {
    s.snapshots = cfg.get_doubles("time.snapshots");
    const double lo = std::min(s.t_start, s.t_final);
    const double hi = std::max(s.t_start, s.t_final);
    for (double t : s.snapshots) {
      if (t < lo || t > hi) {
        throw ParseError("snapshot time outside [time.start, time.final]",
                         cfg.line_of("time.snapshots"));
      }
    }
  } else if (cfg.has("time.snapshot_every")) {
    const double every = cfg.get_double("time.snapshot_every");
    if (!(every > 0.0)) {
      throw ParseError("time.snapshot_every must be positive", cfg.line_of("time.snapshot_every"));
    }
    s.snapshots = snapshot_grid(s.t_start, s.t_final, every);
  }

  if (cfg.has("balls")) {
    for (const auto& g : cfg.get_groups("balls")) {
      if (g.size() != static_cast<std::size_t>(s.grid.dim + 1) || !(g.back() > 0.0)) {
        throw ParseError("each ball is 'center radius' with a positive radius",
                         cfg.line_of("balls"));
      }
      s.balls.push_back({{g[0], s.grid.dim == 2 ? g[1] : 0.0}, g.back()});
    }
  }
  s.report_every = cfg.get_int("report.every", 0);
  if (s.report_every < 0) {
    throw ParseError("report.every must be nonnegative", cfg.line_of("report.every"));
  }
  s.support_threshold = cfg.get_double("report.support_threshold", 1e-12);
  if (!(s.support_threshold >= 0.0)) {
    throw ParseError("report.support_threshold must be nonnegative",
                     cfg.line_of("report.support_threshold"));
  }

  CheckSpec& c = s.checks;
  c.mass = cfg.get_bool("check.mass", true);
  c.positivity = cfg.get_bool("check.positivity", false);
  c.propagation = cfg.get_bool("check.propagation", false);
  c.clusters = cfg.get_bool("check.clusters", false);
  c.stationarity = cfg.get_bool("check.stationarity", false);
  c.stationarity_tolerance =
      cfg.get_double("check.stationarity_tolerance", c.stationarity_tolerance);
  if (cfg.has("check.symmetry")) {
    c.symmetry = at_line(cfg, "check.symmetry", [&] {
      return symmetry_from_string(cfg.get_string("check.symmetry"));
    });
  }
  c.symmetry_tolerance = cfg.get_double("check.symmetry_tolerance", c.symmetry_tolerance);
  c.roundtrip_tolerance = cfg.get_double("check.roundtrip_tolerance", 0.0);
  if (c.clusters && s.balls.empty()) {
    throw ParseError("check.clusters needs balls", cfg.line_of("check.clusters"));
  }
  if (c.roundtrip_tolerance > 0.0 && s.mode != RunMode::roundtrip) {
    throw ParseError("check.roundtrip_tolerance needs mode = roundtrip",
                     cfg.line_of("check.roundtrip_tolerance"));
  }
  return s;
}

Scenario parse_scenario(std::string_view text, Resolution resolution) {
  return parse_scenario(Config::parse(text), resolution);
}

namespace {

const std::map<std::string, std::string, std::less<>>& presets() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"clusters", R"(name = clusters
description = Seven discs in four groups further apart than the interaction radius; each group evolves on its own and keeps its mass.
grid.dim = 2
grid.cells = 500 500
grid.cells.full = 7000 7000
grid.lower = -3 -3
grid.upper = 3 3
kernel.family = radial_poly
kernel.inner_radius = 0.5
kernel.outer_radius = 0.8
velocity.variant = saturating
scheme.flux = upwind
scheme.cfl = 0.9
time.final = 1
time.snapshot_every = 0.25
datum.type = disc_sum
# height  center  radius
datum.discs = 1.0 -2 2 0.2; 1.0 -1.8 -1.5 0.8; 0.5 2 2 0.5; 0.75 1 1.5 0.5; 1 2 1 0.25; 0.5 1 -1.5 0.6; 2.5 2 -2 0.3
balls = -2 2 0.25; -1.8 -1.5 0.85; 1.6 1.6 1.15; 1.37 -1.68 1.05
check.propagation = true
check.clusters = true
)"},
      {"vcompare-1", R"(name = vcompare-1
description = Role of the velocity law, first choice: saturating w / sqrt(1 + |w|^2).
grid.dim = 2
grid.cells = 200 200
grid.cells.full = 3000 3000
grid.lower = -4 -4
grid.upper = 4 4
kernel.family = radial_poly
kernel.inner_radius = 0.6
kernel.outer_radius = 1.5
velocity.variant = saturating
scheme.flux = lax_friedrichs
scheme.cfl = 0.9
time.final = 2
time.snapshot_every = 0.5
datum.type = disc_sum
datum.discs = 1.0 -2 2 0.2; 1.0 -1.8 -1.5 0.8; 0.5 2 2 0.5; 0.75 1 1.5 0.5; 1 2 1 0.25; 0.5 1 -1.5 0.6; 2.5 2 -2 0.3
check.propagation = true
)"},
      {"vcompare-2", R"(name = vcompare-2
description = Role of the velocity law, second choice: the saturating law rotated by a quarter turn.
grid.dim = 2
grid.cells = 200 200
grid.cells.full = 3000 3000
grid.lower = -4 -4
grid.upper = 4 4
kernel.family = radial_poly
kernel.inner_radius = 0.6
kernel.outer_radius = 1.5
velocity.variant = rotated_saturating
velocity.rotation = 0 1 -1 0
scheme.flux = lax_friedrichs
scheme.cfl = 0.9
time.final = 2
time.snapshot_every = 0.5
datum.type = disc_sum
datum.discs = 1.0 -2 2 0.2; 1.0 -1.8 -1.5 0.8; 0.5 2 2 0.5; 0.75 1 1.5 0.5; 1 2 1 0.25; 0.5 1 -1.5 0.6; 2.5 2 -2 0.3
check.propagation = true
)"},
      {"vcompare-3", R"(name = vcompare-3
description = Role of the velocity law, third choice: the negated saturating law (repulsion).
grid.dim = 2
grid.cells = 200 200
grid.cells.full = 3000 3000
grid.lower = -4 -4
grid.upper = 4 4
kernel.family = radial_poly
kernel.inner_radius = 0.6
kernel.outer_radius = 1.5
velocity.variant = negated_saturating
scheme.flux = lax_friedrichs
scheme.cfl = 0.9
time.final = 2
time.snapshot_every = 0.5
datum.type = disc_sum
datum.discs = 1.0 -2 2 0.2; 1.0 -1.8 -1.5 0.8; 0.5 2 2 0.5; 0.75 1 1.5 0.5; 1 2 1 0.25; 0.5 1 -1.5 0.6; 2.5 2 -2 0.3
check.propagation = true
)"},
      {"stationary", R"(name = stationary
description = Datum whose support is narrower than the kernel plateau: the velocity vanishes on it and the solution does not move.
grid.dim = 2
grid.cells = 200 200
grid.cells.full = 1000 1000
grid.lower = -0.5 -0.5
grid.upper = 0.5 0.5
kernel.family = radial_poly
kernel.inner_radius = 0.8
kernel.outer_radius = 1.5
velocity.variant = identity
scheme.flux = upwind
scheme.cfl = 0.9
time.final = 1
time.snapshots = 1
datum.type = sine_box
datum.half_width = 0.25
datum.base = 2
datum.frequency = 8
report.every = 1
check.propagation = true
check.stationarity = true
check.positivity = true
)"},
      {"crypt1d", R"(name = crypt1d
description = Encryption of a 1D signal made of three overlapping bumps: forward to T = 3, then backward.
mode = roundtrip
grid.dim = 1
grid.cells = 10000
grid.cells.full = 100000
grid.lower = -1
grid.upper = 1
kernel.family = bump_1d
kernel.outer_radius = 0.25
velocity.variant = saturating
scheme.flux = upwind
scheme.cfl = 0.9
time.final = 3
datum.type = theta_bumps
datum.bumps = -0.8 -0.2; -0.4 0.4; 0.2 0.8
check.positivity = true
check.roundtrip_tolerance = 2e-2
)"},
      {"crypt2d-a", R"(name = crypt2d-a
description = Image encryption with the cosine kernel and the rotated velocity law; integer plateaus cut by a disc of radius 4.
mode = roundtrip
grid.dim = 2
grid.cells = 240 240
grid.cells.full = 8000 8000
grid.lower = -6 -6
grid.upper = 6 6
kernel.family = cosine_2d
velocity.variant = rotated_saturating
velocity.rotation = 0 -1 1 0
scheme.flux = upwind
scheme.cfl = 0.9
time.final = 0.25
datum.type = floor_rings
datum.radius = 4
check.positivity = true
)"},
      {"crypt2d-b", R"(name = crypt2d-b
description = Image encryption with the cosine kernel and the rotated velocity law; four quadrant plateaus of heights 4, 1, 2, 3.
mode = roundtrip
grid.dim = 2
grid.cells = 200 200
grid.cells.full = 8000 8000
grid.lower = -5 -5
grid.upper = 5 5
kernel.family = cosine_2d
velocity.variant = rotated_saturating
velocity.rotation = 0 -1 1 0
scheme.flux = upwind
scheme.cfl = 0.9
time.final = 0.25
datum.type = quadrants
datum.radius = 3
datum.heights = 4 1 2 3
check.positivity = true
)"},
  };
  return table;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : presets()) names.push_back(name);
  return names;
}

std::string preset_text(std::string_view name) {
  const auto it = presets().find(name);
  if (it == presets().end()) throw ConfigError("unknown preset '" + std::string(name) + "'");
  return it->second;
}

Scenario preset(std::string_view name, Resolution resolution) {
  return parse_scenario(preset_text(name), resolution);
}

}  // namespace nlc
