#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlc/config.hpp"
#include "nlc/grid.hpp"
#include "nlc/kernel.hpp"
#include "nlc/scheme.hpp"
#include "nlc/solver.hpp"
#include "nlc/velocity.hpp"

namespace nlc {

enum class Resolution { desk, full };
std::string_view to_string(Resolution resolution);
Resolution resolution_from_string(std::string_view name);

// Section readers shared by scenarios and crypt keys. Each reads the keys
// under `prefix` (e.g. "grid.cells") and validates them.

/// grid.dim, grid.cells, and either grid.lower/grid.upper or
/// grid.origin/grid.spacing. With Resolution::full, grid.cells.full
/// replaces grid.cells.
Grid read_grid(const Config& cfg, Resolution resolution = Resolution::desk);
KernelSpec read_kernel(const Config& cfg);
/// velocity.variant, velocity.rotation (row-major, rotated variant only),
/// velocity.sign (+1 or -1, multiplies the variant's own sign).
VelocityModel read_velocity(const Config& cfg, int dim);
SchemeConfig read_scheme(const Config& cfg);

void write_grid(Config& cfg, const Grid& grid);
void write_kernel(Config& cfg, const KernelSpec& kernel);
void write_velocity(Config& cfg, const VelocityModel& model);
void write_scheme(Config& cfg, const SchemeConfig& scheme);

/// Keys accepted by the readers above.
const std::set<std::string, std::less<>>& section_keys();

enum class DatumKind { disc_sum, sine_box, theta_bumps, floor_rings, quadrants, file };
std::string_view to_string(DatumKind kind);
DatumKind datum_kind_from_string(std::string_view name);

struct Disc {
  double height = 1.0;
  Coord center{0.0, 0.0};
  double radius = 1.0;
};

struct DatumSpec {
  DatumKind kind = DatumKind::disc_sum;
  std::vector<Disc> discs;                          // sum of h * 1_{B(c, r)}
  std::vector<std::pair<double, double>> bumps;     // theta(x; a, b) intervals
  double radius = 4.0;                              // floor_rings / quadrants
  std::vector<double> heights{4.0, 1.0, 2.0, 3.0};  // quadrants, counterclockwise from x1, x2 > 0
  double half_width = 0.25;                         // sine_box: (base + sin(freq x2)) on the box
  double base = 2.0;
  double frequency = 8.0;
  std::filesystem::path path;                       // file
};

/// theta(x; a, b) = (1 - x/a)^2 (1 - x/b)^4 on [a, b], zero elsewhere.
double theta_bump(double x, double a, double b);

/// Pointwise value of an analytic datum (not defined for `file`).
double datum_value(const DatumSpec& spec, Coord x);

/// Datum sampled at cell centers; `file` reads an NLCD dump and requires the
/// same grid.
DensityField build_datum(const DatumSpec& spec, const Grid& grid, double time = 0.0);

enum class RunMode { evolve, roundtrip };

struct CheckSpec {
  bool mass = true;
  bool positivity = false;
  bool propagation = false;
  bool clusters = false;
  bool stationarity = false;
  double stationarity_tolerance = 1e-12;  // relative to |rho_0|_L1
  std::optional<Symmetry> symmetry;
  double symmetry_tolerance = 1e-10;
  double roundtrip_tolerance = 0.0;  // relative L1; 0 disables
};

struct Scenario {
  std::string name;
  std::string description;
  Grid grid;
  KernelSpec kernel;
  VelocityModel model = VelocityModel::saturating(2);
  SchemeConfig scheme;
  DatumSpec datum;
  double t_start = 0.0;
  double t_final = 1.0;
  std::vector<double> snapshots;
  std::vector<Ball> balls;
  int report_every = 0;
  double support_threshold = 1e-12;
  RunMode mode = RunMode::evolve;
  CheckSpec checks;
};

/// Validated scenario; unknown keys are rejected with their line number.
Scenario parse_scenario(const Config& cfg, Resolution resolution = Resolution::desk);
Scenario parse_scenario(std::string_view text, Resolution resolution = Resolution::desk);

std::vector<std::string> preset_names();
/// Config text of a built-in preset (desk and full cell counts included).
std::string preset_text(std::string_view name);
Scenario preset(std::string_view name, Resolution resolution = Resolution::desk);

}  // namespace nlc
