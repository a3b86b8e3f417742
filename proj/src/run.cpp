#include "nlc/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "json.hpp"

#include "nlc/error.hpp"
#include "nlc/nlcd.hpp"

namespace nlc {
namespace {

constexpr double kMassTolerance = 1e-10;

std::string snapshot_name(std::string_view stem, std::size_t k, double t) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.*s_%03zu_t%.6g.nlcd", static_cast<int>(stem.size()),
                stem.data(), k, t);
  return buf;
}

std::optional<Box> union_support(const DensityField& field, double threshold) {
  std::optional<Box> hull;
  for (const auto& box : support_bbox(field, threshold)) {
    if (!box) continue;
    if (!hull) {
      hull = box;
      continue;
    }
    for (int a = 0; a < 2; ++a) {
      hull->lo[a] = std::min(hull->lo[a], box->lo[a]);
      hull->hi[a] = std::max(hull->hi[a], box->hi[a]);
    }
  }
  return hull;
}

// Distance from the datum support to the domain boundary.
double boundary_clearance(const DensityField& field, double threshold) {
  const auto hull = union_support(field, threshold);
  if (!hull) return std::numeric_limits<double>::infinity();
  const Grid& g = field.grid();
  double d = std::numeric_limits<double>::infinity();
  for (int a = 0; a < g.dim; ++a) {
    d = std::min({d, hull->lo[a] - g.lower(a), g.upper(a) - hull->hi[a]});
  }
  return d;
}

CheckOutcome mass_check(const RunReport& report, bool interior, std::string name) {
  CheckOutcome c;
  c.name = std::move(name);
  c.limit = kMassTolerance;
  const auto& m0 = report.mass.front();
  double worst = 0.0;
  if (interior) {
    for (std::size_t k = 0; k < report.times.size(); ++k) {
      for (std::size_t p = 0; p < m0.size(); ++p) {
        const double scale = std::abs(m0[p]) > 0.0 ? std::abs(m0[p]) : 1.0;
        worst = std::max(worst, std::abs(report.mass[k][p] - m0[p]) / scale);
      }
    }
    c.detail = "relative mass drift (support clear of the boundary by 2 radii)";
  } else {
    // Mass may leave through the boundary; the balance with the outflow must close.
    // The outflow is not split per population, so totals are compared.
    double total0 = 0.0;
    for (double m : m0) total0 += m;
    const double scale = std::abs(total0) > 0.0 ? std::abs(total0) : 1.0;
    for (std::size_t k = 0; k < report.times.size(); ++k) {
      double total = 0.0;
      for (double m : report.mass[k]) total += m;
      worst = std::max(worst, std::abs(total + report.boundary_loss[k] - total0) / scale);
    }
    c.detail = "relative drift of mass plus boundary outflow";
  }
  c.value = worst;
  c.pass = worst <= kMassTolerance;
  return c;
}

CheckOutcome positivity_check(const std::vector<const DensityField*>& fields) {
  CheckOutcome c;
  c.name = "positivity";
  double low = std::numeric_limits<double>::infinity();
  for (const DensityField* f : fields) {
    for (double v : f->values()) low = std::min(low, v);
  }
  c.value = low;
  c.limit = 0.0;
  c.pass = low >= 0.0;
  c.detail = "minimum value over the datum, every snapshot and the final state";
  return c;
}

void write_field(const DensityField& f, const std::filesystem::path& path,
                 std::vector<std::filesystem::path>& files) {
  write_nlcd(path, f);
  files.push_back(path);
}

nlohmann::json check_json(const CheckOutcome& c) {
  auto finite = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  return {{"name", c.name}, {"pass", c.pass}, {"value", finite(c.value)},
          {"limit", finite(c.limit)}, {"detail", c.detail}};
}

}  // namespace

bool RunOutcome::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.pass; });
}

void write_report_csv(const RunReport& report, std::ostream& out) {
  const std::size_t m = report.mass.empty() ? 0 : report.mass.front().size();
  out << "time,deviation_l1,boundary_loss";
  for (std::size_t p = 0; p < m; ++p) {
    out << ",mass_" << p << ",lo0_" << p << ",hi0_" << p << ",lo1_" << p << ",hi1_" << p;
  }
  for (std::size_t h = 0; h < report.balls.size(); ++h) {
    for (std::size_t p = 0; p < m; ++p) out << ",ball" << h << "_mass_" << p;
  }
  out << '\n';
  out.precision(17);
  for (std::size_t k = 0; k < report.times.size(); ++k) {
    out << report.times[k] << ',' << report.deviation_l1[k] << ',' << report.boundary_loss[k];
    for (std::size_t p = 0; p < m; ++p) {
      out << ',' << report.mass[k][p];
      if (const auto& box = report.support[k][p]) {
        out << ',' << box->lo[0] << ',' << box->hi[0] << ',' << box->lo[1] << ',' << box->hi[1];
      } else {
        out << ",,,,";
      }
    }
    for (std::size_t h = 0; h < report.balls.size(); ++h) {
      for (std::size_t p = 0; p < m; ++p) out << ',' << report.region_mass[k][h][p];
    }
    out << '\n';
  }
}

RunOutcome run(const Scenario& s, const std::filesystem::path& out_dir, std::ostream* log) {
  std::filesystem::create_directories(out_dir);
  RunOutcome outcome;
  const DensityField datum = build_datum(s.datum, s.grid, s.t_start);
  const Kernel kernel = make_kernel(s.kernel, s.grid);
  if (s.model.dim() != s.grid.dim) throw ConfigError("velocity model and grid dimensions differ");

  RunOptions options;
  options.snapshot_times = s.snapshots;
  options.balls = s.balls;
  options.report_every = s.report_every;
  options.support_threshold = s.support_threshold;

  if (log) {
    *log << s.name << ": " << s.grid.cells[0];
    if (s.grid.dim == 2) *log << " x " << s.grid.cells[1];
    *log << " cells, t = " << s.t_start << " -> " << s.t_final << '\n';
  }
  Evolution forward = evolve(datum, kernel, s.model, s.scheme, s.t_final, options);
  outcome.report = forward.report;
  write_field(datum, out_dir / snapshot_name(s.name, 0, datum.time()), outcome.files);
  for (std::size_t k = 0; k < forward.snapshots.size(); ++k) {
    write_field(forward.snapshots[k],
                out_dir / snapshot_name(s.name, k + 1, forward.snapshots[k].time()),
                outcome.files);
  }
  {
    std::ofstream csv(out_dir / "report.csv");
    write_report_csv(forward.report, csv);
    outcome.files.push_back(out_dir / "report.csv");
  }
  if (log) {
    *log << "  " << forward.report.steps_taken << " steps, boundary loss "
         << forward.report.boundary_mass_lost << '\n';
  }

  const double ell = s.kernel.outer_radius;
  const bool interior = boundary_clearance(datum, 0.0) >= 2.0 * ell;
  std::vector<const DensityField*> fields{&datum, &forward.final_state};
  for (const auto& f : forward.snapshots) fields.push_back(&f);

  if (s.checks.mass) outcome.checks.push_back(mass_check(forward.report, interior, "mass"));

  if (s.checks.propagation) {
    const auto hull = union_support(datum, s.support_threshold);
    const Ball ball = hull ? bounding_ball(*hull) : Ball{};
    const CheckResult r = check_propagation_bound(forward.report, ball);
    outcome.checks.push_back({"propagation", r.pass, r.margin, 0.0, r.detail});
  }
  if (s.checks.clusters) {
    const ClusterCheck cc = check_cluster_independence(forward.report, s.balls, ell,
                                                       {s.t_start, s.t_final});
    for (const CheckResult& r : cc.per_ball) {
      outcome.checks.push_back({"cluster " + r.name, r.pass, kClusterMassTolerance - r.margin,
                                kClusterMassTolerance, r.detail});
    }
    outcome.checks.push_back({"cluster containment", cc.containment.pass,
                              -cc.containment.margin, 0.0, cc.containment.detail});
  }
  if (s.checks.stationarity) {
    double worst = 0.0;
    for (double d : forward.report.deviation_l1) worst = std::max(worst, d);
    const double limit = s.checks.stationarity_tolerance * forward.report.initial_l1;
    outcome.checks.push_back({"stationarity", worst <= limit, worst, limit,
                              "sup over records of |rho(t) - rho_0|_L1"});
  }
  if (s.checks.symmetry) {
    const double a = check_symmetry(forward.final_state, *s.checks.symmetry);
    outcome.checks.push_back({"symmetry", a <= s.checks.symmetry_tolerance, a,
                              s.checks.symmetry_tolerance,
                              std::string(to_string(*s.checks.symmetry)) +
                                  " asymmetry of the final state"});
  }

  DensityField decrypted;
  if (s.mode == RunMode::roundtrip) {
    RunOptions back_options = options;
    back_options.snapshot_times.clear();
    Evolution backward = evolve_by(forward.final_state, kernel, s.model, s.scheme,
                                   std::abs(s.t_final - s.t_start), -1, back_options);
    decrypted = std::move(backward.final_state);
    fields.push_back(&decrypted);
    outcome.backward = backward.report;
    outcome.roundtrip = roundtrip_report(datum, decrypted, forward.final_state);
    write_field(datum, out_dir / "original.nlcd", outcome.files);
    write_field(forward.final_state, out_dir / "cipher.nlcd", outcome.files);
    write_field(decrypted, out_dir / "decrypted.nlcd", outcome.files);
    {
      std::ofstream csv(out_dir / "roundtrip.csv");
      csv << roundtrip_csv(*outcome.roundtrip);
      outcome.files.push_back(out_dir / "roundtrip.csv");
    }
    {
      std::ofstream csv(out_dir / "report_backward.csv");
      write_report_csv(backward.report, csv);
      outcome.files.push_back(out_dir / "report_backward.csv");
    }
    if (s.checks.mass) {
      outcome.checks.push_back(mass_check(backward.report, interior, "mass (backward)"));
    }
    if (s.checks.roundtrip_tolerance > 0.0) {
      const double e = outcome.roundtrip->relative_error;
      outcome.checks.push_back({"roundtrip", e <= s.checks.roundtrip_tolerance, e,
                                s.checks.roundtrip_tolerance,
                                "relative L1 error of decrypt(encrypt(rho_0))"});
    }
    if (log) *log << "  roundtrip relative error " << outcome.roundtrip->relative_error << '\n';
  }
  if (s.checks.positivity) outcome.checks.push_back(positivity_check(fields));

  nlohmann::json j;
  j["scenario"] = s.name;
  j["steps"] = forward.report.steps_taken;
  j["velocity_bound"] = forward.report.velocity_bound;
  j["boundary_mass_lost"] = forward.report.boundary_mass_lost;
  j["checks"] = nlohmann::json::array();
  for (const CheckOutcome& c : outcome.checks) j["checks"].push_back(check_json(c));
  if (outcome.roundtrip) {
    const RoundtripReport& r = *outcome.roundtrip;
    j["roundtrip"] = {{"original_l1", r.original_l1},       {"cipher_l1", r.cipher_l1},
                      {"decrypted_l1", r.decrypted_l1},     {"absolute_error", r.absolute_error},
                      {"relative_error", r.relative_error}};
  }
  j["all_pass"] = outcome.all_pass();
  {
    std::ofstream out(out_dir / "checks.json");
    out << j.dump(2) << '\n';
    outcome.files.push_back(out_dir / "checks.json");
  }
  if (log) {
    for (const CheckOutcome& c : outcome.checks) {
      *log << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << ": " << c.value;
      if (!c.detail.empty()) *log << " (" << c.detail << ")";
      *log << '\n';
    }
  }
  outcome.final_state = std::move(forward.final_state);
  return outcome;
}

OracleRun run_oracle(const Scenario& s, const OracleOptions& options,
                     const std::filesystem::path& out_dir, std::ostream* log) {
  const DensityField datum = build_datum(s.datum, s.grid, s.t_start);
  const Kernel kernel = make_kernel(s.kernel, s.grid);
  const double horizon = s.t_final - s.t_start;
  OracleRun r;
  r.oracle = picard_solve(datum, kernel, s.model, horizon, options);
  r.finite_volume = evolve(datum, kernel, s.model, s.scheme, s.t_final).final_state;
  r.discrepancy = l1_distance(r.oracle.solution, r.finite_volume);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    write_nlcd(out_dir / "oracle.nlcd", r.oracle.solution);
    write_nlcd(out_dir / "finite_volume.nlcd", r.finite_volume);
    std::ofstream csv(out_dir / "oracle.csv");
    csv.precision(17);
    csv << "iteration,gap\n";
    for (std::size_t k = 0; k < r.oracle.gap_history.size(); ++k) {
      csv << k + 1 << ',' << r.oracle.gap_history[k] << '\n';
    }
  }
  if (log) {
    *log << s.name << ": oracle with " << r.oracle.time_samples << " time samples\n";
    for (std::size_t k = 0; k < r.oracle.gap_history.size(); ++k) {
      *log << "  iteration " << k + 1 << ": gap " << r.oracle.gap_history[k] << '\n';
    }
    *log << "  L1 distance to the finite-volume solution: " << r.discrepancy << '\n';
  }
  return r;
}

}  // namespace nlc
