#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nlc/crypt.hpp"
#include "nlc/oracle.hpp"
#include "nlc/scenario.hpp"
#include "nlc/solver.hpp"

namespace nlc {

struct CheckOutcome {
  std::string name;
  bool pass = true;
  double value = 0.0;
  double limit = 0.0;
  std::string detail;
};

struct RunOutcome {
  std::vector<CheckOutcome> checks;
  RunReport report;                    // forward phase
  std::optional<RunReport> backward;   // roundtrip mode only
  std::optional<RoundtripReport> roundtrip;
  DensityField final_state;
  std::vector<std::filesystem::path> files;
  bool all_pass() const;
};

/// Runs a scenario and writes NLCD snapshots, report.csv and checks.json
/// into out_dir (created if missing).
RunOutcome run(const Scenario& scenario, const std::filesystem::path& out_dir,
               std::ostream* log = nullptr);

/// Flat CSV: time, L1 deviation from the datum, boundary loss, then per
/// population mass and support box, then per ball and population mass.
void write_report_csv(const RunReport& report, std::ostream& out);

struct OracleRun {
  OracleResult oracle;
  DensityField finite_volume;
  double discrepancy = 0.0;  // L1 distance between oracle and finite-volume result
};

/// Picard oracle on the scenario's datum and horizon, plus the finite-volume
/// solution on the same grid for comparison. Writes oracle.nlcd,
/// finite_volume.nlcd and oracle.csv into out_dir when it is non-empty.
OracleRun run_oracle(const Scenario& scenario, const OracleOptions& options,
                     const std::filesystem::path& out_dir, std::ostream* log = nullptr);

}  // namespace nlc
