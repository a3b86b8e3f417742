#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "nlc/config.hpp"
#include "nlc/crypt.hpp"
#include "nlc/error.hpp"
#include "nlc/nlcd.hpp"
#include "nlc/run.hpp"
#include "nlc/scenario.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kKeyFormat = 1;
constexpr int kConfigFormat = 1;

struct ScenarioSource {
  std::string config;
  std::string preset;
  std::string resolution = "desk";
};

void add_source(CLI::App* cmd, ScenarioSource& src) {
  auto* cfg = cmd->add_option("--config", src.config, "scenario config file");
  auto* pre = cmd->add_option("--preset", src.preset, "built-in scenario name");
  cfg->excludes(pre);
  cmd->add_option("--resolution", src.resolution, "desk or full")
      ->check(CLI::IsMember({"desk", "full"}));
}

nlc::Scenario load(const ScenarioSource& src) {
  const nlc::Resolution res = nlc::resolution_from_string(src.resolution);
  if (!src.preset.empty()) return nlc::preset(src.preset, res);
  if (src.config.empty()) throw nlc::ConfigError("give --config or --preset");
  return nlc::parse_scenario(nlc::Config::load(src.config), res);
}

std::vector<double> read_numbers(std::istream& in) {
  std::vector<double> v;
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw nlc::ParseError("not a number: '" + token + "'", 0);
    }
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume solver for non-local multi-population conservation laws"};
  app.require_subcommand(0, 1);
  bool show_version = false;
  app.add_flag("--version", show_version, "print program and file format versions");
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (0 keeps the default)")
      ->check(CLI::NonNegativeNumber);

  ScenarioSource run_src;
  std::string run_out = "out";
  auto* run_cmd = app.add_subcommand("run", "run a scenario and write snapshots and checks");
  add_source(run_cmd, run_src);
  run_cmd->add_option("--out", run_out, "output directory");
  run_cmd->add_option("--threads", threads, "OpenMP threads")->check(CLI::NonNegativeNumber);

  ScenarioSource oracle_src;
  nlc::OracleOptions oracle_opts;
  std::string oracle_out;
  auto* oracle_cmd = app.add_subcommand("oracle", "characteristics/Picard reference solution");
  add_source(oracle_cmd, oracle_src);
  oracle_cmd->add_option("--iterations", oracle_opts.iterations, "Picard iterations")
      ->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--samples", oracle_opts.time_samples,
                         "time samples of the velocity history (0: automatic)");
  oracle_cmd->add_option("--out", oracle_out, "output directory for oracle.nlcd");
  oracle_cmd->add_option("--threads", threads, "OpenMP threads")->check(CLI::NonNegativeNumber);

  std::string key_path, in_path, out_path;
  auto* enc_cmd = app.add_subcommand("encrypt", "evolve a payload forward with a key");
  enc_cmd->add_option("--key", key_path, "key file")->required();
  enc_cmd->add_option("--in", in_path, "payload NLCD")->required();
  enc_cmd->add_option("--out", out_path, "cipher NLCD")->required();
  auto* dec_cmd = app.add_subcommand("decrypt", "evolve a cipher backward with a key");
  dec_cmd->add_option("--key", key_path, "key file")->required();
  dec_cmd->add_option("--in", in_path, "cipher NLCD")->required();
  dec_cmd->add_option("--out", out_path, "decrypted NLCD")->required();

  std::string orig_path, dec_path, cipher_path, report_out;
  auto* report_cmd = app.add_subcommand("report", "roundtrip L1 metrics as CSV");
  report_cmd->add_option("--orig", orig_path, "original NLCD")->required();
  report_cmd->add_option("--dec", dec_path, "decrypted NLCD")->required();
  report_cmd->add_option("--cipher", cipher_path, "cipher NLCD")->required();
  report_cmd->add_option("--out", report_out, "CSV file (default: stdout)");

  std::string keygen_preset, keygen_out;
  auto* keygen_cmd = app.add_subcommand("keygen", "write the key of a roundtrip preset");
  ScenarioSource keygen_src;
  add_source(keygen_cmd, keygen_src);
  keygen_cmd->add_option("--out", keygen_out, "key file (default: stdout)");

  std::string preset_name;
  auto* preset_cmd = app.add_subcommand("preset", "list presets or print one as config text");
  preset_cmd->add_option("name", preset_name, "preset to print");

  ScenarioSource datum_src;
  std::string datum_out;
  auto* datum_cmd = app.add_subcommand("datum", "write the initial datum of a scenario");
  add_source(datum_cmd, datum_src);
  datum_cmd->add_option("--out", datum_out, "NLCD file")->required();

  std::string ingest_key;
  auto* ingest_cmd = app.add_subcommand(
      "ingest", "turn whitespace-separated samples (1D) or rows (2D) into a payload");
  ingest_cmd->add_option("--key", ingest_key, "key whose grid receives the payload")->required();
  ingest_cmd->add_option("--in", in_path, "text file")->required();
  ingest_cmd->add_option("--out", out_path, "payload NLCD")->required();

  CLI11_PARSE(app, argc, argv);

  if (show_version) {
    std::cout << "nlc " << kVersion << "\nNLCD format " << nlc::kNlcdVersion << "\nkey format "
              << kKeyFormat << "\nconfig format " << kConfigFormat << '\n';
    return 0;
  }
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  try {
    if (*run_cmd) {
      const nlc::Scenario s = load(run_src);
      const nlc::RunOutcome outcome = nlc::run(s, run_out, &std::cout);
      return outcome.all_pass() ? 0 : 1;
    }
    if (*oracle_cmd) {
      const nlc::Scenario s = load(oracle_src);
      nlc::run_oracle(s, oracle_opts, oracle_out, &std::cout);
      return 0;
    }
    if (*enc_cmd || *dec_cmd) {
      const nlc::CryptKey key = nlc::load_key(key_path);
      const nlc::DensityField in = nlc::read_nlcd(std::filesystem::path(in_path));
      if (*enc_cmd) {
        if (auto w = nlc::key_quality_warning(in, key)) std::cerr << "warning: " << *w << '\n';
      }
      const nlc::DensityField out = *enc_cmd ? nlc::encrypt(in, key) : nlc::decrypt(in, key);
      nlc::write_nlcd(std::filesystem::path(out_path), out);
      return 0;
    }
    if (*report_cmd) {
      const auto orig = nlc::read_nlcd(std::filesystem::path(orig_path));
      const auto dec = nlc::read_nlcd(std::filesystem::path(dec_path));
      const auto cipher = nlc::read_nlcd(std::filesystem::path(cipher_path));
      const std::string csv = nlc::roundtrip_csv(nlc::roundtrip_report(orig, dec, cipher));
      if (report_out.empty()) {
        std::cout << csv;
      } else {
        std::ofstream(report_out) << csv;
      }
      return 0;
    }
    if (*keygen_cmd) {
      const nlc::Scenario s = load(keygen_src);
      nlc::CryptKey key;
      key.grid = s.grid;
      key.kernel = s.kernel;
      key.model = s.model;
      key.scheme = s.scheme;
      key.horizon = s.t_final - s.t_start;
      key.validate();
      const std::string text = nlc::key_to_string(key);
      if (keygen_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream(keygen_out) << text;
      }
      return 0;
    }
    if (*preset_cmd) {
      if (preset_name.empty()) {
        for (const auto& name : nlc::preset_names()) std::cout << name << '\n';
      } else {
        std::cout << nlc::preset_text(preset_name);
      }
      return 0;
    }
    if (*datum_cmd) {
      const nlc::Scenario s = load(datum_src);
      nlc::write_nlcd(std::filesystem::path(datum_out),
                      nlc::build_datum(s.datum, s.grid, s.t_start));
      return 0;
    }
    if (*ingest_cmd) {
      const nlc::CryptKey key = nlc::load_key(ingest_key);
      std::ifstream in(in_path);
      if (!in) throw nlc::IoError("cannot open " + in_path);
      nlc::DensityField payload;
      if (key.grid.dim == 1) {
        payload = nlc::ingest_payload_1d(read_numbers(in), key.grid);
      } else {
        std::vector<std::vector<double>> rows;
        std::string line;
        while (std::getline(in, line)) {
          std::istringstream ls(line);
          auto row = read_numbers(ls);
          if (!row.empty()) rows.push_back(std::move(row));
        }
        payload = nlc::ingest_payload_2d({rows}, key.grid);
      }
      nlc::write_nlcd(std::filesystem::path(out_path), payload);
      return 0;
    }
    std::cout << app.help();
    return 0;
  } catch (const nlc::ParseError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const nlc::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const nlc::ParameterError& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return 2;
  } catch (const nlc::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
