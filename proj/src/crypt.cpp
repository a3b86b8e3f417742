#include "nlc/crypt.hpp"

#include <cmath>
#include <sstream>

#include "nlc/config.hpp"
#include "nlc/error.hpp"
#include "nlc/scenario.hpp"
#include "nlc/solver.hpp"

namespace nlc {

void CryptKey::validate() const {
  grid.validate();
  scheme.validate();
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw ParameterError("key horizon must be positive and finite");
  }
  if (model.dim() != grid.dim) throw ConfigError("velocity model and grid dimensions differ");
  // Builds and discards the kernel to surface parameter errors early.
  make_kernel(kernel, grid);
}

CryptKey CryptKey::flipped() const {
  CryptKey k = *this;
  k.model = model.negated();
  return k;
}

namespace {

CryptKey read_key(const Config& cfg) {
  auto known = section_keys();
  known.insert("horizon");
  cfg.reject_unknown(known);
  CryptKey key;
  key.grid = read_grid(cfg);
  key.kernel = read_kernel(cfg);
  key.model = read_velocity(cfg, key.grid.dim);
  key.scheme = read_scheme(cfg);
  key.horizon = cfg.get_double("horizon");
  key.validate();
  return key;
}

}  // namespace

CryptKey parse_key(std::string_view text) { return read_key(Config::parse(text)); }

CryptKey load_key(const std::filesystem::path& path) { return read_key(Config::load(path)); }

std::string key_to_string(const CryptKey& key) {
  Config cfg;
  write_grid(cfg, key.grid);
  write_kernel(cfg, key.kernel);
  write_velocity(cfg, key.model);
  write_scheme(cfg, key.scheme);
  cfg.set("horizon", format_double(key.horizon));
  return cfg.to_string();
}

namespace {

void require_key_grid(const DensityField& field, const CryptKey& key) {
  if (!(field.grid() == key.grid)) {
    throw ParameterError("field grid does not match the key grid");
  }
}

}  // namespace

DensityField encrypt(const DensityField& payload, const CryptKey& key) {
  require_key_grid(payload, key);
  const Kernel kernel = make_kernel(key.kernel, key.grid);
  return evolve_by(payload, kernel, key.model, key.scheme, key.horizon, 1).final_state;
}

DensityField decrypt(const DensityField& cipher, const CryptKey& key) {
  require_key_grid(cipher, key);
  const Kernel kernel = make_kernel(key.kernel, key.grid);
  return evolve_by(cipher, kernel, key.model, key.scheme, key.horizon, -1).final_state;
}

RoundtripReport roundtrip_report(const DensityField& original, const DensityField& decrypted,
                                 const DensityField& cipher) {
  if (!(original.grid() == decrypted.grid()) || !(original.grid() == cipher.grid()) ||
      original.populations() != decrypted.populations() ||
      original.populations() != cipher.populations()) {
    throw ParameterError("roundtrip fields live on different grids");
  }
  RoundtripReport r;
  r.original_l1 = l1_norm(original);
  r.cipher_l1 = l1_norm(cipher);
  r.decrypted_l1 = l1_norm(decrypted);
  r.absolute_error = l1_distance(original, decrypted);
  r.relative_error = r.original_l1 > 0.0 ? r.absolute_error / r.original_l1 : 0.0;
  return r;
}

std::string roundtrip_csv(const RoundtripReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "original_l1,cipher_l1,decrypted_l1,absolute_error,relative_error\n"
      << r.original_l1 << ',' << r.cipher_l1 << ',' << r.decrypted_l1 << ',' << r.absolute_error
      << ',' << r.relative_error << '\n';
  return out.str();
}

std::optional<std::string> key_quality_warning(const DensityField& payload, const CryptKey& key) {
  std::optional<Box> hull;
  for (const auto& box : support_bbox(payload, 0.0)) {
    if (!box) continue;
    if (!hull) {
      hull = box;
    } else {
      for (int a = 0; a < 2; ++a) {
        hull->lo[a] = std::min(hull->lo[a], box->lo[a]);
        hull->hi[a] = std::max(hull->hi[a], box->hi[a]);
      }
    }
  }
  if (!hull) return std::nullopt;
  const double diameter = std::hypot(hull->hi[0] - hull->lo[0], hull->hi[1] - hull->lo[1]);
  if (diameter < key.kernel.inner_radius) {
    std::ostringstream msg;
    msg << "payload support diameter " << diameter << " is below the kernel inner radius "
        << key.kernel.inner_radius << ": the velocity vanishes on the support and the key "
        << "leaves the payload unchanged";
    return msg.str();
  }
  return std::nullopt;
}

DensityField ingest_payload_1d(const std::vector<double>& samples, const Grid& grid) {
  if (grid.dim != 1) throw ParameterError("1D payload needs a 1D grid");
  if (samples.size() != grid.size()) {
    throw ParameterError("payload has " + std::to_string(samples.size()) + " samples, grid has " +
                         std::to_string(grid.size()) + " cells");
  }
  DensityField f(grid, 1);
  for (std::size_t c = 0; c < samples.size(); ++c) {
    if (!std::isfinite(samples[c]) || samples[c] < 0.0) {
      throw ParameterError("payload samples must be finite and nonnegative");
    }
    f.at(0, c) = samples[c];
  }
  return f;
}

DensityField ingest_payload_2d(const std::vector<std::vector<std::vector<double>>>& channels,
                               const Grid& grid) {
  if (grid.dim != 2) throw ParameterError("image payload needs a 2D grid");
  if (channels.empty()) throw ParameterError("image has no channels");
  DensityField f(grid, static_cast<int>(channels.size()));
  for (std::size_t ch = 0; ch < channels.size(); ++ch) {
    const auto& rows = channels[ch];
    if (rows.size() != static_cast<std::size_t>(grid.cells[0])) {
      throw ParameterError("image channel " + std::to_string(ch) + " has " +
                           std::to_string(rows.size()) + " rows, grid has " +
                           std::to_string(grid.cells[0]));
    }
    for (int i = 0; i < grid.cells[0]; ++i) {
      if (rows[i].size() != static_cast<std::size_t>(grid.cells[1])) {
        throw ParameterError("image row " + std::to_string(i) + " has " +
                             std::to_string(rows[i].size()) + " columns, grid has " +
                             std::to_string(grid.cells[1]));
      }
      for (int j = 0; j < grid.cells[1]; ++j) {
        const double v = rows[i][j];
        if (!std::isfinite(v) || v < 0.0) {
          throw ParameterError("image values must be finite and nonnegative");
        }
        f.at(static_cast<int>(ch), grid.flat(i, j)) = v;
      }
    }
  }
  return f;
}

}  // namespace nlc
