#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nlc/grid.hpp"
#include "nlc/kernel.hpp"
#include "nlc/scheme.hpp"
#include "nlc/velocity.hpp"

namespace nlc {

/// Everything needed to reproduce an encryption: kernel, velocity law,
/// horizon, grid, and the numerical scheme.
struct CryptKey {
  KernelSpec kernel;
  VelocityModel model = VelocityModel::saturating(1);
  double horizon = 1.0;
  Grid grid;
  SchemeConfig scheme;

  void validate() const;
  /// Same key with the velocity sign flipped.
  CryptKey flipped() const;
};

CryptKey parse_key(std::string_view text);
CryptKey load_key(const std::filesystem::path& path);
std::string key_to_string(const CryptKey& key);

/// Forward evolution by the key's horizon.
DensityField encrypt(const DensityField& payload, const CryptKey& key);
/// Backward evolution by the key's horizon (velocity negated).
DensityField decrypt(const DensityField& cipher, const CryptKey& key);

struct RoundtripReport {
  double original_l1 = 0.0;
  double cipher_l1 = 0.0;
  double decrypted_l1 = 0.0;
  double absolute_error = 0.0;
  double relative_error = 0.0;
};

RoundtripReport roundtrip_report(const DensityField& original, const DensityField& decrypted,
                                 const DensityField& cipher);
std::string roundtrip_csv(const RoundtripReport& report);

/// Warning text when the payload support fits inside the kernel plateau,
/// which makes the key an identity map.
std::optional<std::string> key_quality_warning(const DensityField& payload, const CryptKey& key);

DensityField ingest_payload_1d(const std::vector<double>& samples, const Grid& grid);
/// channels[c][row][col]; rows run along axis 0, columns along axis 1. Each
/// channel becomes one population.
DensityField ingest_payload_2d(const std::vector<std::vector<std::vector<double>>>& channels,
                               const Grid& grid);

}  // namespace nlc
