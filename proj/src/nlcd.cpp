#include "nlc/nlcd.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "nlc/error.hpp"

namespace nlc {
namespace {

template <typename T>
void put(std::ostream& out, T value) {
  static_assert(sizeof(T) == 4 || sizeof(T) == 8);
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  U bits = std::bit_cast<U>(value);
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t k = 0; k < sizeof(T); ++k) {
    bytes[k] = static_cast<char>((bits >> (8 * k)) & 0xFFu);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get(std::istream& in) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw IoError("NLCD stream truncated");
  U bits = 0;
  for (std::size_t k = 0; k < sizeof(T); ++k) bits |= static_cast<U>(bytes[k]) << (8 * k);
  return std::bit_cast<T>(bits);
}

}  // namespace

void write_nlcd(std::ostream& out, const DensityField& field) {
  const Grid& g = field.grid();
  out.write("NLCD", 4);
  put<std::uint32_t>(out, kNlcdVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(field.populations()));
  for (int a = 0; a < g.dim; ++a) put<std::uint32_t>(out, static_cast<std::uint32_t>(g.cells[a]));
  for (int a = 0; a < g.dim; ++a) put<double>(out, g.origin[a]);
  for (int a = 0; a < g.dim; ++a) put<double>(out, g.spacing[a]);
  put<double>(out, field.time());
  if constexpr (std::endian::native == std::endian::little) {
    auto v = field.values();
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
  } else {
    for (double v : field.values()) put<double>(out, v);
  }
  if (!out) throw IoError("failed writing NLCD stream");
}

DensityField read_nlcd(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "NLCD", 4) != 0) throw IoError("not an NLCD stream (bad magic)");
  const auto version = get<std::uint32_t>(in);
  if (version != kNlcdVersion) {
    throw IoError("unsupported NLCD version " + std::to_string(version));
  }
  const auto dim = static_cast<int>(get<std::uint32_t>(in));
  if (dim != 1 && dim != 2) throw IoError("NLCD dimension must be 1 or 2");
  const auto m = static_cast<int>(get<std::uint32_t>(in));
  MultiIndex cells{1, 1};
  Coord origin{0.0, 0.0};
  Coord spacing{1.0, 1.0};
  for (int a = 0; a < dim; ++a) cells[a] = static_cast<int>(get<std::uint32_t>(in));
  for (int a = 0; a < dim; ++a) origin[a] = get<double>(in);
  for (int a = 0; a < dim; ++a) spacing[a] = get<double>(in);
  const double time = get<double>(in);
  DensityField field(Grid::from_spacing(dim, cells, origin, spacing), m, time);
  auto v = field.values();
  if constexpr (std::endian::native == std::endian::little) {
    in.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (!in) throw IoError("NLCD stream truncated");
  } else {
    for (double& x : v) x = get<double>(in);
  }
  return field;
}

void write_nlcd(const std::filesystem::path& path, const DensityField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_nlcd(out, field);
}

DensityField read_nlcd(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_nlcd(in);
}

}  // namespace nlc
