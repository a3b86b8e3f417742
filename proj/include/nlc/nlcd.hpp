#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "nlc/grid.hpp"

namespace nlc {

/// Version written into every NLCD header.
inline constexpr std::uint32_t kNlcdVersion = 1;

/// Grid dump layout (all little-endian):
///   'N' 'L' 'C' 'D' | u32 version | u32 dim | u32 m | u32 cells[dim]
///   | f64 origin[dim] | f64 spacing[dim] | f64 time | f64 values[m][cells]
/// Population arrays use the grid's row-major flat order.
void write_nlcd(std::ostream& out, const DensityField& field);
DensityField read_nlcd(std::istream& in);

void write_nlcd(const std::filesystem::path& path, const DensityField& field);
DensityField read_nlcd(const std::filesystem::path& path);

}  // namespace nlc
