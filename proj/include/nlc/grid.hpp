#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace nlc {

using Coord = std::array<double, 2>;
using MultiIndex = std::array<int, 2>;

/// Uniform Cartesian mesh in one or two dimensions.
///
/// A 1D grid is stored as N x 1 so that every loop can be written for two
/// axes; the unused axis has one cell and unit spacing. Flat cell indices are
/// row-major over (axis 0, axis 1): `flat = i0 * cells[1] + i1`.
struct Grid {
  int dim = 1;
  MultiIndex cells{4, 1};
  Coord origin{0.0, 0.0};
  Coord spacing{1.0, 1.0};

  /// Validated constructor from origin and spacing.
  static Grid from_spacing(int dim, MultiIndex cells, Coord origin, Coord spacing);
  /// Grid covering [lower, upper] with n cells.
  static Grid line(int n, double lower, double upper);
  /// Grid covering [lower0, upper0] x [lower1, upper1].
  static Grid plane(MultiIndex n, Coord lower, Coord upper);

  void validate() const;

  std::size_t size() const {
    return static_cast<std::size_t>(cells[0]) * static_cast<std::size_t>(cells[1]);
  }
  std::size_t flat(int i0, int i1) const {
    return static_cast<std::size_t>(i0) * static_cast<std::size_t>(cells[1]) +
           static_cast<std::size_t>(i1);
  }
  double cell_volume() const { return dim == 1 ? spacing[0] : spacing[0] * spacing[1]; }
  double lower(int axis) const { return origin[axis]; }
  double upper(int axis) const { return origin[axis] + cells[axis] * spacing[axis]; }
  double half_width(int axis) const { return 0.5 * cells[axis] * spacing[axis]; }
  double max_spacing() const;
  double min_spacing() const;
  /// Center coordinate along one axis, no bounds check.
  double center(int axis, int i) const { return origin[axis] + (i + 0.5) * spacing[axis]; }

  bool operator==(const Grid&) const = default;
};

/// Coordinates of the center of a cell.
Coord cell_center(const Grid& grid, MultiIndex index);

/// Axis-aligned box spanned by cell extents.
struct Box {
  Coord lo{0.0, 0.0};
  Coord hi{0.0, 0.0};
  bool contains(const Box& other) const;
};

/// Cell-average densities of m populations at a time stamp.
class DensityField {
 public:
  DensityField() = default;
  DensityField(const Grid& grid, int populations, double time = 0.0);

  const Grid& grid() const { return grid_; }
  int populations() const { return populations_; }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  std::span<double> population(int i) {
    return {values_.data() + static_cast<std::size_t>(i) * grid_.size(), grid_.size()};
  }
  std::span<const double> population(int i) const {
    return {values_.data() + static_cast<std::size_t>(i) * grid_.size(), grid_.size()};
  }
  double& at(int pop, std::size_t cell) { return values_[pop * grid_.size() + cell]; }
  double at(int pop, std::size_t cell) const { return values_[pop * grid_.size() + cell]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool all_finite() const;

 private:
  Grid grid_{};
  int populations_ = 0;
  double time_ = 0.0;
  std::vector<double> values_;
};

/// n x m vectors per cell (velocities, convolved gradients), laid out as
/// [population][axis][cell].
class VectorField {
 public:
  VectorField() = default;
  VectorField(const Grid& grid, int populations);

  const Grid& grid() const { return grid_; }
  int populations() const { return populations_; }
  int dim() const { return grid_.dim; }

  std::span<double> component(int pop, int axis) {
    return {data_.data() + slot(pop, axis), grid_.size()};
  }
  std::span<const double> component(int pop, int axis) const {
    return {data_.data() + slot(pop, axis), grid_.size()};
  }
  double& at(int pop, int axis, std::size_t cell) { return data_[slot(pop, axis) + cell]; }
  double at(int pop, int axis, std::size_t cell) const { return data_[slot(pop, axis) + cell]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  /// max over cells and populations of |component along axis|.
  double max_abs(int axis) const;
  /// max over cells and populations of the Euclidean norm of the n-vector.
  double max_norm() const;
  bool all_finite() const;

 private:
  std::size_t slot(int pop, int axis) const {
    return (static_cast<std::size_t>(pop) * grid_.dim + axis) * grid_.size();
  }
  Grid grid_{};
  int populations_ = 0;
  std::vector<double> data_;
};

using VelocityField = VectorField;
using GradientField = VectorField;

/// Signed mass per population, summed in flat-index order.
std::vector<double> total_mass(const DensityField& field);

/// Mass per population over cells whose centers lie in the closed ball.
std::vector<double> region_mass(const DensityField& field, Coord center, double radius);

/// Smallest box of cell extents containing every cell with |value| > threshold,
/// per population; nullopt when no cell qualifies.
std::vector<std::optional<Box>> support_bbox(const DensityField& field, double threshold);

/// L1 norm with the Euclidean norm over populations: sum_cells |rho(x)| dV.
double l1_norm(const DensityField& field);

/// l1_norm(a - b); grids and population counts must match.
double l1_distance(const DensityField& a, const DensityField& b);

/// Throws ConfigError unless both fields live on the same grid with the same m.
void require_compatible(const DensityField& a, const DensityField& b);

}  // namespace nlc
