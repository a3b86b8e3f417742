#include "nlc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlc/error.hpp"

namespace nlc {

Grid Grid::from_spacing(int dim, MultiIndex cells, Coord origin, Coord spacing) {
  Grid g;
  g.dim = dim;
  g.cells = cells;
  g.origin = origin;
  g.spacing = spacing;
  if (dim == 1) {
    g.cells[1] = 1;
    g.origin[1] = 0.0;
    g.spacing[1] = 1.0;
  }
  g.validate();
  return g;
}

Grid Grid::line(int n, double lower, double upper) {
  return from_spacing(1, {n, 1}, {lower, 0.0}, {(upper - lower) / n, 1.0});
}

Grid Grid::plane(MultiIndex n, Coord lower, Coord upper) {
  return from_spacing(2, n, lower,
                      {(upper[0] - lower[0]) / n[0], (upper[1] - lower[1]) / n[1]});
}

void Grid::validate() const {
  if (dim != 1 && dim != 2) {
    throw ParameterError("grid dimension must be 1 or 2, got " + std::to_string(dim));
  }
  for (int a = 0; a < dim; ++a) {
    if (cells[a] < 4) {
      throw ParameterError("grid needs at least 4 cells per axis, axis " + std::to_string(a) +
                           " has " + std::to_string(cells[a]));
    }
    if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a]) || !std::isfinite(origin[a])) {
      throw ParameterError("grid spacing must be finite and positive on axis " +
                           std::to_string(a));
    }
  }
  if (dim == 1 && cells[1] != 1) {
    throw ParameterError("1D grid must have a single cell on the unused axis");
  }
}

double Grid::max_spacing() const {
  return dim == 1 ? spacing[0] : std::max(spacing[0], spacing[1]);
}

double Grid::min_spacing() const {
  return dim == 1 ? spacing[0] : std::min(spacing[0], spacing[1]);
}

Coord cell_center(const Grid& grid, MultiIndex index) {
  Coord c{0.0, 0.0};
  for (int a = 0; a < grid.dim; ++a) {
    if (index[a] < 0 || index[a] >= grid.cells[a]) {
      throw BoundsError("cell index " + std::to_string(index[a]) + " out of range [0, " +
                        std::to_string(grid.cells[a]) + ") on axis " + std::to_string(a));
    }
    c[a] = grid.center(a, index[a]);
  }
  return c;
}

bool Box::contains(const Box& other) const {
  return other.lo[0] >= lo[0] && other.hi[0] <= hi[0] && other.lo[1] >= lo[1] &&
         other.hi[1] <= hi[1];
}

DensityField::DensityField(const Grid& grid, int populations, double time)
    : grid_(grid), populations_(populations), time_(time) {
  grid_.validate();
  if (populations < 1) {
    throw ParameterError("a density field needs at least one population");
  }
  values_.assign(static_cast<std::size_t>(populations) * grid_.size(), 0.0);
}

bool DensityField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

VectorField::VectorField(const Grid& grid, int populations)
    : grid_(grid), populations_(populations) {
  data_.assign(static_cast<std::size_t>(populations) * grid.dim * grid.size(), 0.0);
}

double VectorField::max_abs(int axis) const {
  double m = 0.0;
  for (int p = 0; p < populations_; ++p) {
    for (double v : component(p, axis)) m = std::max(m, std::abs(v));
  }
  return m;
}

double VectorField::max_norm() const {
  double m = 0.0;
  for (int p = 0; p < populations_; ++p) {
    for (std::size_t c = 0; c < grid_.size(); ++c) {
      double s = 0.0;
      for (int a = 0; a < grid_.dim; ++a) s += at(p, a, c) * at(p, a, c);
      m = std::max(m, std::sqrt(s));
    }
  }
  return m;
}

bool VectorField::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

std::vector<double> total_mass(const DensityField& field) {
  const double vol = field.grid().cell_volume();
  std::vector<double> mass(field.populations(), 0.0);
  for (int p = 0; p < field.populations(); ++p) {
    double s = 0.0;
    for (double v : field.population(p)) s += v;
    mass[p] = s * vol;
  }
  return mass;
}

std::vector<double> region_mass(const DensityField& field, Coord center, double radius) {
  if (!(radius > 0.0)) throw ParameterError("region radius must be positive");
  const Grid& g = field.grid();
  const double r2 = radius * radius;
  std::vector<double> mass(field.populations(), 0.0);
  for (int p = 0; p < field.populations(); ++p) {
    auto rho = field.population(p);
    double s = 0.0;
    for (int i = 0; i < g.cells[0]; ++i) {
      const double dx = g.center(0, i) - center[0];
      for (int j = 0; j < g.cells[1]; ++j) {
        const double dy = g.dim == 2 ? g.center(1, j) - center[1] : 0.0;
        if (dx * dx + dy * dy <= r2) s += rho[g.flat(i, j)];
      }
    }
    mass[p] = s * g.cell_volume();
  }
  return mass;
}

std::vector<std::optional<Box>> support_bbox(const DensityField& field, double threshold) {
  if (!(threshold >= 0.0)) throw ParameterError("support threshold must be >= 0");
  const Grid& g = field.grid();
  std::vector<std::optional<Box>> out(field.populations());
  for (int p = 0; p < field.populations(); ++p) {
    auto rho = field.population(p);
    MultiIndex lo{g.cells[0], g.cells[1]};
    MultiIndex hi{-1, -1};
    for (int i = 0; i < g.cells[0]; ++i) {
      for (int j = 0; j < g.cells[1]; ++j) {
        if (std::abs(rho[g.flat(i, j)]) > threshold) {
          lo = {std::min(lo[0], i), std::min(lo[1], j)};
          hi = {std::max(hi[0], i), std::max(hi[1], j)};
        }
      }
    }
    if (hi[0] < 0) continue;
    Box b;
    for (int a = 0; a < g.dim; ++a) {
      b.lo[a] = g.origin[a] + lo[a] * g.spacing[a];
      b.hi[a] = g.origin[a] + (hi[a] + 1) * g.spacing[a];
    }
    out[p] = b;
  }
  return out;
}

double l1_norm(const DensityField& field) {
  const Grid& g = field.grid();
  const int m = field.populations();
  double s = 0.0;
  for (std::size_t c = 0; c < g.size(); ++c) {
    if (m == 1) {
      s += std::abs(field.at(0, c));
    } else {
      double q = 0.0;
      for (int p = 0; p < m; ++p) q += field.at(p, c) * field.at(p, c);
      s += std::sqrt(q);
    }
  }
  return s * g.cell_volume();
}

void require_compatible(const DensityField& a, const DensityField& b) {
  if (!(a.grid() == b.grid()) || a.populations() != b.populations()) {
    throw ConfigError("density fields live on different grids or population counts");
  }
}

double l1_distance(const DensityField& a, const DensityField& b) {
  require_compatible(a, b);
  const Grid& g = a.grid();
  const int m = a.populations();
  double s = 0.0;
  for (std::size_t c = 0; c < g.size(); ++c) {
    if (m == 1) {
      s += std::abs(a.at(0, c) - b.at(0, c));
    } else {
      double q = 0.0;
      for (int p = 0; p < m; ++p) {
        const double d = a.at(p, c) - b.at(p, c);
        q += d * d;
      }
      s += std::sqrt(q);
    }
  }
  return s * g.cell_volume();
}

}  // namespace nlc
