#pragma once

#include <span>
#include <vector>

#include "mfglab/domain.hpp"

namespace mfglab {

/// A scalar function sampled at every space-time node of a grid.
/// Value-semantic; the grid is shared and immutable.
struct ScalarField {
  GridPtr grid;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(GridPtr g, double fill = 0.0)
      : grid(std::move(g)), values(grid->num_nodes(), fill) {}
  ScalarField(GridPtr g, std::vector<double> v)
      : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid->num_nodes())
      throw std::invalid_argument("ScalarField: size mismatch with grid");
  }

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }

  /// Contiguous spatial slice at time index it.
  std::span<double> slice(int it) {
    return {values.data() + static_cast<std::size_t>(it) * grid->num_spatial(),
            grid->num_spatial()};
  }
  std::span<const double> slice(int it) const {
    return {values.data() + static_cast<std::size_t>(it) * grid->num_spatial(),
            grid->num_spatial()};
  }

  bool all_finite() const;
  double max_abs() const;
};

/// Evaluates f(x1, x2, t) at every node.
template <typename F>
ScalarField make_field(const GridPtr& grid, F&& f) {
  ScalarField out(grid);
  std::size_t idx = 0;
  for (int it = 0; it < grid->nt(); ++it)
    for (int i2 = 0; i2 < grid->nx2(); ++i2)
      for (int i1 = 0; i1 < grid->nx1(); ++i1, ++idx)
        out.values[idx] = f(grid->x1(i1), grid->x2(i2), grid->t(it));
  return out;
}

/// A time-independent coefficient sampled on the spatial slice (k(x) etc).
struct SpatialField {
  GridPtr grid;
  std::vector<double> values;

  SpatialField() = default;
  explicit SpatialField(GridPtr g, double fill = 0.0)
      : grid(std::move(g)), values(grid->num_spatial(), fill) {}
  SpatialField(GridPtr g, std::vector<double> v)
      : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid->num_spatial())
      throw std::invalid_argument("SpatialField: size mismatch with grid");
  }

  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
};

template <typename F>
SpatialField make_spatial_field(const GridPtr& grid, F&& f) {
  SpatialField out(grid);
  std::size_t idx = 0;
  for (int i2 = 0; i2 < grid->nx2(); ++i2)
    for (int i1 = 0; i1 < grid->nx1(); ++i1, ++idx)
      out.values[idx] = f(grid->x1(i1), grid->x2(i2));
  return out;
}

// Elementwise helpers used throughout the solvers.
void axpy(double a, const ScalarField& x, ScalarField& y);  // y += a*x
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);

}  // namespace mfglab
