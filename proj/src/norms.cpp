#include "mfglab/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "mfglab/fd_ops.hpp"

namespace mfglab {

double integrate(const ScalarField& f) {
  const auto w = f.grid->node_weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * w[i];
  return s;
}

double integrate_product(const ScalarField& f, const ScalarField& g) {
  if (f.size() != g.size())
    throw std::invalid_argument("integrate_product: size mismatch");
  const auto w = f.grid->node_weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i] * w[i];
  return s;
}

H21Terms h21_terms(const ScalarField& f) {
  ScalarField acc(f.grid, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) acc.values[i] = f[i] * f[i];
  for (const auto& gi : grad(f))
    for (std::size_t i = 0; i < f.size(); ++i)
      acc.values[i] += gi[i] * gi[i];
  const ScalarField hsq = hessian(f).sum_of_squares();
  axpy(1.0, hsq, acc);
  const ScalarField ft = d_t(f);
  for (std::size_t i = 0; i < f.size(); ++i)
    acc.values[i] += ft[i] * ft[i];
  return {std::move(acc)};
}

double norm_h21_from_terms(const H21Terms& terms, const RegionMask& region) {
  if (region.count == 0)
    throw std::invalid_argument("norm_h21_cylinder: empty region");
  const auto& f = terms.sq_sum;
  const auto w = f.grid->node_weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (region.inside[i]) s += f[i] * w[i];
  return std::sqrt(s);
}

double norm_h21_cylinder(const ScalarField& f, const RegionMask& region) {
  return norm_h21_from_terms(h21_terms(f), region);
}

double h1_slice_norm_sq(const ScalarField& f, int time_index) {
  const Grid& g = *f.grid;
  const auto s = f.slice(time_index);
  const auto w = g.spatial_weights();
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) acc += s[i] * s[i] * w[i];
  const auto dx1 = slice_deriv(g, s, Axis::X1, 1);
  for (std::size_t i = 0; i < s.size(); ++i) acc += dx1[i] * dx1[i] * w[i];
  if (g.domain().n == 2) {
    const auto dx2 = slice_deriv(g, s, Axis::X2, 1);
    for (std::size_t i = 0; i < s.size(); ++i) acc += dx2[i] * dx2[i] * w[i];
  }
  return acc;
}

}  // namespace mfglab
