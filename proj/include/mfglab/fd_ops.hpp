#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "mfglab/field.hpp"

namespace mfglab {

// Second-order finite differences on uniform lines: centered stencils in the
// interior, one-sided 3-point (order 1) / 4-point (order 2) stencils at the
// line ends. Lines need n >= 4 nodes.

/// out[i*stride] = (D in)[i] along one line of n nodes.
void stencil_apply_line(const double* in, double* out, std::ptrdiff_t stride,
                        int n, double h, int order);
/// out += D^T in along one line; caller zeroes the output beforehand.
void stencil_scatter_line(const double* in, double* out, std::ptrdiff_t stride,
                          int n, double h, int order);

/// Derivative of given order along one axis of the space-time grid.
ScalarField apply_axis(const ScalarField& f, Axis ax, int order);
/// Euclidean transpose of apply_axis (adjoint w.r.t. the unweighted node
/// inner product).
ScalarField apply_axis_transpose(const ScalarField& f, Axis ax, int order);

ScalarField d_t(const ScalarField& f);
std::vector<ScalarField> grad(const ScalarField& f);  // spatial components
ScalarField laplacian(const ScalarField& f);
ScalarField laplacian_transpose(const ScalarField& f);

/// Spatial Hessian; for n == 2 the mixed entry is stored once and counts
/// twice in |D^2 f|^2.
struct HessianFields {
  std::vector<ScalarField> comps;  // n=1: [f_11]; n=2: [f_11, f_22, f_12]
  std::vector<double> multiplicity;

  /// Sum_{i,j} f_{x_i x_j}^2 per node.
  ScalarField sum_of_squares() const;
};
HessianFields hessian(const ScalarField& f);

/// Derivatives of a single spatial slice (used by the time-marching solvers).
std::vector<double> slice_deriv(const Grid& grid, std::span<const double> s,
                                Axis ax, int order);

}  // namespace mfglab
