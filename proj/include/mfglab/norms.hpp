#pragma once

#include "mfglab/field.hpp"

namespace mfglab {

/// Trapezoidal integral of f over the full cylinder Q_T.
double integrate(const ScalarField& f);

/// Trapezoidal integral of f * g over Q_T.
double integrate_product(const ScalarField& f, const ScalarField& g);

/// Discrete H^{2,1} norm over a node region:
/// (sum_region [f^2 + |grad f|^2 + |D^2 f|^2 + f_t^2] * cellvolume)^{1/2}.
double norm_h21_cylinder(const ScalarField& f, const RegionMask& region);

/// Same with derivative fields supplied by the caller (avoids recomputation
/// inside sweeps).
struct H21Terms {
  ScalarField sq_sum;  // f^2 + |grad f|^2 + |D^2 f|^2 + f_t^2 per node
};
H21Terms h21_terms(const ScalarField& f);
double norm_h21_from_terms(const H21Terms& terms, const RegionMask& region);

/// ||f(.,t_k)||^2_{H^1(Omega)} at one time slice (spatial trapezoid weights).
double h1_slice_norm_sq(const ScalarField& f, int time_index);

}  // namespace mfglab
