#pragma once

#include <functional>

#include "mfglab/expr.hpp"
#include "mfglab/field.hpp"

namespace mfglab {

/// A-priori bound constants of the admissible set: R1 bounds |G1|, R2 bounds
/// |P_z1| and |P_z2|, R3 bounds ||k||_C1, R4 boxes (u, grad u, Delta u), R5
/// boxes (m, grad m).
struct AprioriBounds {
  double R1 = 1.0, R2 = 1.0, R3 = 1.0, R4 = 10.0, R5 = 10.0;
  double R() const;
};

/// Interaction term P(x,t,z1,z2) with its z-partials, and the kernel factor
/// G1. For n == 2 the kernel acts through the transverse-slice integral; for
/// n == 1 it degenerates to a pointwise multiplier G1(x1) m(x1,t).
struct InteractionSpec {
  std::function<double(double x1, double x2, double t, double z1, double z2)>
      P, P_z1, P_z2;
  std::function<double(double x1, double x2, double y2)> G1;
  bool local = true;  // G1 identically zero
  double R1 = 1.0;
  double R2 = 1.0;

  static InteractionSpec from_expressions(const std::string& P_text,
                                          const std::string& G1_text,
                                          double R1, double R2);
};

/// One time slice of the nonlocal term z1(x) = int_{Omega_1} G1(x, y2)
/// m(x1, y2, t) dy2 (n=2), or G1(x1) m(x1, t) (n=1).
std::vector<double> nonlocal_slice(const ScalarField& m,
                                   const InteractionSpec& spec, int it);
/// The nonlocal term on the whole cylinder.
ScalarField nonlocal_field(const ScalarField& m, const InteractionSpec& spec);
/// Euclidean adjoint of the (linear) map m -> nonlocal_field(m).
ScalarField nonlocal_field_adjoint(const ScalarField& r,
                                   const InteractionSpec& spec);

/// Samples |G1| and |P_z1|, |P_z2| over the grid and a z-range; throws when a
/// sampled value exceeds the declared bound (checked preconditions 2.11/4.3).
void check_interaction_bounds(const InteractionSpec& spec, const Grid& grid,
                              double z_range);

}  // namespace mfglab
