#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mfglab/carleman.hpp"
#include "mfglab/cauchy.hpp"

namespace mfglab {

enum class Theorem { ParabolicMinus, ParabolicPlus };  // dt - aLap / dt + aLap

inline const char* theorem_label(Theorem t) {
  return t == Theorem::ParabolicMinus ? "3.1" : "3.2";
}

/// The five right-hand-side groups of the estimate, each without the
/// constant C (that constant is what the verifier fits). All weighted
/// integrals share the normalization of the params.
struct CarlemanComponents {
  double ut_sq = 0;             // int u_t^2 psi
  double hess_sq = 0;           // sum_{i,j} int u_{x_i x_j}^2 psi
  double grad_zero = 0;         // int (lambda |grad u|^2 + lambda^3 u^2) psi
  double boundary_deficit = 0;  // (||du/dnu||^2_{H10} + ||u||^2_{H21}) e^{3 lambda b^2}
  double endpoint_deficit = 0;  // (H1 norms at t=0,T) exp(-2 lambda (c^2T^2/4 - b^2))
};

/// int (u_t -/+ alpha Lap u)^2 psi over Q_T.
double carleman_lhs(const ScalarField& u, Theorem thm,
                    const CarlemanParams& params);

CarlemanComponents carleman_rhs_components(const ScalarField& u,
                                           const CarlemanParams& params);

struct CarlemanCell {
  double lhs = 0;
  CarlemanComponents comps;
  double denom = 0;   // ut/lambda + hess/lambda + grad_zero - deficits
  double ratio = 0;   // lhs / denom where denom > 0
  bool skipped = false;
};

struct CarlemanReport {
  std::string theorem;
  std::vector<double> lambda_grid;
  std::vector<std::vector<CarlemanCell>> cells;  // [member][lambda]
  double c_star = 0;            // min ratio over family for lambda >= lambda0
  double lambda0_estimate = 0;  // smallest grid lambda with stable positive ratios
  bool lambda0_found = false;
  bool endpoint_valid = false;
  double eps = 0;
  double c2 = 0;
};

/// Runs the estimate over a family and a lambda grid. The family must share
/// one grid. eps fixes c^2 via the stability parameter rule.
CarlemanReport verify_estimate(Theorem thm,
                               const std::vector<ScalarField>& family,
                               const std::vector<double>& lambda_grid,
                               double eps, bool normalize = true,
                               double exponent_cap = 700.0);

/// Test family: tensor polynomial x trigonometric bumps plus seeded smooth
/// random fields, all vanishing to second order near S_T and t in {0, T}.
std::vector<ScalarField> make_verification_family(const GridPtr& grid,
                                                  int count,
                                                  std::uint64_t seed);
/// Companion family with active traces (exercises the boundary deficit).
std::vector<ScalarField> make_boundary_family(const GridPtr& grid, int count,
                                              std::uint64_t seed);

/// u(x, T - t) for every member; maps one parabolic operator to the other.
ScalarField time_reversed(const ScalarField& u);

void write_carleman_report_json(const CarlemanReport& r,
                                const std::string& path);
void write_carleman_report_csv(const CarlemanReport& r,
                               const std::string& path);

}  // namespace mfglab
