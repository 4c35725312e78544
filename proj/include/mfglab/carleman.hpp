#pragma once

#include <stdexcept>

#include "mfglab/field.hpp"

namespace mfglab {

/// delta exceeded the largest value admissible for the requested lambda1
/// threshold; carries that bound.
struct DeltaTooLarge : std::invalid_argument {
  DeltaTooLarge(const std::string& msg, double max_delta)
      : std::invalid_argument(msg), delta0(max_delta) {}
  double delta0;
};

/// c^2 = (b^2 - a^2) / (eps (T - eps)). Requires 0 < eps < T/2, 0 < a < b.
double c_squared(double eps, double T, double a, double b);

/// Hoelder exponent rho = (b^2 - a^2) / (10 b^2), in (0, 1/10) for 0 < a < b.
double rho(double a, double b);

/// lambda(delta) = ln(1/delta) / (5 b^2), the choice that makes
/// delta^2 exp(5 lambda b^2) = delta. Throws DeltaTooLarge when
/// lambda(delta) < lambda1; pass lambda1 = 0 to disable the gate.
double lambda_of_delta(double delta, double b, double lambda1);

/// Parameters of the weight psi_lambda(x1,t) = exp(2 lambda (x1^2 - c^2 (t - T/2)^2)).
struct CarlemanParams {
  double lambda = 1.0;
  double c2 = 1.0;
  double eps = 0.0;
  double rho = 0.0;            // (b^2 - a^2) / (10 b^2) of the domain
  bool endpoint_valid = false; // c^2 T^2/4 - b^2 > 0
  bool normalize = true;       // divide by max psi = psi(b, T/2)
  double exponent_cap = 700.0;

  /// Builds params with c2 from c_squared(eps, T, a, b). lambda >= 1 unless
  /// allow_degenerate (lambda = 0 gives the constant weight, test use only).
  static CarlemanParams make(double lambda, double eps, const DomainSpec& dom,
                             bool normalize = true, double exponent_cap = 700.0,
                             bool allow_degenerate = false);
};

/// log psi_lambda before normalization.
inline double cwf_log_value(double x1, double t, const CarlemanParams& p,
                            double T) {
  const double s = t - 0.5 * T;
  return 2.0 * p.lambda * (x1 * x1 - p.c2 * s * s);
}

/// Raw psi_lambda at a point. Throws std::range_error when |exponent|
/// exceeds the cap.
double cwf_value(double x1, double t, const CarlemanParams& p, double T);

/// Weight evaluated at every grid node, divided by max psi = psi(b, T/2)
/// when p.normalize is set.
ScalarField cwf_field(const GridPtr& grid, const CarlemanParams& p);

/// log of the factor the normalization divides out (2 lambda b^2, or 0).
double cwf_log_norm(const CarlemanParams& p, const DomainSpec& dom);

}  // namespace mfglab
