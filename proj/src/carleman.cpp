#include "mfglab/carleman.hpp"

#include <cmath>
#include <string>

namespace mfglab {

double c_squared(double eps, double T, double a, double b) {
  if (!(a > 0.0) || !(b > a))
    throw std::invalid_argument("c_squared: need 0 < a < b");
  if (!(eps > 0.0) || !(eps < 0.5 * T))
    throw std::invalid_argument("c_squared: need 0 < eps < T/2");
  return (b * b - a * a) / (eps * (T - eps));
}

double rho(double a, double b) {
  if (!(a > 0.0) || !(b > a))
    throw std::invalid_argument("rho: need 0 < a < b");
  return (b * b - a * a) / (10.0 * b * b);
}

double lambda_of_delta(double delta, double b, double lambda1) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("lambda_of_delta: need 0 < delta < 1");
  if (!(b > 0.0)) throw std::invalid_argument("lambda_of_delta: need b > 0");
  const double lambda = std::log(1.0 / delta) / (5.0 * b * b);
  if (lambda < lambda1) {
    const double delta0 = std::exp(-5.0 * b * b * lambda1);
    throw DeltaTooLarge(
        "lambda_of_delta: delta = " + std::to_string(delta) +
            " too large for lambda1 = " + std::to_string(lambda1) +
            "; need delta < " + std::to_string(delta0),
        delta0);
  }
  return lambda;
}

CarlemanParams CarlemanParams::make(double lambda, double eps,
                                    const DomainSpec& dom, bool normalize,
                                    double exponent_cap,
                                    bool allow_degenerate) {
  dom.validate();
  if (lambda < 1.0 && !(allow_degenerate && lambda == 0.0))
    throw std::invalid_argument("CarlemanParams: lambda >= 1 required");
  CarlemanParams p;
  p.lambda = lambda;
  p.c2 = c_squared(eps, dom.T, dom.a, dom.b);
  p.eps = eps;
  p.rho = mfglab::rho(dom.a, dom.b);
  p.endpoint_valid = p.c2 * dom.T * dom.T / 4.0 - dom.b * dom.b > 0.0;
  p.normalize = normalize;
  p.exponent_cap = exponent_cap;
  return p;
}

double cwf_value(double x1, double t, const CarlemanParams& p, double T) {
  // Point values are the raw weight; normalization applies to integrals only
  // (see cwf_field), so both sides of a weighted inequality share the factor.
  const double e = cwf_log_value(x1, t, p, T);
  if (std::abs(e) > p.exponent_cap)
    throw std::range_error("cwf_value: exponent " + std::to_string(e) +
                           " exceeds cap " + std::to_string(p.exponent_cap));
  return std::exp(e);
}

double cwf_log_norm(const CarlemanParams& p, const DomainSpec& dom) {
  return p.normalize ? 2.0 * p.lambda * dom.b * dom.b : 0.0;
}

ScalarField cwf_field(const GridPtr& grid, const CarlemanParams& p) {
  const double T = grid->domain().T;
  const double log_norm = cwf_log_norm(p, grid->domain());
  ScalarField out(grid);
  std::size_t idx = 0;
  for (int it = 0; it < grid->nt(); ++it) {
    for (int i2 = 0; i2 < grid->nx2(); ++i2)
      for (int i1 = 0; i1 < grid->nx1(); ++i1, ++idx) {
        const double e = cwf_log_value(grid->x1(i1), grid->t(it), p, T) -
                         log_norm;
        if (std::abs(e) > p.exponent_cap)
          throw std::range_error("cwf_field: exponent " + std::to_string(e) +
                                 " exceeds cap " +
                                 std::to_string(p.exponent_cap));
        out.values[idx] = std::exp(e);
      }
  }
  return out;
}

}  // namespace mfglab
