#include "mfglab/field.hpp"

#include <cmath>
#include <stdexcept>

namespace mfglab {

bool ScalarField::all_finite() const {
  for (double v : values)
    if (!std::isfinite(v)) return false;
  return true;
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

void axpy(double a, const ScalarField& x, ScalarField& y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: size mismatch");
  for (std::size_t i = 0; i < y.size(); ++i) y.values[i] += a * x.values[i];
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  ScalarField out = a;
  axpy(1.0, b, out);
  return out;
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  ScalarField out = a;
  axpy(-1.0, b, out);
  return out;
}

ScalarField operator*(double s, const ScalarField& a) {
  ScalarField out = a;
  for (auto& v : out.values) v *= s;
  return out;
}

}  // namespace mfglab
