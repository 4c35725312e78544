#pragma once

#include <span>
#include <vector>

namespace mfglab {

/// General banded matrix with LU factorization (LAPACK dgbtrf/dgbtrs).
class BandedLU {
 public:
  BandedLU(int n, int kl, int ku);

  /// Accumulates v into A(i,j); |i - j| must be within the band.
  void add(int i, int j, double v);

  void factor();
  /// Solves A x = rhs in place. Requires factor() first.
  void solve(std::span<double> rhs) const;

  int size() const { return n_; }

 private:
  int n_, kl_, ku_, ldab_;
  std::vector<double> ab_;
  std::vector<int> ipiv_;
  bool factored_ = false;
};

}  // namespace mfglab
