#include "mfglab/banded.hpp"

#include <stdexcept>
#include <string>

#include <lapacke.h>

namespace mfglab {

BandedLU::BandedLU(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1),
      ab_(static_cast<std::size_t>(ldab_) * n, 0.0), ipiv_(n, 0) {
  if (n < 1 || kl < 0 || ku < 0)
    throw std::invalid_argument("BandedLU: bad dimensions");
}

void BandedLU::add(int i, int j, double v) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || i - j > kl_ || j - i > ku_)
    throw std::out_of_range("BandedLU::add outside band");
  // Column-major LAPACK band storage with kl extra rows for pivoting fill.
  ab_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)] += v;
}

void BandedLU::factor() {
  const lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n_, n_, kl_, ku_,
                                         ab_.data(), ldab_, ipiv_.data());
  if (info != 0)
    throw std::runtime_error("BandedLU: dgbtrf failed with info " +
                             std::to_string(info));
  factored_ = true;
}

void BandedLU::solve(std::span<double> rhs) const {
  if (!factored_) throw std::logic_error("BandedLU: solve before factor");
  if (static_cast<int>(rhs.size()) != n_)
    throw std::invalid_argument("BandedLU: rhs size mismatch");
  const lapack_int info =
      LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n_, kl_, ku_, 1, ab_.data(), ldab_,
                     ipiv_.data(), rhs.data(), n_);
  if (info != 0)
    throw std::runtime_error("BandedLU: dgbtrs failed with info " +
                             std::to_string(info));
}

}  // namespace mfglab
