#pragma once

#include <memory>
#include <optional>
#include <stdexcept>

#include "mfglab/banded.hpp"
#include "mfglab/cauchy.hpp"
#include "mfglab/interaction.hpp"

namespace mfglab {

/// Raised when a marching solve leaves the a-priori box by the blow-up
/// factor; carries the offending time index and value.
struct BlowUpError : std::runtime_error {
  BlowUpError(const std::string& msg, int time_idx, double value)
      : std::runtime_error(msg), time_index(time_idx), max_value(value) {}
  int time_index;
  double max_value;
};

/// Shared implicit step operator (I - ht alpha Lap_h) on interior spatial
/// nodes, factored once per grid. Dirichlet couplings move to the right side.
class ImplicitDiffusion {
 public:
  ImplicitDiffusion(GridPtr grid, double alpha);

  /// One implicit step. rhs_interior holds, per interior node, the explicit
  /// part (previous value + ht * explicit terms). new_slice supplies the
  /// Dirichlet values at boundary positions on entry and receives the full
  /// solution slice on exit.
  void step(std::span<const double> rhs_interior,
            std::span<double> new_slice) const;

  int interior_count() const { return ni_; }
  /// Row of an interior node, or -1 at boundary positions.
  int row_of(int i1, int i2) const {
    return rows_[static_cast<std::size_t>(i2) * grid_->nx1() + i1];
  }

 private:
  GridPtr grid_;
  double alpha_;
  int ni_;
  std::vector<int> rows_;
  std::vector<std::size_t> spatial_of_row_;
  std::unique_ptr<BandedLU> lu_;
};

/// The coupled forward problem: coefficients, terminal/initial slices,
/// Dirichlet data, bounds, and optional manufactured sources.
struct PicardProblem {
  GridPtr grid;
  SpatialField k;
  InteractionSpec interaction;
  std::vector<double> u_terminal;  // spatial slice at t = T
  std::vector<double> m_initial;   // spatial slice at t = 0
  LateralField g0_u;               // Dirichlet data for u
  LateralField p0_m;               // Dirichlet data for m
  AprioriBounds bounds;
  const ScalarField* source_u = nullptr;
  const ScalarField* source_m = nullptr;
  double blowup_factor = 10.0;
};

struct PicardOptions {
  double theta = 0.5;  // damping of the m update
  double tol = 1e-10;
  int max_iters = 60;
};

struct MFGSolution {
  ScalarField u, m;
  int picard_iters = 0;
  double final_update_norm = 0.0;
  bool converged = false;
};

/// Backward march of u_t + alpha Lap u + (k^2/2)|grad u|^2 + P(...) + S = 0
/// from the terminal slice, implicit diffusion, explicit nonlinearity.
ScalarField solve_bellman_backward(const PicardProblem& prob,
                                   const ScalarField& m,
                                   const ImplicitDiffusion& op);

/// Forward march of m_t - alpha Lap m + div(k^2 m grad u) - S = 0 from the
/// initial slice, implicit diffusion, explicit conservative advection.
ScalarField solve_fp_forward(const PicardProblem& prob, const ScalarField& u,
                             const ImplicitDiffusion& op);

/// Damped fixed-point coupling of the two marches. Non-convergence is
/// reported in the result, never thrown.
MFGSolution picard_solve(const PicardProblem& prob, const PicardOptions& opts);

/// Largest violation of the a-priori boxes (4.5)-(4.6); 0 when inside.
double apriori_violation(const MFGSolution& sol, const AprioriBounds& bounds);

}  // namespace mfglab
