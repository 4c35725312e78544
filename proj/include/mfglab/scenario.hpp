#pragma once

#include "mfglab/config.hpp"
#include "mfglab/expr.hpp"
#include "mfglab/mfg_forward.hpp"
#include "mfglab/reconstruct.hpp"

namespace mfglab {

/// A fully specified experiment: domain, grid, coefficients (as expressions),
/// bounds, Carleman policy, reconstruction and sweep settings.
struct Scenario {
  std::string id;
  DomainSpec domain;
  int nx1 = 41, nx2 = 1, nt = 41;

  InteractionSpec interaction;
  AprioriBounds bounds;
  ExprPtr k_expr;            // coefficient k(x)
  ExprPtr u_terminal_expr;   // u(x, T)
  ExprPtr m_initial_expr;    // m(x, 0)
  ExprPtr u_dirichlet_expr;  // u on S_T
  ExprPtr m_dirichlet_expr;  // m on S_T
  PicardOptions picard;

  // Carleman policy.
  double eps = 0.125;       // carleman.eps
  double lambda = 5.0;      // carleman.lambda (used when delta gives no rule)
  double lambda1 = 5.0;     // lower clip / "sufficiently large" threshold
  double lambda_max = 40.0; // upper clip for lambda(delta)
  bool normalize = true;
  double exponent_cap = 700.0;

  ReconOptions recon;

  // Sweep settings.
  std::vector<double> deltas{1e-2, 1e-3, 1e-4};
  std::uint64_t seed = 1;
  double slope_tol = 0.02;
  double floor_factor = 5.0;

  static Scenario from_config(const Config& cfg);

  /// Grid with counts scaled as n -> (n-1)*refine + 1 (refine = 1: as given).
  GridPtr make_grid(int refine = 1) const;

  /// Evaluates the coefficient expressions on a grid.
  PicardProblem make_problem(const GridPtr& grid) const;

  /// lambda(delta) clipped to [lambda1, lambda_max]; scenario lambda when
  /// delta == 0.
  double lambda_policy(double delta) const;
};

}  // namespace mfglab
