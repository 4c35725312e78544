#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mfglab/carleman.hpp"
#include "mfglab/cauchy.hpp"
#include "mfglab/mfg_forward.hpp"

namespace mfglab {

struct ReconWeights {
  double gamma = 0.0;  // boundary-data penalty
  double beta = 0.0;   // Tikhonov seminorm weight
};

struct ObjectiveParts {
  double residual_bellman = 0;  // int ResB^2 psi
  double residual_fp = 0;       // int ResF^2 psi
  double data_misfit = 0;       // gamma * sum of squared lateral misfits
  double regularization = 0;    // beta * (H^2 seminorms)
  double total = 0;
  // Lateral misfit norms (not squared), ordered g0, g1, p0, p1.
  std::array<double, 4> misfit_norms{};
};

/// J = int (ResB^2 + ResF^2) psi + gamma * sum_4 ||trace misfit||^2
///   + beta * (|u|_{H2}^2 + |m|_{H2}^2), with the (4.11) norms on the
/// misfits and the spatial Hessian seminorm in the beta term.
double assemble_objective(const ScalarField& u, const ScalarField& m,
                          const CauchyData& data, const CarlemanParams& params,
                          const ReconWeights& weights,
                          const InteractionSpec& spec, const SpatialField& k,
                          ObjectiveParts* parts = nullptr);

/// Exact gradient of the discrete objective (transpose-of-stencil assembly).
void objective_gradient(const ScalarField& u, const ScalarField& m,
                        const CauchyData& data, const CarlemanParams& params,
                        const ReconWeights& weights,
                        const InteractionSpec& spec, const SpatialField& k,
                        ScalarField& grad_u, ScalarField& grad_m);

enum class InitKind { Zero, Truth, Random };

enum class StopReason { GradTol, Stagnation, MaxIters, LineSearchFail };

struct ReconOptions {
  // Negative entries select the defaults: gamma = gamma_scale / mean cell
  // volume, beta = beta_scale * J at the initial iterate (residual + data).
  ReconWeights weights{-1.0, -1.0};
  double gamma_scale = 1e4;
  double beta_scale = 1e-8;
  int max_iters = 2000;
  double grad_tol = 1e-6;  // absolute threshold on the sup-norm gradient
  int lbfgs_memory = 10;
  InitKind init = InitKind::Zero;
  std::uint64_t random_seed = 1;
  const MFGSolution* truth = nullptr;  // required for InitKind::Truth
};

struct ReconstructionResult {
  MFGSolution solution;
  std::vector<double> objective_history;  // one entry per accepted iterate
  std::array<double, 4> boundary_misfit{};  // g0, g1, p0, p1 norms
  double weighted_residual_bellman = 0;
  double weighted_residual_fp = 0;
  int iterations = 0;
  bool converged = false;  // gradient tolerance reached
  bool diverged = false;   // line search exhausted without decrease
  StopReason stop_reason = StopReason::MaxIters;
  double final_grad_norm = 0;
  double gamma_used = 0, beta_used = 0, lambda_used = 0;
};

/// Projected quasi-Newton descent on the Carleman-weighted functional; the
/// iterates stay in the a-priori box |u| <= R4, |m| <= R5.
ReconstructionResult reconstruct(const CauchyData& data,
                                 const CarlemanParams& params,
                                 const AprioriBounds& bounds,
                                 const InteractionSpec& spec,
                                 const SpatialField& k,
                                 const ReconOptions& opts);

/// Measured constant of the transverse-slice bound: the ratio
/// int (int_{Omega_1} |m| dy)^2 psi / int m^2 psi, together with the
/// Cauchy-Schwarz bound |Omega_1|^2 it must not exceed. n == 2 only.
struct SliceBoundCheck {
  double ratio = 0;
  double bound = 0;
};
SliceBoundCheck carleman_slice_bound(const ScalarField& m,
                                     const CarlemanParams& params);

}  // namespace mfglab
