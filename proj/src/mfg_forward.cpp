#include "mfglab/mfg_forward.hpp"

#include <algorithm>
#include <cmath>

#include "mfglab/fd_ops.hpp"

namespace mfglab {

ImplicitDiffusion::ImplicitDiffusion(GridPtr grid, double alpha)
    : grid_(std::move(grid)), alpha_(alpha) {
  const Grid& g = *grid_;
  const int nx1 = g.nx1(), nx2 = g.nx2();
  rows_.assign(g.num_spatial(), -1);
  ni_ = 0;
  for (int i2 = 0; i2 < nx2; ++i2)
    for (int i1 = 0; i1 < nx1; ++i1)
      if (!g.is_spatial_boundary(i1, i2)) {
        rows_[static_cast<std::size_t>(i2) * nx1 + i1] = ni_++;
        spatial_of_row_.push_back(static_cast<std::size_t>(i2) * nx1 + i1);
      }

  const int band = g.domain().n == 2 ? nx1 - 2 : 1;
  lu_ = std::make_unique<BandedLU>(ni_, band, band);

  const double ht = g.ht();
  const double cx1 = alpha_ * ht / (g.hx1() * g.hx1());
  const double cx2 =
      g.domain().n == 2 ? alpha_ * ht / (g.hx2() * g.hx2()) : 0.0;
  for (int r = 0; r < ni_; ++r) {
    const std::size_t s = spatial_of_row_[r];
    const int i1 = static_cast<int>(s % nx1);
    const int i2 = static_cast<int>(s / nx1);
    double diag = 1.0 + 2.0 * cx1 + (g.domain().n == 2 ? 2.0 * cx2 : 0.0);
    lu_->add(r, r, diag);
    if (const int q = row_of(i1 - 1, i2); q >= 0) lu_->add(r, q, -cx1);
    if (const int q = row_of(i1 + 1, i2); q >= 0) lu_->add(r, q, -cx1);
    if (g.domain().n == 2) {
      if (const int q = row_of(i1, i2 - 1); q >= 0) lu_->add(r, q, -cx2);
      if (const int q = row_of(i1, i2 + 1); q >= 0) lu_->add(r, q, -cx2);
    }
  }
  lu_->factor();
}

void ImplicitDiffusion::step(std::span<const double> rhs_interior,
                             std::span<double> new_slice) const {
  const Grid& g = *grid_;
  const int nx1 = g.nx1();
  const double ht = g.ht();
  const double cx1 = alpha_ * ht / (g.hx1() * g.hx1());
  const double cx2 =
      g.domain().n == 2 ? alpha_ * ht / (g.hx2() * g.hx2()) : 0.0;

  std::vector<double> rhs(rhs_interior.begin(), rhs_interior.end());
  for (int r = 0; r < ni_; ++r) {
    const std::size_t s = spatial_of_row_[r];
    const int i1 = static_cast<int>(s % nx1);
    const int i2 = static_cast<int>(s / nx1);
    // Dirichlet couplings from boundary neighbors of the new slice.
    if (row_of(i1 - 1, i2) < 0) rhs[r] += cx1 * new_slice[s - 1];
    if (row_of(i1 + 1, i2) < 0) rhs[r] += cx1 * new_slice[s + 1];
    if (g.domain().n == 2) {
      if (row_of(i1, i2 - 1) < 0) rhs[r] += cx2 * new_slice[s - nx1];
      if (row_of(i1, i2 + 1) < 0) rhs[r] += cx2 * new_slice[s + nx1];
    }
  }
  lu_->solve(rhs);
  for (int r = 0; r < ni_; ++r) new_slice[spatial_of_row_[r]] = rhs[r];
}

namespace {

/// Writes the Dirichlet data of time level k into the boundary positions of
/// a spatial slice. Face ownership covers each boundary node exactly once.
void impose_dirichlet(const Grid& g, const LateralField& data, int k,
                      std::span<double> slice) {
  for (std::size_t face = 0; face < g.faces().size(); ++face) {
    const Face& f = g.faces()[face];
    for (int j = 0; j < f.tan_count; ++j)
      slice[g.face_spatial_node(f, j)] = data.at(face, j, k);
  }
}

void check_blowup(std::span<const double> slice, double bound, int time_idx,
                  const char* what) {
  double mx = 0.0;
  for (double v : slice) mx = std::max(mx, std::abs(v));
  if (!(mx <= bound) || !std::isfinite(mx))
    throw BlowUpError(std::string(what) + " blow-up at time index " +
                          std::to_string(time_idx) + ": max |value| = " +
                          std::to_string(mx) + " exceeds " +
                          std::to_string(bound),
                      time_idx, mx);
}

}  // namespace

ScalarField solve_bellman_backward(const PicardProblem& prob,
                                   const ScalarField& m,
                                   const ImplicitDiffusion& op) {
  const Grid& g = *prob.grid;
  const int nt = g.nt();
  const double ht = g.ht();
  const double bound = prob.blowup_factor * prob.bounds.R4;

  ScalarField u(prob.grid, 0.0);
  {
    auto top = u.slice(nt - 1);
    std::copy(prob.u_terminal.begin(), prob.u_terminal.end(), top.begin());
    impose_dirichlet(g, prob.g0_u, nt - 1, top);
  }

  std::vector<double> rhs(op.interior_count());
  for (int k = nt - 1; k >= 1; --k) {
    const auto uk = u.slice(k);
    const auto mk = m.slice(k);
    const auto ux1 = slice_deriv(g, uk, Axis::X1, 1);
    const auto ux2 = g.domain().n == 2 ? slice_deriv(g, uk, Axis::X2, 1)
                                       : std::vector<double>();
    const auto z1 = nonlocal_slice(m, prob.interaction, k);
    const double tk = g.t(k);

    int r = 0;
    for (int i2 = 0; i2 < g.nx2(); ++i2)
      for (int i1 = 0; i1 < g.nx1(); ++i1) {
        const std::size_t s = static_cast<std::size_t>(i2) * g.nx1() + i1;
        if (g.is_spatial_boundary(i1, i2)) continue;
        const double ksq = prob.k[s] * prob.k[s];
        double grad_sq = ux1[s] * ux1[s];
        if (g.domain().n == 2) grad_sq += ux2[s] * ux2[s];
        double expl = 0.5 * ksq * grad_sq +
                      prob.interaction.P(g.x1(i1), g.x2(i2), tk, z1[s], mk[s]);
        if (prob.source_u) expl += (*prob.source_u)[g.index(i1, i2, k)];
        rhs[r++] = uk[s] + ht * expl;
      }

    auto next = u.slice(k - 1);
    impose_dirichlet(g, prob.g0_u, k - 1, next);
    op.step(rhs, next);
    check_blowup(next, bound, k - 1, "bellman");
  }
  return u;
}

ScalarField solve_fp_forward(const PicardProblem& prob, const ScalarField& u,
                             const ImplicitDiffusion& op) {
  const Grid& g = *prob.grid;
  const int nt = g.nt();
  const double ht = g.ht();
  const double bound = prob.blowup_factor * prob.bounds.R5;

  ScalarField m(prob.grid, 0.0);
  {
    auto bot = m.slice(0);
    std::copy(prob.m_initial.begin(), prob.m_initial.end(), bot.begin());
    impose_dirichlet(g, prob.p0_m, 0, bot);
  }

  std::vector<double> flux1(g.num_spatial()), flux2;
  std::vector<double> rhs(op.interior_count());
  for (int k = 0; k < nt - 1; ++k) {
    const auto mk = m.slice(k);
    const auto uk = u.slice(k);
    const auto ux1 = slice_deriv(g, uk, Axis::X1, 1);
    for (std::size_t s = 0; s < g.num_spatial(); ++s)
      flux1[s] = prob.k[s] * prob.k[s] * mk[s] * ux1[s];
    const auto div1 = slice_deriv(g, flux1, Axis::X1, 1);
    std::vector<double> div2;
    if (g.domain().n == 2) {
      const auto ux2 = slice_deriv(g, uk, Axis::X2, 1);
      flux2.resize(g.num_spatial());
      for (std::size_t s = 0; s < g.num_spatial(); ++s)
        flux2[s] = prob.k[s] * prob.k[s] * mk[s] * ux2[s];
      div2 = slice_deriv(g, flux2, Axis::X2, 1);
    }

    int r = 0;
    for (int i2 = 0; i2 < g.nx2(); ++i2)
      for (int i1 = 0; i1 < g.nx1(); ++i1) {
        const std::size_t s = static_cast<std::size_t>(i2) * g.nx1() + i1;
        if (g.is_spatial_boundary(i1, i2)) continue;
        double expl = -div1[s];
        if (g.domain().n == 2) expl -= div2[s];
        if (prob.source_m) expl += (*prob.source_m)[g.index(i1, i2, k)];
        rhs[r++] = mk[s] + ht * expl;
      }

    auto next = m.slice(k + 1);
    impose_dirichlet(g, prob.p0_m, k + 1, next);
    op.step(rhs, next);
    check_blowup(next, bound, k + 1, "fokker-planck");
  }
  return m;
}

namespace {

double rel_sup(const ScalarField& diff, const ScalarField& ref) {
  return diff.max_abs() / (1.0 + ref.max_abs());
}

}  // namespace

MFGSolution picard_solve(const PicardProblem& prob,
                         const PicardOptions& opts) {
  const Grid& g = *prob.grid;
  ImplicitDiffusion op(prob.grid, g.domain().alpha);

  // Initial density iterate: the initial slice held constant in time, with
  // the Dirichlet data imposed on each level.
  ScalarField m(prob.grid, 0.0);
  for (int k = 0; k < g.nt(); ++k) {
    auto s = m.slice(k);
    std::copy(prob.m_initial.begin(), prob.m_initial.end(), s.begin());
    impose_dirichlet(g, prob.p0_m, k, s);
  }
  ScalarField u(prob.grid, 0.0);

  MFGSolution sol;
  double update = std::numeric_limits<double>::infinity();
  int iter = 0;
  for (; iter < opts.max_iters; ++iter) {
    ScalarField u_new = solve_bellman_backward(prob, m, op);
    ScalarField m_hat = solve_fp_forward(prob, u_new, op);
    update = rel_sup(u_new - u, u_new) + rel_sup(m_hat - m, m_hat);
    u = std::move(u_new);
    for (std::size_t i = 0; i < m.size(); ++i)
      m.values[i] = (1.0 - opts.theta) * m.values[i] +
                    opts.theta * m_hat.values[i];
    if (update <= opts.tol) {
      ++iter;
      break;
    }
  }
  sol.u = std::move(u);
  sol.m = std::move(m);
  sol.picard_iters = iter;
  sol.final_update_norm = update;
  sol.converged = update <= opts.tol;
  return sol;
}

double apriori_violation(const MFGSolution& sol, const AprioriBounds& bounds) {
  double viol = 0.0;
  auto track = [&](double v, double r) { viol = std::max(viol, v - r); };
  track(sol.u.max_abs(), bounds.R4);
  for (const auto& gi : grad(sol.u)) track(gi.max_abs(), bounds.R4);
  track(laplacian(sol.u).max_abs(), bounds.R4);
  track(sol.m.max_abs(), bounds.R5);
  for (const auto& gi : grad(sol.m)) track(gi.max_abs(), bounds.R5);
  return std::max(viol, 0.0);
}

}  // namespace mfglab
