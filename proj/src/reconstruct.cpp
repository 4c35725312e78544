#include "mfglab/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "mfglab/fd_ops.hpp"
#include "mfglab/norms.hpp"
#include "mfglab/rng.hpp"

namespace mfglab {

namespace {

struct ResidualWork {
  ScalarField res_b, res_f;     // Bellman / Fokker-Planck residual fields
  std::vector<ScalarField> gu;  // grad u components
  ScalarField z1;               // nonlocal term of m
  ScalarField p_z1, p_z2;       // interaction partials at (z1, m)
};

ScalarField ksq_field(const SpatialField& k) {
  ScalarField out(k.grid, 0.0);
  for (int it = 0; it < k.grid->nt(); ++it) {
    auto s = out.slice(it);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = k[i] * k[i];
  }
  return out;
}

ResidualWork residual_fields(const ScalarField& u, const ScalarField& m,
                             const InteractionSpec& spec,
                             const ScalarField& ksq) {
  const Grid& g = *u.grid;
  ResidualWork w;
  w.gu = grad(u);
  w.z1 = nonlocal_field(m, spec);

  // ResB = u_t + alpha Lap u + (k^2/2)|grad u|^2 + P(x,t,z1,m)
  w.res_b = d_t(u);
  axpy(g.domain().alpha, laplacian(u), w.res_b);
  for (const auto& gi : w.gu)
    for (std::size_t i = 0; i < u.size(); ++i)
      w.res_b.values[i] += 0.5 * ksq[i] * gi[i] * gi[i];
  w.p_z1 = ScalarField(u.grid, 0.0);
  w.p_z2 = ScalarField(u.grid, 0.0);
  {
    std::size_t idx = 0;
    for (int it = 0; it < g.nt(); ++it)
      for (int i2 = 0; i2 < g.nx2(); ++i2)
        for (int i1 = 0; i1 < g.nx1(); ++i1, ++idx) {
          const double x1 = g.x1(i1), x2 = g.x2(i2), t = g.t(it);
          const double z1 = w.z1[idx], z2 = m[idx];
          w.res_b.values[idx] += spec.P(x1, x2, t, z1, z2);
          w.p_z1.values[idx] = spec.P_z1(x1, x2, t, z1, z2);
          w.p_z2.values[idx] = spec.P_z2(x1, x2, t, z1, z2);
        }
  }

  // ResF = m_t - alpha Lap m + sum_i D_i(k^2 m (grad u)_i)
  w.res_f = d_t(m);
  axpy(-g.domain().alpha, laplacian(m), w.res_f);
  const Axis axes[2] = {Axis::X1, Axis::X2};
  for (std::size_t c = 0; c < w.gu.size(); ++c) {
    ScalarField flux(u.grid, 0.0);
    for (std::size_t i = 0; i < u.size(); ++i)
      flux.values[i] = ksq[i] * m[i] * w.gu[c][i];
    axpy(1.0, apply_axis(flux, axes[c], 1), w.res_f);
  }
  return w;
}

double lateral_misfit_sq(const LateralField& have, const LateralField& want,
                         LateralNormKind kind, double* norm_out) {
  LateralField e = have;
  for (std::size_t f = 0; f < e.face_vals.size(); ++f)
    for (std::size_t i = 0; i < e.face_vals[f].size(); ++i)
      e.face_vals[f][i] -= want.face_vals[f][i];
  const double n = lateral_norm(e, kind);
  if (norm_out) *norm_out = n;
  return n * n;
}

}  // namespace

double assemble_objective(const ScalarField& u, const ScalarField& m,
                          const CauchyData& data, const CarlemanParams& params,
                          const ReconWeights& weights,
                          const InteractionSpec& spec, const SpatialField& k,
                          ObjectiveParts* parts) {
  if (u.grid != m.grid || u.grid != data.grid)
    throw std::invalid_argument("assemble_objective: grid mismatch");
  const ScalarField ksq = ksq_field(k);
  const ResidualWork w = residual_fields(u, m, spec, ksq);
  const ScalarField psi = cwf_field(u.grid, params);
  const auto nodew = u.grid->node_weights();

  ObjectiveParts p;
  for (std::size_t i = 0; i < u.size(); ++i) {
    p.residual_bellman += w.res_b[i] * w.res_b[i] * psi[i] * nodew[i];
    p.residual_fp += w.res_f[i] * w.res_f[i] * psi[i] * nodew[i];
  }

  double data_sq = 0.0;
  data_sq += lateral_misfit_sq(dirichlet_trace(u), data.g0,
                               LateralNormKind::H21, &p.misfit_norms[0]);
  data_sq += lateral_misfit_sq(neumann_trace(u), data.g1,
                               LateralNormKind::H10, &p.misfit_norms[1]);
  data_sq += lateral_misfit_sq(dirichlet_trace(m), data.p0,
                               LateralNormKind::H21, &p.misfit_norms[2]);
  data_sq += lateral_misfit_sq(neumann_trace(m), data.p1,
                               LateralNormKind::H10, &p.misfit_norms[3]);
  p.data_misfit = weights.gamma * data_sq;

  double reg = 0.0;
  for (const ScalarField* f : {&u, &m}) {
    const HessianFields h = hessian(*f);
    for (std::size_t c = 0; c < h.comps.size(); ++c)
      for (std::size_t i = 0; i < f->size(); ++i)
        reg += h.multiplicity[c] * h.comps[c][i] * h.comps[c][i] * nodew[i];
  }
  p.regularization = weights.beta * reg;

  p.total =
      p.residual_bellman + p.residual_fp + p.data_misfit + p.regularization;
  if (parts) *parts = p;
  return p.total;
}

void objective_gradient(const ScalarField& u, const ScalarField& m,
                        const CauchyData& data, const CarlemanParams& params,
                        const ReconWeights& weights,
                        const InteractionSpec& spec, const SpatialField& k,
                        ScalarField& grad_u, ScalarField& grad_m) {
  const Grid& g = *u.grid;
  const ScalarField ksq = ksq_field(k);
  const ResidualWork w = residual_fields(u, m, spec, ksq);
  const ScalarField psi = cwf_field(u.grid, params);
  const auto nodew = g.node_weights();

  grad_u = ScalarField(u.grid, 0.0);
  grad_m = ScalarField(u.grid, 0.0);

  // r_A = 2 w psi ResB, r_B = 2 w psi ResF.
  ScalarField ra(u.grid), rb(u.grid);
  for (std::size_t i = 0; i < u.size(); ++i) {
    ra.values[i] = 2.0 * nodew[i] * psi[i] * w.res_b[i];
    rb.values[i] = 2.0 * nodew[i] * psi[i] * w.res_f[i];
  }

  const Axis axes[2] = {Axis::X1, Axis::X2};

  // Bellman residual, derivative in u: Dt^T rA + alpha Lap^T rA
  // + sum_i D_i^T( rA k^2 (grad u)_i ).
  axpy(1.0, apply_axis_transpose(ra, Axis::Time, 1), grad_u);
  axpy(g.domain().alpha, laplacian_transpose(ra), grad_u);
  for (std::size_t c = 0; c < w.gu.size(); ++c) {
    ScalarField tmp(u.grid);
    for (std::size_t i = 0; i < u.size(); ++i)
      tmp.values[i] = ra[i] * ksq[i] * w.gu[c][i];
    axpy(1.0, apply_axis_transpose(tmp, axes[c], 1), grad_u);
  }

  // Bellman residual, derivative in m: NL^T(P_z1 rA) + P_z2 rA.
  {
    ScalarField tmp(u.grid);
    for (std::size_t i = 0; i < u.size(); ++i)
      tmp.values[i] = w.p_z1[i] * ra.values[i];
    axpy(1.0, nonlocal_field_adjoint(tmp, spec), grad_m);
    for (std::size_t i = 0; i < u.size(); ++i)
      grad_m.values[i] += w.p_z2[i] * ra.values[i];
  }

  // FP residual, derivative in m: Dt^T rB - alpha Lap^T rB
  // + sum_i k^2 (grad u)_i (D_i^T rB).
  axpy(1.0, apply_axis_transpose(rb, Axis::Time, 1), grad_m);
  axpy(-g.domain().alpha, laplacian_transpose(rb), grad_m);
  for (std::size_t c = 0; c < w.gu.size(); ++c) {
    const ScalarField dt_rb = apply_axis_transpose(rb, axes[c], 1);
    for (std::size_t i = 0; i < u.size(); ++i)
      grad_m.values[i] += ksq[i] * w.gu[c][i] * dt_rb[i];
  }

  // FP residual, derivative in u: sum_i D_i^T( k^2 m (D_i^T rB) ).
  for (std::size_t c = 0; c < w.gu.size(); ++c) {
    ScalarField inner = apply_axis_transpose(rb, axes[c], 1);
    for (std::size_t i = 0; i < u.size(); ++i)
      inner.values[i] *= ksq[i] * m[i];
    axpy(1.0, apply_axis_transpose(inner, axes[c], 1), grad_u);
  }

  // Boundary misfit terms.
  auto add_misfit = [&](const LateralField& have, const LateralField& want,
                        LateralNormKind kind, bool neumann, ScalarField& dst) {
    LateralField e = have;
    for (std::size_t f = 0; f < e.face_vals.size(); ++f)
      for (std::size_t i = 0; i < e.face_vals[f].size(); ++i)
        e.face_vals[f][i] -= want.face_vals[f][i];
    LateralField gl = lateral_norm_sq_gradient(e, kind);
    for (auto& fv : gl.face_vals)
      for (auto& v : fv) v *= weights.gamma;
    if (neumann)
      neumann_trace_adjoint(gl, dst);
    else
      dirichlet_trace_adjoint(gl, dst);
  };
  add_misfit(dirichlet_trace(u), data.g0, LateralNormKind::H21, false, grad_u);
  add_misfit(neumann_trace(u), data.g1, LateralNormKind::H10, true, grad_u);
  add_misfit(dirichlet_trace(m), data.p0, LateralNormKind::H21, false, grad_m);
  add_misfit(neumann_trace(m), data.p1, LateralNormKind::H10, true, grad_m);

  // Tikhonov term: 2 beta sum_c mult_c H_c^T (w H_c f).
  auto add_reg = [&](const ScalarField& f, ScalarField& dst) {
    const HessianFields h = hessian(f);
    for (std::size_t c = 0; c < h.comps.size(); ++c) {
      ScalarField tmp(f.grid);
      for (std::size_t i = 0; i < f.size(); ++i)
        tmp.values[i] = 2.0 * weights.beta * h.multiplicity[c] * nodew[i] *
                        h.comps[c][i];
      if (h.multiplicity[c] == 1.0) {
        axpy(1.0, apply_axis_transpose(tmp, axes[c], 2), dst);
      } else {
        // Mixed component was built as D_x2 (D_x1 f).
        axpy(1.0,
             apply_axis_transpose(apply_axis_transpose(tmp, Axis::X2, 1),
                                  Axis::X1, 1),
             dst);
      }
    }
  };
  add_reg(u, grad_u);
  add_reg(m, grad_m);
}

namespace {

struct PackedEval {
  const CauchyData* data;
  const CarlemanParams* params;
  const ReconWeights* weights;
  const InteractionSpec* spec;
  const SpatialField* k;
  GridPtr grid;

  double operator()(const std::vector<double>& x, std::vector<double>* gout,
                    ObjectiveParts* parts = nullptr) const {
    const std::size_t n = grid->num_nodes();
    ScalarField u(grid), m(grid);
    std::copy(x.begin(), x.begin() + n, u.values.begin());
    std::copy(x.begin() + n, x.end(), m.values.begin());
    const double f =
        assemble_objective(u, m, *data, *params, *weights, *spec, *k, parts);
    if (gout) {
      ScalarField gu, gm;
      objective_gradient(u, m, *data, *params, *weights, *spec, *k, gu, gm);
      gout->resize(2 * n);
      std::copy(gu.values.begin(), gu.values.end(), gout->begin());
      std::copy(gm.values.begin(), gm.values.end(), gout->begin() + n);
    }
    return f;
  }
};

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

ReconstructionResult reconstruct(const CauchyData& data,
                                 const CarlemanParams& params,
                                 const AprioriBounds& bounds,
                                 const InteractionSpec& spec,
                                 const SpatialField& k,
                                 const ReconOptions& opts) {
  const GridPtr grid = data.grid;
  const std::size_t n = grid->num_nodes();
  const std::size_t dim = 2 * n;

  ReconWeights weights = opts.weights;
  if (weights.gamma < 0.0) {
    const DomainSpec& dom = grid->domain();
    const double volume =
        (dom.b - dom.a) * dom.T * (dom.n == 2 ? 2.0 * dom.a2 : 1.0);
    weights.gamma = opts.gamma_scale * n / volume;  // gamma_scale / mean cell
  }

  std::vector<double> x(dim, 0.0);
  if (opts.init == InitKind::Truth) {
    if (!opts.truth)
      throw std::invalid_argument("reconstruct: truth init without truth");
    std::copy(opts.truth->u.values.begin(), opts.truth->u.values.end(),
              x.begin());
    std::copy(opts.truth->m.values.begin(), opts.truth->m.values.end(),
              x.begin() + n);
  } else if (opts.init == InitKind::Random) {
    Rng rng(opts.random_seed);
    for (auto& v : x) v = 0.1 * rng.uniform(-1.0, 1.0);
  }

  auto project = [&](std::vector<double>& z) {
    for (std::size_t i = 0; i < n; ++i)
      z[i] = std::clamp(z[i], -bounds.R4, bounds.R4);
    for (std::size_t i = n; i < dim; ++i)
      z[i] = std::clamp(z[i], -bounds.R5, bounds.R5);
  };
  project(x);

  PackedEval eval{&data, &params, &weights, &spec, &k, grid};

  if (weights.beta < 0.0) {
    const ReconWeights probe{weights.gamma, 0.0};
    PackedEval probe_eval = eval;
    probe_eval.weights = &probe;
    const double j0 = probe_eval(x, nullptr);
    weights.beta = opts.beta_scale * (j0 > 0.0 ? j0 : 1.0);
  }

  ReconstructionResult res;
  res.gamma_used = weights.gamma;
  res.beta_used = weights.beta;
  res.lambda_used = params.lambda;

  std::vector<double> g;
  double f = eval(x, &g);
  res.objective_history.push_back(f);

  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;

  std::vector<double> d(dim), x_new(dim), g_new(dim), step(dim);
  int iter = 0;
  StopReason reason = StopReason::MaxIters;
  for (; iter < opts.max_iters; ++iter) {
    const double gnorm = inf_norm(g);
    if (gnorm <= opts.grad_tol) {
      reason = StopReason::GradTol;
      break;
    }

    // L-BFGS two-loop recursion.
    d = g;
    {
      std::vector<double> alpha(s_hist.size());
      for (std::size_t i = s_hist.size(); i-- > 0;) {
        alpha[i] = rho_hist[i] * dot(s_hist[i], d);
        for (std::size_t j = 0; j < dim; ++j) d[j] -= alpha[i] * y_hist[i][j];
      }
      if (!s_hist.empty()) {
        const double yy = dot(y_hist.back(), y_hist.back());
        const double sy = dot(s_hist.back(), y_hist.back());
        const double scale = sy / (yy > 0.0 ? yy : 1.0);
        for (auto& v : d) v *= scale;
      }
      for (std::size_t i = 0; i < s_hist.size(); ++i) {
        const double beta_i = rho_hist[i] * dot(y_hist[i], d);
        for (std::size_t j = 0; j < dim; ++j)
          d[j] += (alpha[i] - beta_i) * s_hist[i][j];
      }
      for (auto& v : d) v = -v;
    }
    if (dot(d, g) >= 0.0) {  // not a descent direction; fall back
      for (std::size_t j = 0; j < dim; ++j) d[j] = -g[j];
    }

    double alpha_step =
        s_hist.empty() ? 1.0 / std::max(1.0, inf_norm(g)) : 1.0;
    bool accepted = false;
    double f_new = f;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t j = 0; j < dim; ++j)
        x_new[j] = x[j] + alpha_step * d[j];
      project(x_new);
      for (std::size_t j = 0; j < dim; ++j) step[j] = x_new[j] - x[j];
      const double gstep = dot(g, step);
      f_new = eval(x_new, &g_new);
      if (f_new <= f + 1e-4 * std::min(0.0, gstep) && f_new < f) {
        accepted = true;
        break;
      }
      alpha_step *= 0.5;
    }
    if (!accepted) {
      reason = StopReason::LineSearchFail;
      break;
    }

    // Curvature update.
    std::vector<double> y(dim);
    for (std::size_t j = 0; j < dim; ++j) y[j] = g_new[j] - g[j];
    const double sy = dot(step, y);
    if (sy > 1e-12 * std::sqrt(dot(step, step)) * std::sqrt(dot(y, y))) {
      s_hist.push_back(step);
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > opts.lbfgs_memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }

    const double f_prev = f;
    x.swap(x_new);
    g.swap(g_new);
    f = f_new;
    res.objective_history.push_back(f);
    if (f_prev - f <= 1e-15 * std::max(1.0, std::abs(f))) {
      ++iter;
      reason = StopReason::Stagnation;
      break;
    }
  }

  res.iterations = iter;
  res.stop_reason = reason;
  res.converged = reason == StopReason::GradTol;
  res.diverged = reason == StopReason::LineSearchFail;
  res.final_grad_norm = inf_norm(g);

  ScalarField u(grid), m(grid);
  std::copy(x.begin(), x.begin() + n, u.values.begin());
  std::copy(x.begin() + n, x.end(), m.values.begin());
  ObjectiveParts parts;
  assemble_objective(u, m, data, params, weights, spec, k, &parts);
  res.boundary_misfit = parts.misfit_norms;
  res.weighted_residual_bellman = parts.residual_bellman;
  res.weighted_residual_fp = parts.residual_fp;
  res.solution.u = std::move(u);
  res.solution.m = std::move(m);
  res.solution.converged = res.converged;
  res.solution.picard_iters = res.iterations;
  res.solution.final_update_norm = res.final_grad_norm;
  return res;
}

SliceBoundCheck carleman_slice_bound(const ScalarField& m,
                                     const CarlemanParams& params) {
  const Grid& g = *m.grid;
  if (g.domain().n != 2)
    throw std::invalid_argument("carleman_slice_bound: n == 2 only");
  const ScalarField psi = cwf_field(m.grid, params);
  const auto w = g.node_weights();
  const auto w2 = g.axis_weights(Axis::X2);

  double lhs = 0.0, msq = 0.0;
  for (int it = 0; it < g.nt(); ++it) {
    const auto s = m.slice(it);
    for (int i2 = 0; i2 < g.nx2(); ++i2)
      for (int i1 = 0; i1 < g.nx1(); ++i1) {
        double inner = 0.0;
        for (int j2 = 0; j2 < g.nx2(); ++j2)
          inner += w2[j2] *
                   std::abs(s[static_cast<std::size_t>(j2) * g.nx1() + i1]);
        const std::size_t idx = g.index(i1, i2, it);
        lhs += inner * inner * psi[idx] * w[idx];
        msq += m[idx] * m[idx] * psi[idx] * w[idx];
      }
  }
  SliceBoundCheck chk;
  chk.bound =
      g.domain().transverse_measure() * g.domain().transverse_measure();
  chk.ratio = msq > 0.0 ? lhs / msq : 0.0;
  return chk;
}

}  // namespace mfglab
