#include "mfglab/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "mfglab/carleman.hpp"

namespace mfglab {

Scenario Scenario::from_config(const Config& cfg) {
  Scenario s;
  s.id = cfg.get_string("scenario.id", "unnamed");

  s.domain.n = cfg.get_int("domain.n", 1);
  s.domain.a = cfg.get_double("domain.a", 1.0);
  s.domain.b = cfg.get_double("domain.b", 2.0);
  s.domain.a2 = cfg.get_double("domain.a2", 1.0);
  s.domain.T = cfg.get_double("domain.T", 1.0);
  s.domain.alpha = cfg.get_double("domain.alpha", 0.2);
  s.domain.validate();

  s.nx1 = cfg.get_int("grid.nx1", 41);
  s.nx2 = cfg.get_int("grid.nx2", s.domain.n == 2 ? 21 : 1);
  s.nt = cfg.get_int("grid.nt", 41);

  const double R1 = cfg.get_double("interaction.R1", 1.0);
  const double R2 = cfg.get_double("interaction.R2", 2.0);
  s.interaction = InteractionSpec::from_expressions(
      cfg.get_string("interaction.P", "z2"),
      cfg.get_string("interaction.G1", "0"), R1, R2);
  s.bounds.R1 = R1;
  s.bounds.R2 = R2;
  s.bounds.R3 = cfg.get_double("recon.R3", 1.0);
  s.bounds.R4 = cfg.get_double("recon.R4", 10.0);
  s.bounds.R5 = cfg.get_double("recon.R5", 10.0);

  s.k_expr = parse_expr(cfg.get_string("forward.k", "0.5"));
  s.u_terminal_expr = parse_expr(cfg.get_string("forward.u_terminal", "0"));
  s.m_initial_expr = parse_expr(cfg.get_string("forward.m_initial", "0"));
  s.u_dirichlet_expr = parse_expr(cfg.get_string("forward.u_dirichlet", "0"));
  s.m_dirichlet_expr = parse_expr(cfg.get_string("forward.m_dirichlet", "0"));
  s.picard.theta = cfg.get_double("forward.theta", 0.5);
  s.picard.tol = cfg.get_double("forward.tol", 1e-11);
  s.picard.max_iters = cfg.get_int("forward.max_iters", 80);

  s.eps = cfg.get_double("carleman.eps", s.domain.T / 8.0);
  s.lambda = cfg.get_double("carleman.lambda", 5.0);
  s.lambda1 = cfg.get_double("carleman.lambda1", 5.0);
  s.lambda_max = cfg.get_double("carleman.lambda_max", 40.0);
  s.normalize = cfg.get_bool("carleman.normalize", true);
  s.exponent_cap = cfg.get_double("carleman.exponent_cap", 700.0);

  s.recon.gamma_scale = cfg.get_double("recon.gamma_scale", 1e4);
  s.recon.beta_scale = cfg.get_double("recon.beta_scale", 1e-8);
  if (cfg.has("recon.gamma")) s.recon.weights.gamma = cfg.get_double("recon.gamma");
  if (cfg.has("recon.beta")) s.recon.weights.beta = cfg.get_double("recon.beta");
  s.recon.max_iters = cfg.get_int("recon.max_iters", 2000);
  s.recon.grad_tol = cfg.get_double("recon.grad_tol", 1e-6);
  s.recon.lbfgs_memory = cfg.get_int("recon.lbfgs_memory", 10);
  const std::string init = cfg.get_string("recon.init", "zero");
  if (init == "zero")
    s.recon.init = InitKind::Zero;
  else if (init == "truth")
    s.recon.init = InitKind::Truth;
  else if (init == "random")
    s.recon.init = InitKind::Random;
  else
    throw std::invalid_argument("recon.init must be zero|truth|random");

  if (cfg.has("sweep.deltas")) s.deltas = cfg.get_double_list("sweep.deltas");
  if (cfg.has("sweep.eps")) s.eps = cfg.get_double("sweep.eps");
  s.seed = static_cast<std::uint64_t>(cfg.get_int("sweep.seed", 1));
  s.slope_tol = cfg.get_double("sweep.slope_tol", 0.02);
  s.floor_factor = cfg.get_double("sweep.floor_factor", 5.0);
  return s;
}

GridPtr Scenario::make_grid(int refine) const {
  auto scale = [refine](int n) { return (n - 1) * refine + 1; };
  return Grid::create(domain, scale(nx1), domain.n == 2 ? scale(nx2) : 1,
                      scale(nt));
}

PicardProblem Scenario::make_problem(const GridPtr& grid) const {
  PicardProblem prob;
  prob.grid = grid;
  prob.interaction = interaction;
  prob.bounds = bounds;

  prob.k = make_spatial_field(grid, [&](double x1, double x2) {
    EvalCtx c;
    c.x1 = x1;
    c.x2 = x2;
    return k_expr->eval(c);
  });

  const double T = domain.T;
  prob.u_terminal.resize(grid->num_spatial());
  prob.m_initial.resize(grid->num_spatial());
  std::size_t s = 0;
  for (int i2 = 0; i2 < grid->nx2(); ++i2)
    for (int i1 = 0; i1 < grid->nx1(); ++i1, ++s) {
      EvalCtx c;
      c.x1 = grid->x1(i1);
      c.x2 = grid->x2(i2);
      c.t = T;
      prob.u_terminal[s] = u_terminal_expr->eval(c);
      c.t = 0.0;
      prob.m_initial[s] = m_initial_expr->eval(c);
    }

  prob.g0_u = LateralField(grid);
  prob.p0_m = LateralField(grid);
  for (std::size_t face = 0; face < grid->faces().size(); ++face) {
    const Face& f = grid->faces()[face];
    for (int j = 0; j < f.tan_count; ++j) {
      const std::size_t sp = grid->face_spatial_node(f, j);
      const int i1 = static_cast<int>(sp % grid->nx1());
      const int i2 = static_cast<int>(sp / grid->nx1());
      for (int k = 0; k < grid->nt(); ++k) {
        EvalCtx c;
        c.x1 = grid->x1(i1);
        c.x2 = grid->x2(i2);
        c.t = grid->t(k);
        prob.g0_u.at(face, j, k) = u_dirichlet_expr->eval(c);
        prob.p0_m.at(face, j, k) = m_dirichlet_expr->eval(c);
      }
    }
  }
  return prob;
}

double Scenario::lambda_policy(double delta) const {
  if (delta <= 0.0) return std::clamp(lambda, 1.0, lambda_max);
  const double lam = lambda_of_delta(delta, domain.b, 0.0);
  return std::clamp(lam, std::max(lambda1, 1.0), lambda_max);
}

}  // namespace mfglab
