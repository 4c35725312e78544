#include "mfglab/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mfglab {

double AprioriBounds::R() const {
  return std::max({R1, R2, R3, R4, R5});
}

InteractionSpec InteractionSpec::from_expressions(const std::string& P_text,
                                                  const std::string& G1_text,
                                                  double R1, double R2) {
  InteractionSpec s;
  const ExprPtr p = parse_expr(P_text);
  const ExprPtr pz1 = p->diff("z1");
  const ExprPtr pz2 = p->diff("z2");
  s.P = [p](double x1, double x2, double t, double z1, double z2) {
    return p->eval({x1, x2, t, z1, z2, 0.0});
  };
  s.P_z1 = [pz1](double x1, double x2, double t, double z1, double z2) {
    return pz1->eval({x1, x2, t, z1, z2, 0.0});
  };
  s.P_z2 = [pz2](double x1, double x2, double t, double z1, double z2) {
    return pz2->eval({x1, x2, t, z1, z2, 0.0});
  };
  const ExprPtr g = parse_expr(G1_text);
  s.G1 = [g](double x1, double x2, double y2) {
    EvalCtx c;
    c.x1 = x1;
    c.x2 = x2;
    c.y2 = y2;
    return g->eval(c);
  };
  // Treat a literal zero kernel as the local-interaction case.
  s.local = G1_text == "0" || G1_text == "0.0";
  s.R1 = R1;
  s.R2 = R2;
  return s;
}

std::vector<double> nonlocal_slice(const ScalarField& m,
                                   const InteractionSpec& spec, int it) {
  const Grid& g = *m.grid;
  std::vector<double> out(g.num_spatial(), 0.0);
  if (spec.local || !spec.G1) return out;
  const auto s = m.slice(it);
  if (g.domain().n == 1) {
    for (int i1 = 0; i1 < g.nx1(); ++i1)
      out[i1] = spec.G1(g.x1(i1), 0.0, 0.0) * s[i1];
    return out;
  }
  const auto w2 = g.axis_weights(Axis::X2);
  for (int i2 = 0; i2 < g.nx2(); ++i2)
    for (int i1 = 0; i1 < g.nx1(); ++i1) {
      double acc = 0.0;
      for (int j2 = 0; j2 < g.nx2(); ++j2)
        acc += w2[j2] * spec.G1(g.x1(i1), g.x2(i2), g.x2(j2)) *
               s[static_cast<std::size_t>(j2) * g.nx1() + i1];
      out[static_cast<std::size_t>(i2) * g.nx1() + i1] = acc;
    }
  return out;
}

ScalarField nonlocal_field(const ScalarField& m, const InteractionSpec& spec) {
  ScalarField out(m.grid, 0.0);
  if (spec.local || !spec.G1) return out;
  for (int it = 0; it < m.grid->nt(); ++it) {
    const auto s = nonlocal_slice(m, spec, it);
    std::copy(s.begin(), s.end(), out.slice(it).begin());
  }
  return out;
}

ScalarField nonlocal_field_adjoint(const ScalarField& r,
                                   const InteractionSpec& spec) {
  const Grid& g = *r.grid;
  ScalarField out(r.grid, 0.0);
  if (spec.local || !spec.G1) return out;
  if (g.domain().n == 1) {
    for (int it = 0; it < g.nt(); ++it) {
      const auto rs = r.slice(it);
      auto os = out.slice(it);
      for (int i1 = 0; i1 < g.nx1(); ++i1)
        os[i1] = spec.G1(g.x1(i1), 0.0, 0.0) * rs[i1];
    }
    return out;
  }
  const auto w2 = g.axis_weights(Axis::X2);
  for (int it = 0; it < g.nt(); ++it) {
    const auto rs = r.slice(it);
    auto os = out.slice(it);
    for (int j2 = 0; j2 < g.nx2(); ++j2)
      for (int i1 = 0; i1 < g.nx1(); ++i1) {
        double acc = 0.0;
        for (int i2 = 0; i2 < g.nx2(); ++i2)
          acc += spec.G1(g.x1(i1), g.x2(i2), g.x2(j2)) *
                 rs[static_cast<std::size_t>(i2) * g.nx1() + i1];
        os[static_cast<std::size_t>(j2) * g.nx1() + i1] = w2[j2] * acc;
      }
  }
  return out;
}

void check_interaction_bounds(const InteractionSpec& spec, const Grid& grid,
                              double z_range) {
  const int nz = 7;
  for (int i2 = 0; i2 < grid.nx2(); ++i2)
    for (int i1 = 0; i1 < grid.nx1(); ++i1) {
      if (!spec.local && spec.G1)
        for (int j2 = 0; j2 < grid.nx2(); ++j2) {
          const double v =
              std::abs(spec.G1(grid.x1(i1), grid.x2(i2), grid.x2(j2)));
          if (v > spec.R1 * (1.0 + 1e-12))
            throw std::runtime_error("interaction: |G1| exceeds R1");
        }
      for (int it = 0; it < grid.nt(); it += std::max(1, grid.nt() / 8))
        for (int iz = 0; iz < nz; ++iz)
          for (int jz = 0; jz < nz; ++jz) {
            const double z1 = -z_range + 2.0 * z_range * iz / (nz - 1);
            const double z2 = -z_range + 2.0 * z_range * jz / (nz - 1);
            const double d1 = std::abs(
                spec.P_z1(grid.x1(i1), grid.x2(i2), grid.t(it), z1, z2));
            const double d2 = std::abs(
                spec.P_z2(grid.x1(i1), grid.x2(i2), grid.t(it), z1, z2));
            if (d1 > spec.R2 * (1.0 + 1e-12) || d2 > spec.R2 * (1.0 + 1e-12))
              throw std::runtime_error(
                  "interaction: |P_z| exceeds R2 on sampled range");
          }
    }
}

}  // namespace mfglab
