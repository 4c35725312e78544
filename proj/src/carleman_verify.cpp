#include "mfglab/carleman_verify.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "mfglab/fd_ops.hpp"
#include "mfglab/io_util.hpp"
#include "mfglab/norms.hpp"
#include "mfglab/rng.hpp"

namespace mfglab {

double carleman_lhs(const ScalarField& u, Theorem thm,
                    const CarlemanParams& params) {
  const double alpha = u.grid->domain().alpha;
  const double sgn = thm == Theorem::ParabolicMinus ? -1.0 : 1.0;
  const ScalarField psi = cwf_field(u.grid, params);
  const ScalarField ut = d_t(u);
  const ScalarField lap = laplacian(u);
  const auto w = u.grid->node_weights();
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = ut[i] + sgn * alpha * lap[i];
    acc += r * r * psi[i] * w[i];
  }
  return acc;
}

CarlemanComponents carleman_rhs_components(const ScalarField& u,
                                           const CarlemanParams& params) {
  const Grid& g = *u.grid;
  const DomainSpec& dom = g.domain();
  const double lam = params.lambda;
  const ScalarField psi = cwf_field(u.grid, params);
  const auto w = g.node_weights();

  CarlemanComponents c;
  const ScalarField ut = d_t(u);
  for (std::size_t i = 0; i < u.size(); ++i)
    c.ut_sq += ut[i] * ut[i] * psi[i] * w[i];

  const ScalarField hsq = hessian(u).sum_of_squares();
  for (std::size_t i = 0; i < u.size(); ++i)
    c.hess_sq += hsq[i] * psi[i] * w[i];

  ScalarField gsq(u.grid, 0.0);
  for (const auto& gi : grad(u))
    for (std::size_t i = 0; i < u.size(); ++i)
      gsq.values[i] += gi[i] * gi[i];
  for (std::size_t i = 0; i < u.size(); ++i)
    c.grad_zero +=
        (lam * gsq[i] + lam * lam * lam * u[i] * u[i]) * psi[i] * w[i];

  // Boundary group. The e^{3 lambda b^2} factor shares the normalization of
  // the weighted integrals, so the whole inequality is scaled uniformly.
  const double log_norm = cwf_log_norm(params, dom);
  {
    const LateralField tr = dirichlet_trace(u);
    const LateralField nu = neumann_trace(u);
    const double tr_n = lateral_norm(tr, LateralNormKind::H21);
    const double nu_n = lateral_norm(nu, LateralNormKind::H10);
    const double log_factor = 3.0 * lam * dom.b * dom.b - log_norm;
    if (std::abs(log_factor) > params.exponent_cap)
      throw std::range_error("carleman boundary factor exceeds exponent cap");
    c.boundary_deficit = (nu_n * nu_n + tr_n * tr_n) * std::exp(log_factor);
  }

  // Endpoint group with the decay factor exp(-2 lambda (c^2 T^2/4 - b^2)).
  {
    const double h1 = h1_slice_norm_sq(u, 0) + h1_slice_norm_sq(u, g.nt() - 1);
    const double log_factor =
        -2.0 * lam * (params.c2 * dom.T * dom.T / 4.0 - dom.b * dom.b) -
        log_norm;
    if (log_factor > params.exponent_cap)
      throw std::range_error("carleman endpoint factor exceeds exponent cap");
    c.endpoint_deficit = h1 * std::exp(log_factor);
  }
  return c;
}

CarlemanReport verify_estimate(Theorem thm,
                               const std::vector<ScalarField>& family,
                               const std::vector<double>& lambda_grid,
                               double eps, bool normalize,
                               double exponent_cap) {
  if (family.empty())
    throw std::invalid_argument("verify_estimate: empty family");
  const GridPtr grid = family.front().grid;
  for (const auto& u : family)
    if (u.grid != grid)
      throw std::invalid_argument(
          "verify_estimate: family on mismatched grids");

  CarlemanReport rep;
  rep.theorem = theorem_label(thm);
  rep.lambda_grid = lambda_grid;
  rep.eps = eps;
  rep.cells.resize(family.size());

  for (std::size_t iu = 0; iu < family.size(); ++iu) {
    for (double lam : lambda_grid) {
      const CarlemanParams p = CarlemanParams::make(
          lam, eps, grid->domain(), normalize, exponent_cap);
      rep.endpoint_valid = p.endpoint_valid;
      rep.c2 = p.c2;
      CarlemanCell cell;
      cell.lhs = carleman_lhs(family[iu], thm, p);
      cell.comps = carleman_rhs_components(family[iu], p);
      cell.denom = cell.comps.ut_sq / lam + cell.comps.hess_sq / lam +
                   cell.comps.grad_zero - cell.comps.boundary_deficit -
                   cell.comps.endpoint_deficit;
      if (cell.denom > 0.0) {
        cell.ratio = cell.lhs / cell.denom;
      } else {
        cell.skipped = true;
      }
      rep.cells[iu].push_back(cell);
    }
  }

  // lambda0: smallest grid lambda from which every member has a positive
  // ratio and the ratios hold a non-decreasing trend (small dips allowed).
  const double trend_slack = 0.2;
  const std::size_t nl = lambda_grid.size();
  for (std::size_t j0 = 0; j0 < nl; ++j0) {
    bool ok = true;
    for (const auto& row : rep.cells) {
      for (std::size_t j = j0; j < nl && ok; ++j) {
        if (row[j].skipped || !(row[j].ratio > 0.0)) ok = false;
        if (ok && j > j0 &&
            row[j].ratio < (1.0 - trend_slack) * row[j - 1].ratio)
          ok = false;
      }
      if (!ok) break;
    }
    if (ok) {
      rep.lambda0_estimate = lambda_grid[j0];
      rep.lambda0_found = true;
      break;
    }
  }

  if (rep.lambda0_found) {
    double cmin = std::numeric_limits<double>::infinity();
    for (const auto& row : rep.cells)
      for (std::size_t j = 0; j < nl; ++j)
        if (lambda_grid[j] >= rep.lambda0_estimate && !row[j].skipped)
          cmin = std::min(cmin, row[j].ratio);
    rep.c_star = cmin;
  }
  return rep;
}

namespace {

/// Quartic bump 16 s^2 (1-s)^2 on [0,1]: unit peak, double zeros at both
/// ends, so members vanish to second order at the faces they multiply.
double bump(double s) {
  const double q = s * (1.0 - s);
  return 16.0 * q * q;
}

}  // namespace

std::vector<ScalarField> make_verification_family(const GridPtr& grid,
                                                  int count,
                                                  std::uint64_t seed) {
  const DomainSpec& dom = grid->domain();
  std::vector<ScalarField> fam;
  const double pi = std::numbers::pi;

  auto s1 = [&](double x1) { return (x1 - dom.a) / (dom.b - dom.a); };
  auto s2 = [&](double x2) {
    return dom.n == 2 ? (x2 + dom.a2) / (2.0 * dom.a2) : 0.5;
  };
  auto st = [&](double t) { return t / dom.T; };
  auto mollify = [&](double x1, double x2, double t) {
    double b = bump(s1(x1)) * bump(st(t));
    if (dom.n == 2) b *= bump(s2(x2));
    return b;
  };

  // Deterministic polynomial/trigonometric members.
  const int n_det = (count + 1) / 2;
  for (int p = 0; p < n_det; ++p) {
    const int mode1 = p % 3;
    const int mode2 = (p / 3) % 2;
    const int pw = p % 2;
    fam.push_back(make_field(grid, [&](double x1, double x2, double t) {
      double v = std::cos(mode1 * pi * s1(x1)) * std::cos(mode2 * pi * st(t));
      if (pw) v *= (0.5 + s1(x1)) * (1.0 - 0.3 * st(t));
      if (dom.n == 2) v *= std::cos(mode2 * pi * s2(x2));
      return v * mollify(x1, x2, t);
    }));
  }

  // Seeded smooth random members, mollified the same way.
  Rng rng(seed);
  while (static_cast<int>(fam.size()) < count) {
    double c[3][3];
    for (auto& row : c)
      for (auto& v : row) v = rng.uniform(-1.0, 1.0);
    fam.push_back(make_field(grid, [&](double x1, double x2, double t) {
      double v = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          v += c[i][j] * std::sin((i + 1) * pi * s1(x1) + 0.3 * j) *
               std::cos(j * pi * st(t) + 0.2 * i) *
               (dom.n == 2 ? std::cos(i * pi * s2(x2)) : 1.0);
      return v * mollify(x1, x2, t);
    }));
  }
  return fam;
}

std::vector<ScalarField> make_boundary_family(const GridPtr& grid, int count,
                                              std::uint64_t seed) {
  const DomainSpec& dom = grid->domain();
  const double pi = std::numbers::pi;
  Rng rng(seed);
  std::vector<ScalarField> fam;
  while (static_cast<int>(fam.size()) < count) {
    double c[2][2];
    for (auto& row : c)
      for (auto& v : row) v = rng.uniform(-1.0, 1.0);
    fam.push_back(make_field(grid, [&](double x1, double x2, double t) {
      double v = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          v += c[i][j] * std::cos(i * pi * (x1 - dom.a) / (dom.b - dom.a)) *
               std::cos(j * pi * t / dom.T) *
               (dom.n == 2 ? std::cos(pi * x2 / (2.0 * dom.a2)) : 1.0);
      return v;
    }));
  }
  return fam;
}

ScalarField time_reversed(const ScalarField& u) {
  const Grid& g = *u.grid;
  ScalarField out(u.grid);
  for (int k = 0; k < g.nt(); ++k) {
    const auto src = u.slice(g.nt() - 1 - k);
    auto dst = out.slice(k);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return out;
}

namespace {

using json = nlohmann::ordered_json;

json cell_to_json(const CarlemanCell& c) {
  json j;
  j["lhs"] = c.lhs;
  j["ut_sq"] = c.comps.ut_sq;
  j["hess_sq"] = c.comps.hess_sq;
  j["grad_zero"] = c.comps.grad_zero;
  j["boundary_deficit"] = c.comps.boundary_deficit;
  j["endpoint_deficit"] = c.comps.endpoint_deficit;
  j["denom"] = c.denom;
  j["ratio"] = c.ratio;
  j["skipped"] = c.skipped;
  return j;
}

}  // namespace

void write_carleman_report_json(const CarlemanReport& r,
                                const std::string& path) {
  json j;
  j["schema"] = "mfglab.carleman_report.v1";
  j["theorem"] = r.theorem;
  j["lambda_grid"] = r.lambda_grid;
  j["eps"] = r.eps;
  j["c2"] = r.c2;
  j["endpoint_valid"] = r.endpoint_valid;
  j["lambda0_found"] = r.lambda0_found;
  j["lambda0_estimate"] = r.lambda0_estimate;
  j["c_star"] = r.c_star;
  j["cells"] = json::array();
  for (std::size_t iu = 0; iu < r.cells.size(); ++iu)
    for (std::size_t jl = 0; jl < r.cells[iu].size(); ++jl) {
      json cj = cell_to_json(r.cells[iu][jl]);
      cj["member"] = iu;
      cj["lambda"] = r.lambda_grid[jl];
      j["cells"].push_back(std::move(cj));
    }
  write_text_atomic(path, j.dump(2) + "\n");
}

void write_carleman_report_csv(const CarlemanReport& r,
                               const std::string& path) {
  std::ostringstream os;
  os << "member,lambda,lhs,ut_sq,hess_sq,grad_zero,boundary_deficit,"
        "endpoint_deficit,denom,ratio,skipped\n";
  for (std::size_t iu = 0; iu < r.cells.size(); ++iu)
    for (std::size_t jl = 0; jl < r.cells[iu].size(); ++jl) {
      const auto& c = r.cells[iu][jl];
      os << iu << ',' << format_double(r.lambda_grid[jl]) << ','
         << format_double(c.lhs) << ',' << format_double(c.comps.ut_sq) << ','
         << format_double(c.comps.hess_sq) << ','
         << format_double(c.comps.grad_zero) << ','
         << format_double(c.comps.boundary_deficit) << ','
         << format_double(c.comps.endpoint_deficit) << ','
         << format_double(c.denom) << ',' << format_double(c.ratio) << ','
         << (c.skipped ? 1 : 0) << '\n';
    }
  write_text_atomic(path, os.str());
}

}  // namespace mfglab
