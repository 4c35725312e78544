#include "mfglab/cauchy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "mfglab/fd_ops.hpp"
#include "mfglab/io_util.hpp"
#include "mfglab/rng.hpp"

namespace mfglab {

namespace {

using json = nlohmann::ordered_json;

std::vector<double> face_tan_weights(const Grid& g, const Face& f) {
  if (!f.has_tangential || f.tan_count == 1) return {1.0};
  const double h = g.spacing(f.tangential_axis);
  std::vector<double> w(f.tan_count, h);
  w.front() = 0.5 * h;
  w.back() = 0.5 * h;
  return w;
}

void require_tan_support(const Face& f, LateralNormKind kind) {
  if (f.tan_count == 1) return;
  const int need = kind == LateralNormKind::H21 ? 4 : 3;
  if (f.tan_count < need)
    throw std::invalid_argument(
        "face norm needs >= " + std::to_string(need) +
        " tangential nodes on face " + face_label(f.id));
}

// Tangential derivative of a face array, order 1 or 2.
std::vector<double> face_tan_deriv(const Grid& g, const Face& f,
                                   const std::vector<double>& v, int order) {
  const int nt = g.nt();
  std::vector<double> out(v.size());
  const double h = g.spacing(f.tangential_axis);
  for (int k = 0; k < nt; ++k)
    stencil_apply_line(v.data() + k, out.data() + k, nt, f.tan_count, h,
                       order);
  return out;
}

std::vector<double> face_time_deriv(const Grid& g, const Face& f,
                                    const std::vector<double>& v) {
  const int nt = g.nt();
  std::vector<double> out(v.size());
  for (int j = 0; j < f.tan_count; ++j)
    stencil_apply_line(v.data() + static_cast<std::size_t>(j) * nt,
                       out.data() + static_cast<std::size_t>(j) * nt, 1, nt,
                       g.ht(), 1);
  return out;
}

double face_weighted_sq(const Grid& g, const Face& f,
                        const std::vector<double>& tw,
                        const std::vector<double>& v) {
  const auto wt = g.axis_weights(Axis::Time);
  double s = 0.0;
  for (int j = 0; j < f.tan_count; ++j)
    for (int k = 0; k < g.nt(); ++k) {
      const double x = v[static_cast<std::size_t>(j) * g.nt() + k];
      s += tw[j] * wt[k] * x * x;
    }
  return s;
}

}  // namespace

LateralField::LateralField(GridPtr g) : grid(std::move(g)) {
  for (const auto& f : grid->faces())
    face_vals.emplace_back(static_cast<std::size_t>(f.tan_count) * grid->nt(),
                           0.0);
}

double face_norm_sq(const LateralField& d, std::size_t face,
                    LateralNormKind kind) {
  const Grid& g = *d.grid;
  const Face& f = g.faces()[face];
  require_tan_support(f, kind);
  const auto& v = d.face_vals[face];
  const auto tw = face_tan_weights(g, f);

  double s = face_weighted_sq(g, f, tw, v);
  if (f.tan_count > 1) {
    s += face_weighted_sq(g, f, tw, face_tan_deriv(g, f, v, 1));
    if (kind == LateralNormKind::H21)
      s += face_weighted_sq(g, f, tw, face_tan_deriv(g, f, v, 2));
  }
  if (kind == LateralNormKind::H21)
    s += face_weighted_sq(g, f, tw, face_time_deriv(g, f, v));
  return s;
}

double lateral_norm(const LateralField& d, LateralNormKind kind) {
  double s = 0.0;
  for (std::size_t face = 0; face < d.face_vals.size(); ++face)
    s += face_norm_sq(d, face, kind);
  return std::sqrt(s);
}

LateralField lateral_norm_sq_gradient(const LateralField& e,
                                      LateralNormKind kind) {
  const Grid& g = *e.grid;
  LateralField out(e.grid);
  const auto wt = g.axis_weights(Axis::Time);
  for (std::size_t face = 0; face < e.face_vals.size(); ++face) {
    const Face& f = g.faces()[face];
    require_tan_support(f, kind);
    const auto& v = e.face_vals[face];
    auto& dst = out.face_vals[face];
    const auto tw = face_tan_weights(g, f);
    const int nt = g.nt();

    auto weight_of = [&](std::size_t i) {
      return tw[i / nt] * wt[i % nt];
    };

    // Identity term: 2 W v.
    for (std::size_t i = 0; i < v.size(); ++i)
      dst[i] += 2.0 * weight_of(i) * v[i];

    auto add_op_term = [&](const std::vector<double>& ov, int order,
                           bool tangential) {
      std::vector<double> wov(ov.size());
      for (std::size_t i = 0; i < ov.size(); ++i)
        wov[i] = 2.0 * weight_of(i) * ov[i];
      if (tangential) {
        const double h = g.spacing(f.tangential_axis);
        for (int k = 0; k < nt; ++k)
          stencil_scatter_line(wov.data() + k, dst.data() + k, nt, f.tan_count,
                               h, order);
      } else {
        for (int j = 0; j < f.tan_count; ++j)
          stencil_scatter_line(wov.data() + static_cast<std::size_t>(j) * nt,
                               dst.data() + static_cast<std::size_t>(j) * nt,
                               1, nt, g.ht(), order);
      }
    };

    if (f.tan_count > 1) {
      add_op_term(face_tan_deriv(g, f, v, 1), 1, true);
      if (kind == LateralNormKind::H21)
        add_op_term(face_tan_deriv(g, f, v, 2), 2, true);
    }
    if (kind == LateralNormKind::H21)
      add_op_term(face_time_deriv(g, f, v), 1, false);
  }
  return out;
}

LateralField dirichlet_trace(const ScalarField& f) {
  const Grid& g = *f.grid;
  LateralField out(f.grid);
  for (std::size_t face = 0; face < g.faces().size(); ++face) {
    const Face& fc = g.faces()[face];
    for (int j = 0; j < fc.tan_count; ++j)
      for (int k = 0; k < g.nt(); ++k)
        out.at(face, j, k) = f[g.face_node(fc, j, k)];
  }
  return out;
}

void dirichlet_trace_adjoint(const LateralField& r, ScalarField& out) {
  const Grid& g = *r.grid;
  for (std::size_t face = 0; face < g.faces().size(); ++face) {
    const Face& fc = g.faces()[face];
    for (int j = 0; j < fc.tan_count; ++j)
      for (int k = 0; k < g.nt(); ++k)
        out.values[g.face_node(fc, j, k)] += r.at(face, j, k);
  }
}

LateralField neumann_trace(const ScalarField& f) {
  const Grid& g = *f.grid;
  LateralField out(f.grid);
  for (std::size_t face = 0; face < g.faces().size(); ++face) {
    const Face& fc = g.faces()[face];
    const std::ptrdiff_t step =
        (fc.side == 0 ? 1 : -1) *
        static_cast<std::ptrdiff_t>(g.stride(fc.normal_axis));
    const double c = 1.0 / (2.0 * g.spacing(fc.normal_axis));
    for (int j = 0; j < fc.tan_count; ++j)
      for (int k = 0; k < g.nt(); ++k) {
        const std::size_t i0 = g.face_node(fc, j, k);
        out.at(face, j, k) = c * (3.0 * f[i0] - 4.0 * f[i0 + step] +
                                  f[i0 + 2 * step]);
      }
  }
  return out;
}

void neumann_trace_adjoint(const LateralField& r, ScalarField& out) {
  const Grid& g = *r.grid;
  for (std::size_t face = 0; face < g.faces().size(); ++face) {
    const Face& fc = g.faces()[face];
    const std::ptrdiff_t step =
        (fc.side == 0 ? 1 : -1) *
        static_cast<std::ptrdiff_t>(g.stride(fc.normal_axis));
    const double c = 1.0 / (2.0 * g.spacing(fc.normal_axis));
    for (int j = 0; j < fc.tan_count; ++j)
      for (int k = 0; k < g.nt(); ++k) {
        const std::size_t i0 = g.face_node(fc, j, k);
        const double rv = r.at(face, j, k);
        out.values[i0] += 3.0 * c * rv;
        out.values[i0 + step] += -4.0 * c * rv;
        out.values[i0 + 2 * step] += c * rv;
      }
  }
}

CauchyData extract_traces(const ScalarField& u, const ScalarField& m) {
  if (u.grid != m.grid)
    throw std::invalid_argument("extract_traces: fields on different grids");
  CauchyData d(u.grid);
  d.g0 = dirichlet_trace(u);
  d.g1 = neumann_trace(u);
  d.p0 = dirichlet_trace(m);
  d.p1 = neumann_trace(m);
  return d;
}

CauchyData perturb_to_delta(const CauchyData& d, double delta,
                            std::uint64_t seed) {
  if (delta < 0.0)
    throw std::invalid_argument("perturb_to_delta: delta >= 0 required");
  if (delta == 0.0) return d;

  const Grid& g = *d.grid;
  const double T = g.domain().T;
  constexpr int kModes = 4;
  Rng rng(seed);
  CauchyData out = d;

  struct Channel {
    LateralField CauchyData::*member;
    LateralNormKind kind;
  };
  const Channel channels[4] = {{&CauchyData::g0, LateralNormKind::H21},
                               {&CauchyData::g1, LateralNormKind::H10},
                               {&CauchyData::p0, LateralNormKind::H21},
                               {&CauchyData::p1, LateralNormKind::H10}};

  for (const auto& ch : channels) {
    LateralField noise(d.grid);
    for (std::size_t face = 0; face < g.faces().size(); ++face) {
      const Face& f = g.faces()[face];
      const double tan_lo = g.face_tan_coord(f, 0);
      const double tan_hi = g.face_tan_coord(f, f.tan_count - 1);
      const double tan_len = f.tan_count > 1 ? tan_hi - tan_lo : 1.0;
      if (f.tan_count == 1) {
        double cs[kModes], cc[kModes];
        for (int q = 0; q < kModes; ++q) cs[q] = rng.uniform(-1.0, 1.0);
        for (int q = 0; q < kModes; ++q) cc[q] = rng.uniform(-1.0, 1.0);
        for (int k = 0; k < g.nt(); ++k) {
          const double th = std::numbers::pi * g.t(k) / T;
          double v = 0.0;
          for (int q = 0; q < kModes; ++q)
            v += cs[q] * std::sin((q + 1) * th) + cc[q] * std::cos((q + 1) * th);
          noise.at(face, 0, k) = v;
        }
      } else {
        double cs[kModes][kModes], cc[kModes][kModes];
        for (int p = 0; p < kModes; ++p)
          for (int q = 0; q < kModes; ++q) cs[p][q] = rng.uniform(-1.0, 1.0);
        for (int p = 0; p < kModes; ++p)
          for (int q = 0; q < kModes; ++q) cc[p][q] = rng.uniform(-1.0, 1.0);
        for (int j = 0; j < f.tan_count; ++j) {
          const double xh =
              std::numbers::pi * (g.face_tan_coord(f, j) - tan_lo) / tan_len;
          for (int k = 0; k < g.nt(); ++k) {
            const double th = std::numbers::pi * g.t(k) / T;
            double v = 0.0;
            for (int p = 0; p < kModes; ++p)
              for (int q = 0; q < kModes; ++q)
                v += cs[p][q] * std::sin((p + 1) * xh) * std::sin((q + 1) * th) +
                     cc[p][q] * std::cos((p + 1) * xh) * std::cos((q + 1) * th);
            noise.at(face, j, k) = v;
          }
        }
      }
    }
    const double n = lateral_norm(noise, ch.kind);
    if (!(n > 0.0))
      throw std::runtime_error("perturb_to_delta: degenerate noise draw");
    const double scale = delta / n;
    auto& target = out.*(ch.member);
    for (std::size_t face = 0; face < noise.face_vals.size(); ++face)
      for (std::size_t i = 0; i < noise.face_vals[face].size(); ++i)
        target.face_vals[face][i] += scale * noise.face_vals[face][i];
  }
  return out;
}

void write_cauchy_csv(const CauchyData& d, const std::string& path) {
  const Grid& g = *d.grid;
  std::ostringstream os;
  os << "face,tan_index,t,g0,g1,p0,p1\n";
  for (std::size_t face = 0; face < g.faces().size(); ++face) {
    const Face& f = g.faces()[face];
    for (int j = 0; j < f.tan_count; ++j)
      for (int k = 0; k < g.nt(); ++k)
        os << face_label(f.id) << ',' << j << ',' << format_double(g.t(k))
           << ',' << format_double(d.g0.at(face, j, k)) << ','
           << format_double(d.g1.at(face, j, k)) << ','
           << format_double(d.p0.at(face, j, k)) << ','
           << format_double(d.p1.at(face, j, k)) << '\n';
  }
  write_text_atomic(path, os.str());
}

CauchyData read_cauchy_csv(const GridPtr& grid, const std::string& path) {
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line) || line != "face,tan_index,t,g0,g1,p0,p1")
    throw std::runtime_error("cauchy csv: bad header in " + path);
  CauchyData d(grid);
  const Grid& g = *grid;
  std::size_t rows = 0, expected = 0;
  for (const auto& f : g.faces())
    expected += static_cast<std::size_t>(f.tan_count) * g.nt();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7)
      throw std::runtime_error("cauchy csv: malformed row: " + line);
    const FaceId id = face_from_label(cells[0]);
    std::size_t face = 0;
    while (g.faces()[face].id != id) ++face;
    const int j = std::stoi(cells[1]);
    const double t = std::stod(cells[2]);
    const int k = static_cast<int>(std::lround(t / g.ht()));
    if (k < 0 || k >= g.nt() || std::abs(g.t(k) - t) > 1e-9 * (1.0 + g.domain().T))
      throw std::runtime_error("cauchy csv: time off-grid: " + cells[2]);
    d.g0.at(face, j, k) = std::stod(cells[3]);
    d.g1.at(face, j, k) = std::stod(cells[4]);
    d.p0.at(face, j, k) = std::stod(cells[5]);
    d.p1.at(face, j, k) = std::stod(cells[6]);
    ++rows;
  }
  if (rows != expected)
    throw std::runtime_error("cauchy csv: row count mismatch in " + path);
  return d;
}

namespace {

json grid_to_json(const Grid& g) {
  const DomainSpec& dom = g.domain();
  json j;
  j["n"] = dom.n;
  j["a"] = dom.a;
  j["b"] = dom.b;
  j["a2"] = dom.a2;
  j["T"] = dom.T;
  j["alpha"] = dom.alpha;
  j["nx1"] = g.nx1();
  j["nx2"] = g.nx2();
  j["nt"] = g.nt();
  return j;
}

GridPtr grid_from_json(const json& j) {
  DomainSpec dom;
  dom.n = j.at("n").get<int>();
  dom.a = j.at("a").get<double>();
  dom.b = j.at("b").get<double>();
  dom.a2 = j.at("a2").get<double>();
  dom.T = j.at("T").get<double>();
  dom.alpha = j.at("alpha").get<double>();
  return Grid::create(dom, j.at("nx1").get<int>(), j.at("nx2").get<int>(),
                      j.at("nt").get<int>());
}

}  // namespace

void write_cauchy_json(const CauchyData& d, const std::string& path) {
  const Grid& g = *d.grid;
  json j;
  j["schema"] = "mfglab.cauchy.v1";
  j["grid"] = grid_to_json(g);
  j["faces"] = json::array();
  for (std::size_t face = 0; face < g.faces().size(); ++face) {
    json fj;
    fj["face"] = face_label(g.faces()[face].id);
    fj["g0"] = d.g0.face_vals[face];
    fj["g1"] = d.g1.face_vals[face];
    fj["p0"] = d.p0.face_vals[face];
    fj["p1"] = d.p1.face_vals[face];
    j["faces"].push_back(std::move(fj));
  }
  write_text_atomic(path, j.dump(2) + "\n");
}

CauchyData read_cauchy_json(const std::string& path) {
  const json j = json::parse(read_text(path));
  if (j.at("schema").get<std::string>() != "mfglab.cauchy.v1")
    throw std::runtime_error("cauchy json: unknown schema in " + path);
  GridPtr grid = grid_from_json(j.at("grid"));
  CauchyData d(grid);
  for (const auto& fj : j.at("faces")) {
    const FaceId id = face_from_label(fj.at("face").get<std::string>());
    std::size_t face = 0;
    while (grid->faces()[face].id != id) ++face;
    auto load = [&](const char* key, LateralField& dst) {
      const auto vals = fj.at(key).get<std::vector<double>>();
      if (vals.size() != dst.face_vals[face].size())
        throw std::runtime_error("cauchy json: array size mismatch");
      dst.face_vals[face] = vals;
    };
    load("g0", d.g0);
    load("g1", d.g1);
    load("p0", d.p0);
    load("p1", d.p1);
  }
  return d;
}

}  // namespace mfglab
