#include "mfglab/domain.hpp"

#include <cmath>
#include <stdexcept>

namespace mfglab {

void DomainSpec::validate() const {
  if (n != 1 && n != 2)
    throw std::invalid_argument("DomainSpec: n must be 1 or 2");
  if (!(a > 0.0) || !(b > a))
    throw std::invalid_argument("DomainSpec: need 0 < a < b");
  if (!(T > 0.0)) throw std::invalid_argument("DomainSpec: need T > 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("DomainSpec: need alpha > 0");
  if (n == 2 && !(a2 > 0.0))
    throw std::invalid_argument("DomainSpec: need a2 > 0");
}

const char* face_label(FaceId id) {
  switch (id) {
    case FaceId::X1Lo: return "x1-";
    case FaceId::X1Hi: return "x1+";
    case FaceId::X2Lo: return "x2-";
    case FaceId::X2Hi: return "x2+";
  }
  return "?";
}

FaceId face_from_label(const std::string& label) {
  if (label == "x1-") return FaceId::X1Lo;
  if (label == "x1+") return FaceId::X1Hi;
  if (label == "x2-") return FaceId::X2Lo;
  if (label == "x2+") return FaceId::X2Hi;
  throw std::invalid_argument("unknown face label: " + label);
}

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  const double h = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) v[i] = lo + i * h;
  v.front() = lo;
  v.back() = hi;
  return v;
}

std::vector<double> trapezoid_weights(double h, int n) {
  if (n == 1) return {1.0};  // inactive axis carries no measure
  std::vector<double> w(n, h);
  w.front() = 0.5 * h;
  w.back() = 0.5 * h;
  return w;
}

}  // namespace

std::shared_ptr<const Grid> Grid::create(const DomainSpec& spec, int nx1,
                                         int nx2, int nt) {
  spec.validate();
  if (spec.n == 1) {
    if (nx2 != 1 && nx2 != 0)
      throw std::invalid_argument("Grid: nx2 must be 1 when n == 1");
    nx2 = 1;
  } else if (nx2 < 4) {
    throw std::invalid_argument("Grid: nx2 >= 4 required (stencil support)");
  }
  if (nx1 < 4 || nt < 4)
    throw std::invalid_argument("Grid: nx1, nt >= 4 required (stencil support)");

  auto g = std::shared_ptr<Grid>(new Grid());
  g->domain_ = spec;
  g->nx1_ = nx1;
  g->nx2_ = nx2;
  g->nt_ = nt;
  g->hx1_ = (spec.b - spec.a) / (nx1 - 1);
  g->hx2_ = spec.n == 2 ? (2.0 * spec.a2) / (nx2 - 1) : 0.0;
  g->ht_ = spec.T / (nt - 1);
  g->x1_ = linspace(spec.a, spec.b, nx1);
  g->x2_ = spec.n == 2 ? linspace(-spec.a2, spec.a2, nx2)
                       : std::vector<double>{0.0};
  g->t_ = linspace(0.0, spec.T, nt);
  g->w_x1_ = trapezoid_weights(g->hx1_, nx1);
  g->w_x2_ = spec.n == 2 ? trapezoid_weights(g->hx2_, nx2)
                         : std::vector<double>{1.0};
  g->w_t_ = trapezoid_weights(g->ht_, nt);

  g->spatial_w_.resize(g->num_spatial());
  for (int i2 = 0; i2 < nx2; ++i2)
    for (int i1 = 0; i1 < nx1; ++i1)
      g->spatial_w_[static_cast<std::size_t>(i2) * nx1 + i1] =
          g->w_x1_[i1] * g->w_x2_[i2];
  g->node_w_.resize(g->num_nodes());
  for (int it = 0; it < nt; ++it)
    for (std::size_t s = 0; s < g->num_spatial(); ++s)
      g->node_w_[static_cast<std::size_t>(it) * g->num_spatial() + s] =
          g->spatial_w_[s] * g->w_t_[it];

  // x1 faces own the full transverse range; x2 faces own the interior x1
  // range, so edge nodes land on the lowest-axis face exactly once.
  g->faces_.push_back(Face{FaceId::X1Lo, Axis::X1, 0, 0, -1.0, spec.n == 2,
                           Axis::X2, 0, nx2});
  g->faces_.push_back(Face{FaceId::X1Hi, Axis::X1, 1, nx1 - 1, +1.0,
                           spec.n == 2, Axis::X2, 0, nx2});
  if (spec.n == 2) {
    g->faces_.push_back(
        Face{FaceId::X2Lo, Axis::X2, 0, 0, -1.0, true, Axis::X1, 1, nx1 - 2});
    g->faces_.push_back(Face{FaceId::X2Hi, Axis::X2, 1, nx2 - 1, +1.0, true,
                             Axis::X1, 1, nx1 - 2});
  }
  return g;
}

int Grid::count(Axis ax) const {
  switch (ax) {
    case Axis::X1: return nx1_;
    case Axis::X2: return nx2_;
    case Axis::Time: return nt_;
  }
  return 0;
}

double Grid::spacing(Axis ax) const {
  switch (ax) {
    case Axis::X1: return hx1_;
    case Axis::X2: return hx2_;
    case Axis::Time: return ht_;
  }
  return 0.0;
}

std::size_t Grid::stride(Axis ax) const {
  switch (ax) {
    case Axis::X1: return 1;
    case Axis::X2: return nx1_;
    case Axis::Time: return static_cast<std::size_t>(nx1_) * nx2_;
  }
  return 0;
}

const Face& Grid::face(FaceId id) const {
  for (const auto& f : faces_)
    if (f.id == id) return f;
  throw std::invalid_argument("face not present on this grid");
}

std::size_t Grid::face_spatial_node(const Face& f, int j_tan) const {
  const int j = f.tan_begin + j_tan;
  if (f.normal_axis == Axis::X1) {
    const int i2 = domain_.n == 2 ? j : 0;
    return static_cast<std::size_t>(i2) * nx1_ + f.fixed_index;
  }
  return static_cast<std::size_t>(f.fixed_index) * nx1_ + j;
}

std::size_t Grid::face_node(const Face& f, int j_tan, int it) const {
  return static_cast<std::size_t>(it) * num_spatial() +
         face_spatial_node(f, j_tan);
}

double Grid::face_tan_coord(const Face& f, int j_tan) const {
  if (!f.has_tangential) return 0.0;
  const int j = f.tan_begin + j_tan;
  return f.tangential_axis == Axis::X1 ? x1_[j] : x2_[j];
}

std::span<const double> Grid::axis_weights(Axis ax) const {
  switch (ax) {
    case Axis::X1: return w_x1_;
    case Axis::X2: return w_x2_;
    case Axis::Time: return w_t_;
  }
  return {};
}

RegionMask shrink_cylinder(const Grid& grid, double eps) {
  const double T = grid.domain().T;
  if (!(eps > 0.0) || !(eps < 0.5 * T))
    throw std::invalid_argument("shrink_cylinder: need 0 < eps < T/2");

  const double fuzz = 1e-12 * T;
  // Largest grid time <= eps and smallest grid time >= T - eps.
  int k_lo = 0, k_hi = grid.nt() - 1;
  for (int k = 0; k < grid.nt(); ++k)
    if (grid.t(k) <= eps + fuzz) k_lo = k;
  for (int k = grid.nt() - 1; k >= 0; --k)
    if (grid.t(k) >= T - eps - fuzz) k_hi = k;

  RegionMask region;
  region.inside.assign(grid.num_nodes(), 0);
  for (int it = k_lo + 1; it < k_hi; ++it)
    for (std::size_t s = 0; s < grid.num_spatial(); ++s) {
      region.inside[static_cast<std::size_t>(it) * grid.num_spatial() + s] = 1;
      ++region.count;
    }
  if (region.count == 0)
    throw std::invalid_argument("shrink_cylinder: empty Q_{T,eps} at this eps");
  return region;
}

}  // namespace mfglab
