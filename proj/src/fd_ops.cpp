#include "mfglab/fd_ops.hpp"

#include <stdexcept>

namespace mfglab {

void stencil_apply_line(const double* in, double* out, std::ptrdiff_t stride,
                        int n, double h, int order) {
  auto at = [&](int i) { return in[i * stride]; };
  if (order == 1) {
    const double c = 1.0 / (2.0 * h);
    out[0] = c * (-3.0 * at(0) + 4.0 * at(1) - at(2));
    for (int i = 1; i < n - 1; ++i)
      out[i * stride] = c * (at(i + 1) - at(i - 1));
    out[(n - 1) * stride] =
        c * (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3));
  } else if (order == 2) {
    const double c = 1.0 / (h * h);
    out[0] = c * (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3));
    for (int i = 1; i < n - 1; ++i)
      out[i * stride] = c * (at(i + 1) - 2.0 * at(i) + at(i - 1));
    out[(n - 1) * stride] = c * (2.0 * at(n - 1) - 5.0 * at(n - 2) +
                                 4.0 * at(n - 3) - at(n - 4));
  } else {
    throw std::invalid_argument("stencil order must be 1 or 2");
  }
}

void stencil_scatter_line(const double* in, double* out, std::ptrdiff_t stride,
                          int n, double h, int order) {
  auto r = [&](int i) { return in[i * stride]; };
  auto add = [&](int j, double v) { out[j * stride] += v; };
  if (order == 1) {
    const double c = 1.0 / (2.0 * h);
    add(0, c * -3.0 * r(0));
    add(1, c * 4.0 * r(0));
    add(2, c * -1.0 * r(0));
    for (int i = 1; i < n - 1; ++i) {
      add(i + 1, c * r(i));
      add(i - 1, -c * r(i));
    }
    add(n - 1, c * 3.0 * r(n - 1));
    add(n - 2, c * -4.0 * r(n - 1));
    add(n - 3, c * r(n - 1));
  } else if (order == 2) {
    const double c = 1.0 / (h * h);
    add(0, c * 2.0 * r(0));
    add(1, c * -5.0 * r(0));
    add(2, c * 4.0 * r(0));
    add(3, c * -1.0 * r(0));
    for (int i = 1; i < n - 1; ++i) {
      add(i + 1, c * r(i));
      add(i, -2.0 * c * r(i));
      add(i - 1, c * r(i));
    }
    add(n - 1, c * 2.0 * r(n - 1));
    add(n - 2, c * -5.0 * r(n - 1));
    add(n - 3, c * 4.0 * r(n - 1));
    add(n - 4, c * -1.0 * r(n - 1));
  } else {
    throw std::invalid_argument("stencil order must be 1 or 2");
  }
}

namespace {

// Applies op(base) for every line of the grid along the given axis.
template <typename Op>
void for_each_line(const Grid& g, Axis ax, Op&& op) {
  const Axis others[2] = {ax == Axis::X1 ? Axis::X2 : Axis::X1,
                          ax == Axis::Time ? Axis::X2 : Axis::Time};
  const int cb = g.count(others[0]);
  const int cc = g.count(others[1]);
  const std::size_t sb = g.stride(others[0]);
  const std::size_t sc = g.stride(others[1]);
  for (int ic = 0; ic < cc; ++ic)
    for (int ib = 0; ib < cb; ++ib) op(ic * sc + ib * sb);
}

void check_axis(const Grid& g, Axis ax) {
  if (g.count(ax) < 4)
    throw std::invalid_argument("axis has fewer than 4 nodes");
}

}  // namespace

ScalarField apply_axis(const ScalarField& f, Axis ax, int order) {
  const Grid& g = *f.grid;
  check_axis(g, ax);
  ScalarField out(f.grid);
  const std::ptrdiff_t stride = static_cast<std::ptrdiff_t>(g.stride(ax));
  const int n = g.count(ax);
  const double h = g.spacing(ax);
  for_each_line(g, ax, [&](std::size_t base) {
    stencil_apply_line(f.values.data() + base, out.values.data() + base,
                       stride, n, h, order);
  });
  return out;
}

ScalarField apply_axis_transpose(const ScalarField& f, Axis ax, int order) {
  const Grid& g = *f.grid;
  check_axis(g, ax);
  ScalarField out(f.grid, 0.0);
  const std::ptrdiff_t stride = static_cast<std::ptrdiff_t>(g.stride(ax));
  const int n = g.count(ax);
  const double h = g.spacing(ax);
  for_each_line(g, ax, [&](std::size_t base) {
    stencil_scatter_line(f.values.data() + base, out.values.data() + base,
                         stride, n, h, order);
  });
  return out;
}

ScalarField d_t(const ScalarField& f) { return apply_axis(f, Axis::Time, 1); }

std::vector<ScalarField> grad(const ScalarField& f) {
  std::vector<ScalarField> g;
  g.push_back(apply_axis(f, Axis::X1, 1));
  if (f.grid->domain().n == 2) g.push_back(apply_axis(f, Axis::X2, 1));
  return g;
}

ScalarField laplacian(const ScalarField& f) {
  ScalarField out = apply_axis(f, Axis::X1, 2);
  if (f.grid->domain().n == 2) axpy(1.0, apply_axis(f, Axis::X2, 2), out);
  return out;
}

ScalarField laplacian_transpose(const ScalarField& f) {
  ScalarField out = apply_axis_transpose(f, Axis::X1, 2);
  if (f.grid->domain().n == 2)
    axpy(1.0, apply_axis_transpose(f, Axis::X2, 2), out);
  return out;
}

HessianFields hessian(const ScalarField& f) {
  HessianFields h;
  h.comps.push_back(apply_axis(f, Axis::X1, 2));
  h.multiplicity.push_back(1.0);
  if (f.grid->domain().n == 2) {
    h.comps.push_back(apply_axis(f, Axis::X2, 2));
    h.multiplicity.push_back(1.0);
    h.comps.push_back(apply_axis(apply_axis(f, Axis::X1, 1), Axis::X2, 1));
    h.multiplicity.push_back(2.0);
  }
  return h;
}

ScalarField HessianFields::sum_of_squares() const {
  ScalarField out(comps.front().grid, 0.0);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (std::size_t i = 0; i < out.size(); ++i)
      out.values[i] += multiplicity[c] * comps[c][i] * comps[c][i];
  return out;
}

std::vector<double> slice_deriv(const Grid& grid, std::span<const double> s,
                                Axis ax, int order) {
  if (ax == Axis::Time)
    throw std::invalid_argument("slice_deriv: spatial axes only");
  check_axis(grid, ax);
  std::vector<double> out(grid.num_spatial());
  const int n = grid.count(ax);
  const double h = grid.spacing(ax);
  if (ax == Axis::X1) {
    for (int i2 = 0; i2 < grid.nx2(); ++i2) {
      const std::size_t base = static_cast<std::size_t>(i2) * grid.nx1();
      stencil_apply_line(s.data() + base, out.data() + base, 1, n, h, order);
    }
  } else {
    for (int i1 = 0; i1 < grid.nx1(); ++i1)
      stencil_apply_line(s.data() + i1, out.data() + i1, grid.nx1(), n, h,
                         order);
  }
  return out;
}

}  // namespace mfglab
