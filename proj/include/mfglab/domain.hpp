#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace mfglab {

/// Rectangular prism Omega = (a,b) x Prod_i (-a_i, a_i) with time horizon T
/// and diffusion coefficient alpha. Spatial dimension n is 1 or 2.
struct DomainSpec {
  int n = 1;
  double a = 1.0;
  double b = 2.0;
  double a2 = 1.0;  // transverse half-width, used only when n == 2
  double T = 1.0;
  double alpha = 1.0;

  /// Throws std::invalid_argument if 0 < a < b, T > 0, alpha > 0 or
  /// a2 > 0 (n == 2) fail, or n is not 1 or 2.
  void validate() const;

  double x1_length() const { return b - a; }
  /// Measure of the transverse cross-section Omega_1 (1 when n == 1).
  double transverse_measure() const { return n == 2 ? 2.0 * a2 : 1.0; }
};

enum class Axis : int { X1 = 0, X2 = 1, Time = 2 };

enum class FaceId : int { X1Lo = 0, X1Hi = 1, X2Lo = 2, X2Hi = 3 };

const char* face_label(FaceId id);
FaceId face_from_label(const std::string& label);

class Grid;

/// One lateral face of the space-time cylinder. Owns the index bookkeeping
/// for the nodes assigned to it: x1 faces own the full transverse range
/// (corner nodes included), x2 faces own the interior x1 range only, so the
/// face sets partition the lateral boundary.
struct Face {
  FaceId id;
  Axis normal_axis;       // X1 or X2
  int side;               // 0 = low coordinate, 1 = high coordinate
  int fixed_index;        // node index along the normal axis
  double normal_sign;     // -1 at the low face, +1 at the high face
  bool has_tangential;    // false for n == 1 x1-faces
  Axis tangential_axis;   // valid only when has_tangential
  int tan_begin;          // first owned tangential index
  int tan_count;          // number of owned tangential nodes
};

/// Uniform tensor-product grid over the closed cylinder
/// [a,b] x [-a2,a2] x [0,T]. Immutable after construction; shareable.
class Grid {
 public:
  static std::shared_ptr<const Grid> create(const DomainSpec& spec, int nx1,
                                            int nx2, int nt);

  const DomainSpec& domain() const { return domain_; }
  int nx1() const { return nx1_; }
  int nx2() const { return nx2_; }
  int nt() const { return nt_; }
  double hx1() const { return hx1_; }
  double hx2() const { return hx2_; }
  double ht() const { return ht_; }

  std::size_t num_nodes() const {
    return static_cast<std::size_t>(nx1_) * nx2_ * nt_;
  }
  std::size_t num_spatial() const {
    return static_cast<std::size_t>(nx1_) * nx2_;
  }

  std::size_t index(int i1, int i2, int it) const {
    return (static_cast<std::size_t>(it) * nx2_ + i2) * nx1_ + i1;
  }
  void decompose(std::size_t idx, int& i1, int& i2, int& it) const {
    i1 = static_cast<int>(idx % nx1_);
    idx /= nx1_;
    i2 = static_cast<int>(idx % nx2_);
    it = static_cast<int>(idx / nx2_);
  }

  double x1(int i) const { return x1_[i]; }
  double x2(int i) const { return x2_[i]; }
  double t(int i) const { return t_[i]; }
  std::span<const double> x1s() const { return x1_; }
  std::span<const double> x2s() const { return x2_; }
  std::span<const double> ts() const { return t_; }

  int count(Axis ax) const;
  double spacing(Axis ax) const;
  std::size_t stride(Axis ax) const;

  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(FaceId id) const;

  /// Grid index of a face node given its owned tangential slot and time index.
  std::size_t face_node(const Face& f, int j_tan, int it) const;
  /// Spatial (slice-local) index of a face node's position.
  std::size_t face_spatial_node(const Face& f, int j_tan) const;
  /// Coordinate along the tangential axis of the j-th owned node.
  double face_tan_coord(const Face& f, int j_tan) const;

  bool is_spatial_boundary(int i1, int i2) const {
    return i1 == 0 || i1 == nx1_ - 1 ||
           (nx2_ > 1 && (i2 == 0 || i2 == nx2_ - 1));
  }

  /// Trapezoidal quadrature weights per axis; X2 weights are {1} when n == 1.
  std::span<const double> axis_weights(Axis ax) const;
  /// Product weight over all active axes, one entry per node.
  std::span<const double> node_weights() const { return node_w_; }
  /// Spatial-only product weight, one entry per slice node.
  std::span<const double> spatial_weights() const { return spatial_w_; }

 private:
  Grid() = default;

  DomainSpec domain_;
  int nx1_ = 0, nx2_ = 0, nt_ = 0;
  double hx1_ = 0, hx2_ = 0, ht_ = 0;
  std::vector<double> x1_, x2_, t_;
  std::vector<double> w_x1_, w_x2_, w_t_;
  std::vector<double> node_w_, spatial_w_;
  std::vector<Face> faces_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Nodes of the shrunken cylinder Q_{T,eps} = Omega x (eps, T-eps).
/// The time window snaps conservatively: the lower cut is the largest grid
/// time <= eps, the upper cut the smallest grid time >= T-eps, and nodes
/// strictly between the snapped cuts are included. Requires 0 < eps < T/2.
struct RegionMask {
  std::vector<std::uint8_t> inside;  // one flag per grid node
  std::size_t count = 0;

  bool contains(std::size_t idx) const { return inside[idx] != 0; }
};

RegionMask shrink_cylinder(const Grid& grid, double eps);

}  // namespace mfglab
