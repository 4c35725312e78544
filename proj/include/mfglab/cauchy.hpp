#pragma once

#include <cstdint>
#include <string>

#include "mfglab/field.hpp"

namespace mfglab {

/// Scalar data on the lateral boundary S_T: one array per face, laid out
/// [tangential slot][time] with time contiguous.
struct LateralField {
  GridPtr grid;
  std::vector<std::vector<double>> face_vals;

  LateralField() = default;
  explicit LateralField(GridPtr g);

  double& at(std::size_t face, int j, int k) {
    return face_vals[face][static_cast<std::size_t>(j) * grid->nt() + k];
  }
  double at(std::size_t face, int j, int k) const {
    return face_vals[face][static_cast<std::size_t>(j) * grid->nt() + k];
  }
};

enum class LateralNormKind {
  H21,  // value, tangential derivatives to order 2, time derivative
  H10,  // value and first tangential derivative
};

/// Squared face-local norm, trapezoid weights over the face's owned nodes.
double face_norm_sq(const LateralField& d, std::size_t face,
                    LateralNormKind kind);
/// Face-sum norm over S_T: (sum of squared face norms)^{1/2}.
double lateral_norm(const LateralField& d, LateralNormKind kind);
/// d/de of lateral_norm(e)^2, as a lateral field.
LateralField lateral_norm_sq_gradient(const LateralField& e,
                                      LateralNormKind kind);

LateralField dirichlet_trace(const ScalarField& f);
LateralField neumann_trace(const ScalarField& f);
/// out += Tr^T r for the restriction trace.
void dirichlet_trace_adjoint(const LateralField& r, ScalarField& out);
/// out += N^T r for the one-sided normal-derivative trace.
void neumann_trace_adjoint(const LateralField& r, ScalarField& out);

/// Dirichlet and Neumann traces of the pair (u, m) on every lateral face.
struct CauchyData {
  GridPtr grid;
  LateralField g0, g1, p0, p1;  // u|_S, du/dnu|_S, m|_S, dm/dnu|_S

  CauchyData() = default;
  explicit CauchyData(GridPtr g)
      : grid(g), g0(g), g1(g), p0(g), p1(g) {}
};

CauchyData extract_traces(const ScalarField& u, const ScalarField& m);

/// Adds band-limited trigonometric noise (<= 4 modes per axis), rescaled so
/// the perturbation of each channel has norm exactly delta in the channel's
/// norm (H^{2,1} for g0/p0, H^{1,0} for g1/p1). delta = 0 returns the input.
CauchyData perturb_to_delta(const CauchyData& d, double delta,
                            std::uint64_t seed);

// Serialization. CSV columns: face,tan_index,t,g0,g1,p0,p1 in canonical row
// order (faces in grid order, tangential slot, then time). The JSON bundle
// carries the grid metadata. Doubles round-trip bit-exactly.
void write_cauchy_csv(const CauchyData& d, const std::string& path);
CauchyData read_cauchy_csv(const GridPtr& grid, const std::string& path);
void write_cauchy_json(const CauchyData& d, const std::string& path);
/// Rebuilds the grid from the embedded metadata.
CauchyData read_cauchy_json(const std::string& path);

}  // namespace mfglab
