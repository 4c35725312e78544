#pragma once

#include "mfglab/scenario.hpp"

namespace mfglab {

/// Forward run plus its lateral data; the converged discrete pair is the
/// ground truth that sweeps reconstruct against.
struct ForwardRun {
  MFGSolution solution;
  CauchyData data;
  double apriori_violation = 0.0;
};

ForwardRun run_forward(const Scenario& sc, const GridPtr& grid);

/// Forward discretization error measured by one grid refinement: the
/// H^{2,1}(Q_{T,eps}) distance between the run and its 2x-refined restriction,
/// summed over u and m.
double forward_discretization_error(const Scenario& sc, double eps,
                                    const ForwardRun* base_run = nullptr);

struct SweepPoint {
  double delta = 0;
  double lambda = 0;
  double error = 0;            // H^{2,1}(Q_{T,eps}) error, u plus m
  bool in_fit_window = false;
  bool recon_converged = false;
  bool recon_diverged = false;
  std::array<double, 4> boundary_misfit{};
};

struct StabilityReport {
  std::string scenario_id;
  double eps = 0;
  double rho_theoretical = 0;
  double c2 = 0;
  double floor = 0;  // delta = 0 reconstruction error (saturation level)
  std::vector<SweepPoint> points;  // delta strictly decreasing
  double fitted_slope = 0;
  bool slope_defined = false;
  bool monotone_ok = false;
  bool passed = false;
  double slope_tol = 0;
};

/// For each delta: perturb -> reconstruct -> error against the forward truth
/// on Q_{T,eps}; then the log-log slope fit over the window of points above
/// floor_factor x the delta = 0 error.
StabilityReport run_stability_sweep(const Scenario& sc,
                                    const std::vector<double>& deltas,
                                    double eps,
                                    const std::vector<std::uint64_t>& seeds);

struct UniquenessReport {
  std::string scenario_id;
  double eps = 0;
  double error = 0;             // delta = 0, zero-init reconstruction error
  double forward_disc_error = 0;  // refinement-measured forward error
  bool passed = false;          // error <= 10 x forward_disc_error
  bool recon_diverged = false;
};

UniquenessReport run_uniqueness_check(const Scenario& sc, double eps);

/// H^{2,1}(Q_{T,eps}) distance between a reconstruction and the truth pair.
double reconstruction_error(const MFGSolution& recon, const MFGSolution& truth,
                            double eps);

// Report and manifest writers (JSON / CSV schemas frozen in the README).
void write_stability_report_json(const StabilityReport& r,
                                 const std::string& path);
void write_stability_report_csv(const StabilityReport& r,
                                const std::string& path);
void write_uniqueness_report_json(const UniquenessReport& r,
                                  const std::string& path);
void write_manifest(const std::string& path, const std::string& subcommand,
                    const Config& cfg, std::uint64_t seed);
void write_fields_csv(const MFGSolution& sol, const std::string& path);
void write_forward_result_json(const ForwardRun& run, const std::string& path);

}  // namespace mfglab
