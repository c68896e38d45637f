#pragma once

#include <string>
#include <vector>

#include "swayalign/config.hpp"
#include "swayalign/csv.hpp"

namespace swayalign {

/// Output of one alignment run.  estimates always has one row per enabled
/// method per update epoch; errors is parallel to it and empty when no
/// ground truth is available (hardware replay without a truth log).
struct AlignmentRun {
  std::vector<ErrorRow> errors;
  std::vector<EstimateRow> estimates;
};

/// Simulate per the config, then align with every enabled method at the
/// configured update cadence.  Deterministic in (config, seed).
AlignmentRun run_alignment(const ExperimentConfig& cfg);

/// Align a recorded IMU stream.  When truth is non-null, every update epoch
/// must have a truth sample within 1e-6 s and the error series is produced;
/// otherwise only estimates are.  The config supplies latitude, methods,
/// update cadence, and earth constants; its simulation keys are ignored.
AlignmentRun run_alignment(const ExperimentConfig& cfg,
                           const std::vector<ImuSample>& imu,
                           const std::vector<TruthSample>* truth);

/// Root-mean-square errors of one method over the ready epochs inside
/// [t_start, t_end]; lat_deg is NaN for methods that do not estimate
/// latitude.
struct RmseWindow {
  double t_start = 0;
  double t_end = 0;
  double phi_e_deg = 0;
  double phi_n_deg = 0;
  double phi_u_deg = 0;
  double lat_deg = 0;
  int epochs = 0;
};

/// Throws std::invalid_argument when the window is empty or outside the
/// series span, and std::runtime_error when no ready epochs fall inside.
RmseWindow rmse_window(const std::vector<ErrorRow>& rows,
                       const std::string& method, double t_start,
                       double t_end);

/// One latitude of a sweep: terminal latitude-free estimate vs truth.
struct SweepPoint {
  double lat_true_deg = 0;
  double lat_est_deg = 0;
  double lat_err_deg = 0;
  double phi_e_deg = 0;
  double phi_n_deg = 0;
  double phi_u_deg = 0;
  bool ready = false;
};

/// Run the latitude-free aligner once per latitude from lat_min_deg to
/// lat_max_deg inclusive, with sensor noise densities zeroed (biases kept)
/// so each point shows the systematic error alone.  Reports the last
/// update epoch of each run.
std::vector<SweepPoint> latitude_sweep(ExperimentConfig cfg,
                                       double lat_min_deg, double lat_max_deg,
                                       double step_deg);

/// Terminal-window RMSE of every enabled method for one randomized run.
struct MonteCarloRun {
  int run = 0;
  EulerAnglesd center;                  // randomized sway center
  std::vector<RmseWindow> method_rmse;  // parallel to cfg.methods
  double yaw_diff_deg = 0;  // least-squares minus dyadic-tensor yaw RMSE
};

struct MonteCarloSummary {
  struct MethodStats {
    std::string method;
    double mean_phi_e_deg = 0, std_phi_e_deg = 0;
    double mean_phi_n_deg = 0, std_phi_n_deg = 0;
    double mean_phi_u_deg = 0, std_phi_u_deg = 0;
    double mean_lat_deg = 0, std_lat_deg = 0;
  };
  int runs = 0;
  std::vector<MethodStats> stats;  // parallel to cfg.methods
  double mean_yaw_diff_deg = 0;
  double max_abs_yaw_diff_deg = 0;
};

struct MonteCarloResult {
  std::vector<MonteCarloRun> runs;
  MonteCarloSummary summary;
};

/// Repeat the configured experiment with per-run randomized sway centers
/// (pitch and roll uniform in +-60 deg, yaw uniform in +-180 deg) and
/// per-run noise streams, all derived from cfg.seed.  RMSE windows cover
/// the last cfg.rmse_window_s seconds of each run.
MonteCarloResult monte_carlo(const ExperimentConfig& cfg, int runs);

}  // namespace swayalign
