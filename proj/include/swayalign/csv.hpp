#pragma once

#include <string>
#include <vector>

#include "swayalign/propagation.hpp"
#include "swayalign/simulator.hpp"

namespace swayalign {

/// One alignment-error output row.  Angles are in degrees; lat_err_deg is
/// NaN for the latitude-known methods.  When ready is false the estimate of
/// that epoch is not usable and the angle fields are NaN.
struct ErrorRow {
  double t = 0;
  std::string method;
  double phi_e_deg = 0;
  double phi_n_deg = 0;
  double phi_u_deg = 0;
  double lat_err_deg = 0;
  bool ready = false;
};

/// One attitude-estimate output row (replay without ground truth).  Euler
/// angles in degrees under the Rz*Rx*Ry convention; lat_deg is NaN for the
/// latitude-known methods.
struct EstimateRow {
  double t = 0;
  std::string method;
  double pitch_deg = 0;
  double roll_deg = 0;
  double yaw_deg = 0;
  double lat_deg = 0;
  bool ready = false;
};

// All writers format floating-point fields with 17 significant digits, so
// emit-then-ingest reproduces every double bit-exactly and identical runs
// produce byte-identical files.  All readers validate the exact header,
// the field count per row, and numeric syntax, reporting the offending
// line number; IMU and truth readers also require strictly increasing
// timestamps.

// `t,gx,gy,gz,ax,ay,az` in s, rad/s, m/s^2.
void write_imu_csv(const std::string& path, const std::vector<ImuSample>& s);
std::vector<ImuSample> read_imu_csv(const std::string& path);

// `t,pitch_deg,roll_deg,yaw_deg`; attitude matrices are reconstructed from
// the angles on ingest.
void write_truth_csv(const std::string& path,
                     const std::vector<TruthSample>& s);
std::vector<TruthSample> read_truth_csv(const std::string& path);

// `t,method,phi_e_deg,phi_n_deg,phi_u_deg,lat_err_deg,ready`.
void write_series_csv(const std::string& path,
                      const std::vector<ErrorRow>& rows);
std::vector<ErrorRow> read_series_csv(const std::string& path);

// `t,method,pitch_deg,roll_deg,yaw_deg,lat_deg,ready`.
void write_estimates_csv(const std::string& path,
                         const std::vector<EstimateRow>& rows);

}  // namespace swayalign
