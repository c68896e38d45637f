#pragma once

#include <cstdint>
#include <vector>

#include "swayalign/earth.hpp"
#include "swayalign/propagation.hpp"
#include "swayalign/rng.hpp"
#include "swayalign/types.hpp"

namespace swayalign {

/// Sinusoidal angular sway of a moored, rocking carrier: each Euler channel
/// follows center + amplitude * cos(2 pi t / period).  Defaults reproduce
/// the reference experiment (7/10/5 deg at 5/6/7 s on pitch/roll/yaw).
struct SwayProfile {
  Vec3d amplitude{deg_to_rad(7.0), deg_to_rad(10.0), deg_to_rad(5.0)};
  Vec3d period_s{5.0, 6.0, 7.0};
  EulerAnglesd center{};
};

/// Constant biases plus white noise.  Noise densities are per square root
/// of time/bandwidth; the per-sample standard deviation at rate fs is
/// density * sqrt(fs).  Defaults reproduce the reference experiment grade
/// (0.02 deg/h, 0.002 deg/sqrt(h) gyros; 100 ug, 10 ug/sqrt(Hz)
/// accelerometers with g = 9.7803267714).
struct SensorErrorModel {
  Vec3d gyro_bias = Vec3d::Constant(deg_to_rad(0.02) / 3600.0);  // rad/s
  double gyro_arw = deg_to_rad(0.002) / 60.0;                    // rad/sqrt(s)
  Vec3d accel_bias = Vec3d::Constant(100e-6 * 9.7803267714);     // m/s^2
  double accel_vrw = 10e-6 * 9.7803267714;                       // (m/s^2)/sqrt(Hz)
  std::uint64_t seed = 1;

  static SensorErrorModel zero() {
    SensorErrorModel m;
    m.gyro_bias.setZero();
    m.gyro_arw = 0.0;
    m.accel_bias.setZero();
    m.accel_vrw = 0.0;
    return m;
  }

  /// Biases only, noise densities zeroed.
  static SensorErrorModel bias_only() {
    SensorErrorModel m;
    m.gyro_arw = 0.0;
    m.accel_vrw = 0.0;
    return m;
  }
};

/// Ground truth at one sample time.
struct TruthSample {
  double t{0};
  EulerAnglesd euler;
  Mat3d c_b_n;   // body to East-North-Up
  Mat3d c_b_b0;  // body to body-at-anchor (t = 0)
};

struct SwayKinematics {
  EulerAnglesd angles;
  EulerAnglesd rates;  // d/dt of each angle, rad/s
};

/// Sway angles and their exact analytic time derivatives.
SwayKinematics sway_euler(const SwayProfile& profile, double t);

/// Body angular rate relative to the navigation frame from Euler-angle
/// rates (the inverse differential kinematics of the Rz*Rx*Ry attitude
/// chain).  Throws within 1e-6 rad of pitch = +-pi/2 where the map is
/// singular.
Vec3d euler_rates_to_body_rate(const EulerAnglesd& angles,
                               const EulerAnglesd& rates);

/// Simulated IMU stream plus ground truth.
struct SimulatedImu {
  std::vector<ImuSample> imu;
  std::vector<TruthSample> truth;
};

/// Synthesize an IMU log of a swaying carrier at rest at latitude lat_rad.
///
/// Samples are emitted at t = 0, 1/fs, ..., duration.  Gyro samples carry
/// the exact rotation increment of the body relative to inertial space over
/// the preceding interval divided by the interval (so a quaternion tracker
/// replaying them commits no discretization error); the first sample's gyro
/// is a zero placeholder.  Accelerometer samples carry the instantaneous
/// specific force.  Biases and white noise per SensorErrorModel are added
/// on top, deterministically in the model's seed; the per-sample noise
/// sigma is density * sqrt(fs).
SimulatedImu synth_imu(const SwayProfile& profile, const SensorErrorModel& errors,
                       double lat_rad, double fs, double duration_s,
                       const EarthModeld& earth = {});

}  // namespace swayalign
