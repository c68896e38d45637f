#include "swayalign/simulator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "swayalign/attmath.hpp"

namespace swayalign {

SwayKinematics sway_euler(const SwayProfile& profile, double t) {
  SwayKinematics k;
  double* angles[3] = {&k.angles.pitch, &k.angles.roll, &k.angles.yaw};
  double* rates[3] = {&k.rates.pitch, &k.rates.roll, &k.rates.yaw};
  const double centers[3] = {profile.center.pitch, profile.center.roll,
                             profile.center.yaw};
  for (int i = 0; i < 3; ++i) {
    const double w = 2.0 * std::numbers::pi / profile.period_s(i);
    *angles[i] = centers[i] + profile.amplitude(i) * std::cos(w * t);
    *rates[i] = -profile.amplitude(i) * w * std::sin(w * t);
  }
  return k;
}

Vec3d euler_rates_to_body_rate(const EulerAnglesd& angles,
                               const EulerAnglesd& rates) {
  if (std::abs(angles.pitch) > std::numbers::pi / 2 - 1e-6) {
    throw std::invalid_argument(
        "euler_rates_to_body_rate: pitch at gimbal singularity");
  }
  // Angular rate axes resolved in the body frame: yaw turns about the
  // navigation Up axis carried through pitch and roll, pitch about the
  // once-rolled Right axis, roll about the body Forth axis itself.
  const double sp = std::sin(angles.pitch), cp = std::cos(angles.pitch);
  const double sr = std::sin(angles.roll), cr = std::cos(angles.roll);
  return rates.yaw * Vec3d(-sr * cp, sp, cr * cp) +
         rates.pitch * Vec3d(cr, 0.0, sr) + rates.roll * Vec3d(0.0, 1.0, 0.0);
}

SimulatedImu synth_imu(const SwayProfile& profile, const SensorErrorModel& errors,
                       double lat_rad, double fs, double duration_s,
                       const EarthModeld& earth) {
  if (!(fs > 0) || !(duration_s > 0)) {
    throw std::invalid_argument("synth_imu: fs and duration must be positive");
  }
  const double dt = 1.0 / fs;
  const auto n = static_cast<std::size_t>(std::llround(duration_s * fs));

  const Vec3d omega_n = omega_ie_n(earth, lat_rad);
  const Vec3d minus_g = -gravity_n(earth);
  const Mat3d a0 = euler_to_dcm(sway_euler(profile, 0.0).angles);

  const double sigma_g = errors.gyro_arw * std::sqrt(fs);
  const double sigma_a = errors.accel_vrw * std::sqrt(fs);
  const Prng noise{errors.seed};

  SimulatedImu out;
  out.imu.reserve(n + 1);
  out.truth.reserve(n + 1);

  Mat3d c_prev = Mat3d::Identity();  // c_b_b0 at the previous sample
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * dt;

    TruthSample truth;
    truth.t = t;
    truth.euler = sway_euler(profile, t).angles;
    truth.c_b_n = euler_to_dcm(truth.euler);
    truth.c_b_b0 =
        a0.transpose() * dcm_from_rotvec(Vec3d(omega_n * t)) * truth.c_b_n;

    ImuSample s;
    s.t = t;
    if (k == 0) {
      s.gyro = Vec3d::Zero();  // placeholder: no preceding interval
    } else {
      const Vec3d increment =
          rotvec_from_dcm(Mat3d(c_prev.transpose() * truth.c_b_b0));
      s.gyro = increment / dt + errors.gyro_bias;
      for (int i = 0; i < 3; ++i) {
        s.gyro(i) += sigma_g * noise.gaussian(6 * k + i);
      }
    }
    s.accel = truth.c_b_n.transpose() * minus_g + errors.accel_bias;
    for (int i = 0; i < 3; ++i) {
      s.accel(i) += sigma_a * noise.gaussian(6 * k + 3 + i);
    }

    c_prev = truth.c_b_b0;
    out.imu.push_back(s);
    out.truth.push_back(truth);
  }
  return out;
}

}  // namespace swayalign
