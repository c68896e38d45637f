#pragma once

#include <cstdint>

#include "swayalign/earth.hpp"
#include "swayalign/types.hpp"

namespace swayalign {

/// One inertial sensor sample.  The gyro value is the average body rate over
/// the interval since the previous sample (an integrating-gyro reading:
/// rotation increment divided by the interval); the accelerometer value is
/// the specific force at the timestamp.  The first sample of a stream only
/// anchors the time origin, so its gyro field is an unused placeholder.
struct ImuSample {
  double t{0};     // s
  Vec3d gyro;      // rad/s
  Vec3d accel;     // m/s^2
};

/// Dead-reckons the rotation from the current body frame b to the body
/// frame b0 frozen at the first sample fed in, carried as a unit quaternion
/// and advanced per sample by the rotation vector gyro * dt.
class BodyTracker {
 public:
  /// Feed the next sample.  The first call anchors b0 (no integration);
  /// afterwards timestamps must strictly increase.
  void update(const ImuSample& s);

  Mat3d c_b_b0() const { return q_.toRotationMatrix(); }
  const UnitQuaterniond& quaternion() const { return q_; }
  double t() const { return t_; }
  bool started() const { return started_; }

 private:
  UnitQuaterniond q_ = UnitQuaterniond::Identity();  // b -> b0
  double t_ = 0.0;
  bool started_ = false;
  std::uint32_t updates_ = 0;
};

/// Rotation of the navigation frame since the anchor epoch due to earth
/// rotation at a known latitude.  The rate is constant, so the attitude is
/// evaluated in closed form (Rodrigues) from the elapsed time rather than
/// integrated.
class NavTracker {
 public:
  NavTracker(const EarthModeld& earth, double lat_rad)
      : omega_n_(omega_ie_n(earth, lat_rad)) {}

  /// Move to absolute time t; the first call anchors n0.
  void advance(double t);

  /// C_n^n0(t) = exp(skew(omega_ie_n * (t - t_anchor))).
  Mat3d c_n_n0() const;
  double t() const { return t_; }

 private:
  Vec3d omega_n_;
  double t0_ = 0.0;
  double t_ = 0.0;
  bool started_ = false;
};

/// Paired integrals of the rotated apparent-gravity observations (body
/// side) and the matching analytic reference, snapshotted by the aligners.
struct VelocityVectors {
  double t{0};
  Vec3d ref = Vec3d::Zero();
  Vec3d obs = Vec3d::Zero();
};

/// Trapezoidal accumulator for the velocity-vector pair.
///
/// LatitudeKnown chain:  ref integrand  C_n^n0(t) * (-gravity_n), i.e. the
/// apparent gravity seen from the frozen navigation frame; obs integrand
/// C_b^b0(t) * f_b.  Normalized chain (latitude-free): ref integrand
/// [cos(w dt), sin(w dt), 1] with dt measured from the anchor, obs integrand
/// the unit vector of C_b^b0(t) * f_b; the per-sample normalization removes
/// the gravity magnitude so latitude can be estimated alongside attitude.
///
/// Both integrals start at the first sample fed in, which only shifts them
/// by a common constant and preserves the constant rotation relating them.
/// Samples whose specific-force norm falls below 0.1 g are flagged and
/// skipped: their direction is unreliable for the normalized chain and they
/// carry almost no signal for the known chain.
class VelocityIntegrator {
 public:
  enum class Chain { kLatitudeKnown, kNormalized };

  /// lat_rad is required for the latitude-known chain and ignored by the
  /// normalized chain.
  VelocityIntegrator(Chain chain, const EarthModeld& earth, double lat_rad = 0.0);

  /// Advance both integrals to the sample time; c_b_b0 must be the body
  /// tracker state at that same time.
  void update(const ImuSample& s, const Mat3d& c_b_b0);

  VelocityVectors current() const { return v_; }
  int skipped_samples() const { return skipped_; }

 private:
  Vec3d ref_integrand(double elapsed) const;

  Chain chain_;
  EarthModeld earth_;
  Vec3d omega_n_;
  VelocityVectors v_;
  Vec3d prev_ref_ = Vec3d::Zero();
  Vec3d prev_obs_ = Vec3d::Zero();
  double t0_ = 0.0;
  double prev_t_ = 0.0;
  bool anchored_ = false;
  bool started_ = false;
  int skipped_ = 0;
};

}  // namespace swayalign
