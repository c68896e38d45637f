#include "swayalign/propagation.hpp"

#include <stdexcept>

#include "swayalign/attmath.hpp"

namespace swayalign {

void BodyTracker::update(const ImuSample& s) {
  if (!started_) {
    t_ = s.t;
    started_ = true;
    return;
  }
  if (!(s.t > t_)) {
    throw std::invalid_argument("BodyTracker: non-increasing sample time");
  }
  const double dt = s.t - t_;
  q_ = q_ * quat_from_rotvec(Vec3d(s.gyro * dt));
  if (++updates_ % 1000 == 0) q_.normalize();
  t_ = s.t;
}

void NavTracker::advance(double t) {
  if (!started_) {
    t0_ = t;
    started_ = true;
  } else if (t < t_) {
    throw std::invalid_argument("NavTracker: time moved backwards");
  }
  t_ = t;
}

Mat3d NavTracker::c_n_n0() const {
  return dcm_from_rotvec(Vec3d(omega_n_ * (t_ - t0_)));
}

VelocityIntegrator::VelocityIntegrator(Chain chain, const EarthModeld& earth,
                                       double lat_rad)
    : chain_(chain), earth_(earth) {
  omega_n_ = chain == Chain::kLatitudeKnown ? omega_ie_n(earth, lat_rad)
                                            : Vec3d::Zero();
}

Vec3d VelocityIntegrator::ref_integrand(double elapsed) const {
  if (chain_ == Chain::kLatitudeKnown) {
    return dcm_from_rotvec(Vec3d(omega_n_ * elapsed)) * (-gravity_n(earth_));
  }
  const double a = earth_.omega_e * elapsed;
  return Vec3d(std::cos(a), std::sin(a), 1.0);
}

void VelocityIntegrator::update(const ImuSample& s, const Mat3d& c_b_b0) {
  if (!anchored_) {
    t0_ = s.t;
    prev_t_ = s.t;
    anchored_ = true;
  } else if (!(s.t > prev_t_)) {
    throw std::invalid_argument("VelocityIntegrator: non-increasing sample time");
  }
  const double fnorm = s.accel.norm();
  if (fnorm < 0.1 * earth_.g) {
    ++skipped_;
    return;
  }

  Vec3d obs = c_b_b0 * s.accel;
  if (chain_ == Chain::kNormalized) obs /= fnorm;
  const Vec3d ref = ref_integrand(s.t - t0_);

  if (started_) {
    const double half_dt = 0.5 * (s.t - prev_t_);
    v_.ref += half_dt * (prev_ref_ + ref);
    v_.obs += half_dt * (prev_obs_ + obs);
  }
  prev_ref_ = ref;
  prev_obs_ = obs;
  prev_t_ = s.t;
  v_.t = s.t;
  started_ = true;
}

}  // namespace swayalign
