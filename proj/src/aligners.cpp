#include "swayalign/aligners.hpp"

#include <cmath>
#include <numbers>

#include "swayalign/attmath.hpp"

namespace swayalign {

void DyadicAccumulator::add(const VelocityVectors& v) {
  const Mat3d r = v.ref * v.ref.transpose();
  const Mat3d w = v.obs * v.obs.transpose();
  ref_sum_ += 0.5 * (r + r.transpose());
  obs_sum_ += 0.5 * (w + w.transpose());
  ++n_;
}

void WahbaAccumulator::add(const VelocityVectors& v) {
  b_sum_ += v.ref * v.obs.transpose();
  ++n_;
}

namespace {

// Orthonormal right-handed-by-construction basis {v1, v1 x v2, (v1 x v2) x v1}
// (each column normalized).  Both sides of the dual-epoch method use the
// same construction, so the common improper handedness cancels in the
// product and the result is a proper rotation.
Mat3d vector_triad(const Vec3d& v1, const Vec3d& v2) {
  Mat3d u;
  const Vec3d b = v1.cross(v2);
  u.col(0) = v1.normalized();
  u.col(1) = b.normalized();
  u.col(2) = b.cross(v1).normalized();
  return u;
}

// Separation angle in [0, pi/2]: distance from collinearity in either
// direction (parallel or anti-parallel both count as degenerate).
double collinearity_margin(const Vec3d& a, const Vec3d& b) {
  const double angle = std::atan2(a.cross(b).norm(), a.dot(b));
  return std::min(angle, std::numbers::pi - angle);
}

}  // namespace

AlignmentEstimate triad_align(const VelocityVectors& early,
                              const VelocityVectors& late) {
  AlignmentEstimate est;
  const double margin = std::min(collinearity_margin(late.ref, early.ref),
                                 collinearity_margin(late.obs, early.obs));
  est.diag.readiness_margin = margin;
  if (!(margin > 1e-4)) {
    return est;
  }
  const Mat3d u_ref = vector_triad(early.ref, late.ref);
  const Mat3d u_obs = vector_triad(early.obs, late.obs);
  est.c_b0 = u_ref * u_obs.transpose();
  est.ready = true;
  return est;
}

AlignmentEstimate oba_align(const WahbaAccumulator& acc) {
  AlignmentEstimate est;
  if (acc.count() < 2) {
    return est;
  }
  const Mat3d b = acc.attitude_profile();

  // Numerical rank of the profile via its singular values; one pair of
  // directions is not enough to pin down the rotation about it.
  const SymEigResult<double, 3> btb = sym_eig3(Mat3d(b.transpose() * b));
  const double s1 = std::sqrt(std::max(btb.values(0), 0.0));
  const double s2 = std::sqrt(std::max(btb.values(1), 0.0));
  est.diag.readiness_margin = s1 > 0.0 ? s2 / s1 : 0.0;
  if (!(s1 > 0.0 && s2 > 1e-9 * s1)) {
    return est;
  }

  // Davenport eigenvalue form of the least-squares attitude problem: the
  // optimal quaternion (w, x, y, z) is the eigenvector of K for its largest
  // eigenvalue.
  const double sigma = b.trace();
  const Vec3d z(b(2, 1) - b(1, 2), b(0, 2) - b(2, 0), b(1, 0) - b(0, 1));
  Mat4d k;
  k(0, 0) = sigma;
  k.block<1, 3>(0, 1) = z.transpose();
  k.block<3, 1>(1, 0) = z;
  k.block<3, 3>(1, 1) = Mat3d(b + b.transpose()) - sigma * Mat3d::Identity();

  const MaxEig4Result<double> top = max_eig4(k);
  const UnitQuaterniond q(top.vector(0), top.vector(1), top.vector(2),
                          top.vector(3));
  est.c_b0 = q.toRotationMatrix();
  est.ready = true;
  return est;
}

namespace detail {

OrientedBases orient_eigenvector_pairs(Mat3d u_ref, Mat3d u_obs,
                                       const Vec3d& anchor_ref,
                                       const Vec3d& anchor_obs,
                                       const Vec3d* fb_ref, const Vec3d* fb_obs,
                                       bool third_from_cross) {
  OrientedBases out;
  const int n_signed = third_from_cross ? 2 : 3;
  const double tol_ref = 1e-12 * anchor_ref.norm();
  const double tol_obs = 1e-12 * anchor_obs.norm();
  for (int j = 0; j < n_signed; ++j) {
    double pr = anchor_ref.dot(u_ref.col(j));
    double po = anchor_obs.dot(u_obs.col(j));
    if (std::abs(pr) <= tol_ref || std::abs(po) <= tol_obs) {
      if (fb_ref != nullptr && fb_obs != nullptr) {
        const double fr = fb_ref->dot(u_ref.col(j));
        const double fo = fb_obs->dot(u_obs.col(j));
        if (std::abs(fr) > 1e-12 * fb_ref->norm() &&
            std::abs(fo) > 1e-12 * fb_obs->norm()) {
          pr = fr;
          po = fo;
          out.fallback_used = true;
        } else {
          out.weak = true;
          continue;
        }
      } else {
        out.weak = true;
        continue;
      }
    }
    if (pr * po < 0.0) {
      u_ref.col(j) = -u_ref.col(j);
    }
  }
  if (third_from_cross) {
    u_ref.col(2) = u_ref.col(0).cross(u_ref.col(1));
    u_obs.col(2) = u_obs.col(0).cross(u_obs.col(1));
  }
  out.u_ref = u_ref;
  out.u_obs = u_obs;
  return out;
}

}  // namespace detail

AlignmentEstimate newtriad_solve(const DyadicAccumulator& acc,
                                 const VelocityVectors& anchor,
                                 const VelocityVectors* fallback_anchor) {
  AlignmentEstimate est;
  if (acc.count() < 2) {
    return est;
  }
  const SymEigResult<double, 3> er = sym_eig3(acc.t_ref());
  const SymEigResult<double, 3> ew = sym_eig3(acc.t_obs());
  est.diag.readiness_margin =
      er.values(0) > 0.0 ? (er.values(1) - er.values(2)) / er.values(0) : 0.0;
  if (!(est.diag.readiness_margin > 1e-7)) {
    return est;
  }

  // The two tensors are similar through the constant rotation, so matched
  // eigenvalue order pairs the eigenvectors; only the per-column signs and
  // the third column (completed by cross product, forcing a proper
  // rotation) remain to be fixed.
  const Vec3d* fb_ref = fallback_anchor != nullptr ? &fallback_anchor->ref : nullptr;
  const Vec3d* fb_obs = fallback_anchor != nullptr ? &fallback_anchor->obs : nullptr;
  const detail::OrientedBases ob = detail::orient_eigenvector_pairs(
      er.vectors, ew.vectors, anchor.ref, anchor.obs, fb_ref, fb_obs,
      /*third_from_cross=*/true);
  est.diag.sign_fallback = ob.fallback_used;
  if (ob.weak) {
    return est;
  }
  est.c_b0 = ob.u_ref * ob.u_obs.transpose();
  est.ready = true;
  return est;
}

LatitudeEstimate salad_latitude(const DyadicAccumulator& acc,
                                std::optional<double> prev_l_plus) {
  LatitudeEstimate est;
  if (acc.count() < 2) {
    return est;
  }
  const Mat3d tr = acc.t_ref();
  const Mat3d tw = acc.t_obs();
  const double num = tw.trace() - tr(2, 2);
  const double den = tr(0, 0) + tr(1, 1) - tr(2, 2);
  // Both num and den are negative once the reference cone has opened up
  // (they grow like -(w dt)^2); only the magnitude gate matters.
  if (!(std::abs(den) > 1e-12)) {
    return est;
  }
  est.valid = true;
  est.raw_arg = num / den;
  if (est.raw_arg > 1.0) {
    // Too little earth-rotation signal accumulated yet: the cos^2 estimate
    // overshoots its domain and the magnitude pins at zero.
    est.l_plus = 0.0;
    est.clamped = true;
    est.stage = LatitudeStage::kGrowing;
    return est;
  }
  if (est.raw_arg < 0.0) {
    est.l_plus = std::numbers::pi / 2;
    est.clamped = true;
  } else {
    est.l_plus = std::acos(std::sqrt(est.raw_arg));
  }
  est.stage = (prev_l_plus.has_value() &&
               std::abs(est.l_plus - *prev_l_plus) < deg_to_rad(0.01))
                  ? LatitudeStage::kStable
                  : LatitudeStage::kAccelerating;
  return est;
}

AlignmentEstimate salad_solve(const DyadicAccumulator& acc,
                              const LatitudeEstimate& lat,
                              const VelocityVectors& anchor,
                              const VelocityVectors* fallback_anchor) {
  AlignmentEstimate est;
  est.diag.sqrt_arg = lat.raw_arg;
  est.diag.clamped = lat.clamped;
  est.diag.stage = lat.stage;
  if (acc.count() < 2 || !lat.valid) {
    return est;
  }

  // Undo the latitude scaling S = diag(cosL, cosL, sinL) on the reference
  // side using the magnitude estimate; after that the two tensors are
  // similar through the constant rotation, like the latitude-known case.
  const Vec3d s_diag(std::cos(lat.l_plus), std::cos(lat.l_plus),
                     std::sin(lat.l_plus));
  const Mat3d a_ref = s_diag.asDiagonal() * acc.t_ref() * s_diag.asDiagonal();
  const SymEigResult<double, 3> er = sym_eig3(a_ref);
  const SymEigResult<double, 3> ew = sym_eig3(acc.t_obs());
  est.diag.readiness_margin =
      er.values(0) > 0.0 ? (er.values(1) - er.values(2)) / er.values(0) : 0.0;
  if (!(est.diag.readiness_margin > 1e-7)) {
    return est;
  }

  // All three eigenvector signs are fixed independently from the anchors;
  // the determinant of the resulting basis product then carries the
  // hemisphere: the construction can only reproduce the true rotation (det
  // +1, northern) or the true rotation times diag(1, 1, -1) (det -1,
  // southern latitude folded onto its magnitude).
  const Vec3d anchor_ref = s_diag.asDiagonal() * anchor.ref;
  Vec3d fb_ref_v;
  const Vec3d* fb_ref = nullptr;
  const Vec3d* fb_obs = nullptr;
  if (fallback_anchor != nullptr) {
    fb_ref_v = s_diag.asDiagonal() * fallback_anchor->ref;
    fb_ref = &fb_ref_v;
    fb_obs = &fallback_anchor->obs;
  }
  const detail::OrientedBases ob = detail::orient_eigenvector_pairs(
      er.vectors, ew.vectors, anchor_ref, anchor.obs, fb_ref, fb_obs,
      /*third_from_cross=*/false);
  est.diag.sign_fallback = ob.fallback_used;
  if (ob.weak) {
    return est;
  }
  const Mat3d c_prime = ob.u_ref * ob.u_obs.transpose();
  const double d = c_prime.determinant();
  if (std::abs(std::abs(d) - 1.0) > 1e-6) {
    return est;
  }
  const double hemisphere = d > 0.0 ? 1.0 : -1.0;
  est.diag.det_sign = d > 0.0 ? 1 : -1;
  est.latitude = hemisphere * lat.l_plus;
  est.c_b0 = Vec3d(1.0, 1.0, hemisphere).asDiagonal() * c_prime;
  est.ready = true;
  return est;
}

Mat3d realtime_attitude_latknown(const Mat3d& c_b0_n0, const Mat3d& c_n_n0,
                                 const Mat3d& c_b_b0) {
  return c_n_n0.transpose() * c_b0_n0 * c_b_b0;
}

Mat3d realtime_attitude_salad(const Mat3d& c_b0_i0, double lat_rad,
                              double elapsed, const Mat3d& c_b_b0,
                              const EarthModeld& earth) {
  return c_eprime_n(lat_rad) * c_i0_eprime(earth, elapsed) * c_b0_i0 * c_b_b0;
}

Vec3d misalignment(const Mat3d& c_est, const Mat3d& c_true) {
  return rotvec_from_dcm(Mat3d(c_est * c_true.transpose()));
}

}  // namespace swayalign
