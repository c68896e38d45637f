#pragma once

#include <limits>
#include <optional>

#include "swayalign/earth.hpp"
#include "swayalign/propagation.hpp"
#include "swayalign/types.hpp"

namespace swayalign {

/// The four alignment methods this library implements.  The first three
/// need the latitude as an input; the last estimates it.
enum class AlignMethod { kTriad, kOba, kNewTriad, kSalad };

/// Running weighted mean of the outer products v v^T of both velocity
/// vectors, with uniform weights 1/n.  The tensors are symmetrized on every
/// add so accumulated rounding cannot leave the symmetric cone.
class DyadicAccumulator {
 public:
  void add(const VelocityVectors& v);
  int count() const { return n_; }
  Mat3d t_ref() const { return ref_sum_ / n_; }
  Mat3d t_obs() const { return obs_sum_ / n_; }

 private:
  Mat3d ref_sum_ = Mat3d::Zero();
  Mat3d obs_sum_ = Mat3d::Zero();
  int n_ = 0;
};

/// Running attitude profile B = (1/n) sum of ref * obs^T for the
/// least-squares (Wahba) formulation.
class WahbaAccumulator {
 public:
  void add(const VelocityVectors& v);
  int count() const { return n_; }
  Mat3d attitude_profile() const { return b_sum_ / n_; }

 private:
  Mat3d b_sum_ = Mat3d::Zero();
  int n_ = 0;
};

/// Phase of the latitude estimator's convergence, mirroring the observable
/// behaviour of the arccos argument: while the square-root argument is
/// still clamped at 1 the estimate is pinned to zero (growing); once inside
/// the domain it first moves quickly (accelerating) and then settles
/// (stable, change per update below 0.01 deg).
enum class LatitudeStage { kGrowing, kAccelerating, kStable };

struct AlignmentDiagnostics {
  /// Readiness margin of the solver, method-specific: the reference-tensor
  /// relative eigengap (lambda2 - lambda3) / lambda1 for the dyadic
  /// methods, the singular-value ratio sigma2/sigma1 of the attitude
  /// profile for the least-squares method, and the epoch-pair separation
  /// angle (rad) for the dual-vector method.
  double readiness_margin = 0.0;
  /// Raw arccos^2 argument of the latitude extraction before clamping.
  double sqrt_arg = std::numeric_limits<double>::quiet_NaN();
  /// Determinant sign of the eigenvector-pair product (the hemisphere
  /// decision): +1 north, -1 south, 0 when not applicable.
  int det_sign = 0;
  /// Anchor inner products were too small at the current epoch and the
  /// previous epoch's vectors decided the eigenvector signs instead.
  bool sign_fallback = false;
  /// The latitude argument fell outside [0, 1] and was clamped.
  bool clamped = false;
  LatitudeStage stage = LatitudeStage::kGrowing;
};

/// Result of one alignment solve.
///
/// c_b0 is the constant rotation the method estimates: body-at-anchor to
/// navigation-at-anchor for the latitude-known methods, body-at-anchor to
/// frozen-inertial i0 for the latitude-free method.  c_b_n is filled by
/// realtime_attitude once composed with the time-dependent factors.
struct AlignmentEstimate {
  Mat3d c_b0 = Mat3d::Identity();
  Mat3d c_b_n = Mat3d::Identity();
  std::optional<double> latitude;  // rad, latitude-free method only
  bool ready = false;
  AlignmentDiagnostics diag;
};

/// Dual-epoch vector alignment: build orthonormal triads from the velocity
/// vectors at two epochs on both sides and take their product.  Not ready
/// until both pairs subtend more than 1e-4 rad.
AlignmentEstimate triad_align(const VelocityVectors& early,
                              const VelocityVectors& late);

/// Least-squares (Wahba) alignment over all accumulated epochs, solved by
/// the Davenport quaternion eigenvalue method.  Not ready until the
/// attitude profile has numerical rank 2 (second singular value above
/// 1e-9 of the first).
AlignmentEstimate oba_align(const WahbaAccumulator& acc);

/// Dyadic-tensor alignment: the reference and observation tensors are
/// similar through the constant rotation, so their (shared) eigenvalues
/// pair up the eigenvector bases.  Eigenvector signs for the two leading
/// columns come from inner products with the anchor velocity pair (latest
/// epoch, falling back to fallback_anchor when near-orthogonal); the third
/// column is completed by cross product, which forces det = +1.  Not ready
/// until the relative eigengap exceeds 1e-7.
AlignmentEstimate newtriad_solve(const DyadicAccumulator& acc,
                                 const VelocityVectors& anchor,
                                 const VelocityVectors* fallback_anchor = nullptr);

struct LatitudeEstimate {
  double l_plus = 0.0;  // unsigned latitude magnitude estimate, rad
  double raw_arg = std::numeric_limits<double>::quiet_NaN();
  bool clamped = false;
  bool valid = false;  // denominator above threshold
  LatitudeStage stage = LatitudeStage::kGrowing;
};

/// Latitude magnitude from the trace identity of the normalized-chain
/// tensors: cos^2(L) = (tr(T_obs) - T_ref(2,2)) /
/// (T_ref(0,0) + T_ref(1,1) - T_ref(2,2)).  Arguments above 1 clamp to
/// L+ = 0 (growing stage); below 0 they clamp to L+ = pi/2.  prev_l_plus
/// feeds the stage classification.
LatitudeEstimate salad_latitude(const DyadicAccumulator& acc,
                                std::optional<double> prev_l_plus = std::nullopt);

/// Latitude-free attitude solve: scale the reference tensor by
/// S+ = diag(cos L+, cos L+, sin L+), eigendecompose both sides, orient all
/// three eigenvector pairs independently from the anchor velocity pair
/// (reference side scaled by S+), and read the hemisphere off the
/// determinant of the eigenvector-basis product C': latitude = det(C') * L+
/// and c_b0 = diag(1, 1, det(C')) * C'.  Not ready when the eigengap is
/// degenerate or |det| strays from 1 by more than 1e-6.
AlignmentEstimate salad_solve(const DyadicAccumulator& acc,
                              const LatitudeEstimate& lat,
                              const VelocityVectors& anchor,
                              const VelocityVectors* fallback_anchor = nullptr);

/// Attitude at time t for the latitude-known methods:
/// C_b^n = C_n^n0(t)^T * c_b0_n0 * C_b^b0(t).
Mat3d realtime_attitude_latknown(const Mat3d& c_b0_n0, const Mat3d& c_n_n0,
                                 const Mat3d& c_b_b0);

/// Attitude at elapsed seconds since the anchor for the latitude-free
/// method: C_b^n = C_e'^n(lat) * C_i0^e'(elapsed) * c_b0_i0 * C_b^b0(t).
Mat3d realtime_attitude_salad(const Mat3d& c_b0_i0, double lat_rad,
                              double elapsed, const Mat3d& c_b_b0,
                              const EarthModeld& earth);

/// Attitude error as the rotation vector of c_est * c_true^T, resolved in
/// navigation axes (East, North, Up components).
Vec3d misalignment(const Mat3d& c_est, const Mat3d& c_true);

namespace detail {

struct OrientedBases {
  Mat3d u_ref;
  Mat3d u_obs;
  bool fallback_used = false;
  bool weak = false;  // sign test inconclusive even after fallback
};

/// Fix the sign indeterminacy of paired eigenvector columns: flip the
/// reference column whenever the products (anchor_ref . u_ref_j) and
/// (anchor_obs . u_obs_j) disagree in sign.  Columns 0..n_signed-1 are
/// oriented this way; when third_from_cross is set (n_signed == 2) the
/// last column of each side is rebuilt as the cross product of the first
/// two.  Inner products below 1e-12 of the anchor norm defer to the
/// fallback anchors.
OrientedBases orient_eigenvector_pairs(Mat3d u_ref, Mat3d u_obs,
                                       const Vec3d& anchor_ref,
                                       const Vec3d& anchor_obs,
                                       const Vec3d* fb_ref, const Vec3d* fb_obs,
                                       bool third_from_cross);

}  // namespace detail

}  // namespace swayalign
