#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "swayalign/types.hpp"

namespace swayalign {

/// Skew-symmetric cross-product matrix: skew(a) * b == a.cross(b).
///
///            |  0  -az   ay |
/// skew(a) =  |  az   0  -ax |
///            | -ay   ax   0 |
template <typename T>
Mat3<T> skew(const Vec3<T>& a) {
  Mat3<T> m;
  m << T(0), -a.z(), a.y(),
       a.z(), T(0), -a.x(),
      -a.y(), a.x(), T(0);
  return m;
}

/// Body-to-navigation direction cosine matrix from Euler angles.
///
/// C_b^n = Rz(yaw) * Rx(pitch) * Ry(roll), i.e. attitude is reached by
/// yawing about Up, then pitching about the carried Right axis, then
/// rolling about the carried Forth axis.  Written out:
///
///   | cy*cr - sy*sp*sr,  -sy*cp,  cy*sr + sy*sp*cr |
///   | sy*cr + cy*sp*sr,   cy*cp,  sy*sr - cy*sp*cr |
///   |           -cp*sr,      sp,            cp*cr  |
///
/// with (sp, cp) = sincos(pitch), (sr, cr) = sincos(roll),
/// (sy, cy) = sincos(yaw).
template <typename T>
Mat3<T> euler_to_dcm(const EulerAngles<T>& e) {
  using std::cos;
  using std::sin;
  const T sp = sin(e.pitch), cp = cos(e.pitch);
  const T sr = sin(e.roll), cr = cos(e.roll);
  const T sy = sin(e.yaw), cy = cos(e.yaw);
  Mat3<T> c;
  c << cy * cr - sy * sp * sr, -sy * cp, cy * sr + sy * sp * cr,
       sy * cr + cy * sp * sr,  cy * cp, sy * sr - cy * sp * cr,
       -cp * sr, sp, cp * cr;
  return c;
}

template <typename T>
struct EulerDecomposition {
  EulerAngles<T> angles;
  /// Set when |pitch| is within 1e-6 rad of pi/2; roll and yaw are then
  /// individually indeterminate (only their sum/difference is observable)
  /// and the reported values are one valid representative.
  bool gimbal_lock = false;
};

/// Inverse of euler_to_dcm.  Requires C orthonormal within 1e-9.
template <typename T>
EulerDecomposition<T> dcm_to_euler(const Mat3<T>& c) {
  if ((c.transpose() * c - Mat3<T>::Identity()).norm() > T(1e-9)) {
    throw std::invalid_argument("dcm_to_euler: matrix is not orthonormal");
  }
  using std::abs;
  using std::asin;
  using std::atan2;
  EulerDecomposition<T> out;
  const T s = std::clamp(c(2, 1), T(-1), T(1));
  out.angles.pitch = asin(s);
  out.angles.roll = atan2(-c(2, 0), c(2, 2));
  out.angles.yaw = atan2(-c(0, 1), c(1, 1));
  out.gimbal_lock = abs(out.angles.pitch) > std::numbers::pi_v<T> / T(2) - T(1e-6);
  return out;
}

template <typename T, int N>
struct SymEigResult {
  Eigen::Matrix<T, N, 1> values;   // descending
  Eigen::Matrix<T, N, N> vectors;  // unit eigenvectors as columns
};

/*
 * Symmetric eigendecomposition by cyclic Jacobi rotations.
 *
 * Each rotation annihilates one off-diagonal pair (p, q); a full sweep
 * visits all pairs in a fixed row-major order.  Off-diagonal mass decays
 * quadratically once small, so a handful of sweeps reaches machine
 * precision; iteration stops when the off-diagonal Frobenius norm drops
 * below 1e-15 times the input norm, with a hard cap of 15 sweeps.  Unlike
 * the closed-form cubic, the result degrades gracefully for near-degenerate
 * spectra, and the fixed visit order makes the output bit-reproducible for
 * identical input, which downstream eigenvector sign bookkeeping relies on.
 *
 * Eigenvalues come back sorted descending (ties keep their pre-sort order);
 * each eigenvector is normalized so its largest-magnitude component is
 * positive, which pins the otherwise arbitrary sign.
 */
template <typename T, int N>
SymEigResult<T, N> sym_eig(const Eigen::Matrix<T, N, N>& m) {
  using MatN = Eigen::Matrix<T, N, N>;
  const T scale = m.norm();
  if ((m - m.transpose()).norm() > T(1e-9) * scale) {
    throw std::invalid_argument("sym_eig: matrix is not symmetric");
  }
  MatN a = (m + m.transpose()) / T(2);
  MatN v = MatN::Identity();

  const T off_tol = T(1e-15) * scale;
  for (int sweep = 0; sweep < 15; ++sweep) {
    T off = T(0);
    for (int p = 0; p < N - 1; ++p)
      for (int q = p + 1; q < N; ++q) off += a(p, q) * a(p, q);
    using std::sqrt;
    if (sqrt(T(2) * off) <= off_tol) break;

    for (int p = 0; p < N - 1; ++p) {
      for (int q = p + 1; q < N; ++q) {
        const T apq = a(p, q);
        if (apq == T(0)) continue;
        // Stable computation of the rotation that zeroes a(p,q).
        const T theta = (a(q, q) - a(p, p)) / (T(2) * apq);
        T t;
        using std::abs;
        if (abs(theta) > T(1e154)) {
          t = T(1) / (T(2) * theta);
        } else {
          t = T(1) / (abs(theta) + sqrt(theta * theta + T(1)));
          if (theta < T(0)) t = -t;
        }
        const T c = T(1) / sqrt(t * t + T(1));
        const T s = t * c;

        for (int k = 0; k < N; ++k) {
          const T akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < N; ++k) {
          const T apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = T(0);
        for (int k = 0; k < N; ++k) {
          const T vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::array<int, N> order;
  for (int i = 0; i < N; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&a](int i, int j) { return a(i, i) > a(j, j); });

  SymEigResult<T, N> out;
  for (int i = 0; i < N; ++i) {
    out.values(i) = a(order[i], order[i]);
    out.vectors.col(i) = v.col(order[i]);
    int imax = 0;
    out.vectors.col(i).cwiseAbs().maxCoeff(&imax);
    if (out.vectors(imax, i) < T(0)) out.vectors.col(i) = -out.vectors.col(i);
  }
  return out;
}

template <typename T>
SymEigResult<T, 3> sym_eig3(const Mat3<T>& m) {
  return sym_eig<T, 3>(m);
}

template <typename T>
struct MaxEig4Result {
  T value{0};
  Vec4<T> vector;  // unit norm
};

/// Largest eigenpair of a symmetric 4x4 matrix.
template <typename T>
MaxEig4Result<T> max_eig4(const Mat4<T>& k) {
  const SymEigResult<T, 4> full = sym_eig<T, 4>(k);
  return {full.values(0), full.vectors.col(0)};
}

/// Nearest rotation (polar factor) to an invertible 3x3 matrix.
///
/// Computes C (C^T C)^(-1/2) through the eigendecomposition of C^T C, then
/// polishes with one Newton step.  The determinant keeps its sign, so a
/// proper rotation stays proper and a reflection stays a reflection.
/// Requires |det C| > 1e-6.
template <typename T>
Mat3<T> orthonormalize(const Mat3<T>& c) {
  using std::abs;
  using std::sqrt;
  if (abs(c.determinant()) <= T(1e-6)) {
    throw std::invalid_argument("orthonormalize: matrix is near-singular");
  }
  const SymEigResult<T, 3> e = sym_eig3<T>(Mat3<T>(c.transpose() * c));
  Vec3<T> inv_sqrt;
  for (int i = 0; i < 3; ++i) inv_sqrt(i) = T(1) / sqrt(e.values(i));
  Mat3<T> u = c * e.vectors * inv_sqrt.asDiagonal() * e.vectors.transpose();
  u = u * (T(3) * Mat3<T>::Identity() - u.transpose() * u) / T(2);
  return u;
}

/// Quaternion of the rotation vector v (angle |v| about v/|v|).
template <typename T>
UnitQuaternion<T> quat_from_rotvec(const Vec3<T>& v) {
  const T angle = v.norm();
  if (angle < T(1e-12)) {
    UnitQuaternion<T> q(T(1), v.x() / T(2), v.y() / T(2), v.z() / T(2));
    q.normalize();
    return q;
  }
  return UnitQuaternion<T>(Eigen::AngleAxis<T>(angle, v / angle));
}

/// Rotation matrix exp(skew(v)) of the rotation vector v.
template <typename T>
Mat3<T> dcm_from_rotvec(const Vec3<T>& v) {
  return quat_from_rotvec(v).toRotationMatrix();
}

/// Rotation vector (matrix log) of a rotation matrix.
template <typename T>
Vec3<T> rotvec_from_dcm(const Mat3<T>& c) {
  const Eigen::AngleAxis<T> aa(c);
  return aa.angle() * aa.axis();
}

}  // namespace swayalign
