#pragma once

#include <numbers>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace swayalign {

template <typename T> using Vec3 = Eigen::Matrix<T, 3, 1>;
template <typename T> using Vec4 = Eigen::Matrix<T, 4, 1>;
template <typename T> using Mat3 = Eigen::Matrix<T, 3, 3>;
template <typename T> using Mat4 = Eigen::Matrix<T, 4, 4>;
template <typename T> using UnitQuaternion = Eigen::Quaternion<T>;

using Vec3d = Vec3<double>;
using Vec4d = Vec4<double>;
using Mat3d = Mat3<double>;
using Mat4d = Mat4<double>;
using UnitQuaterniond = UnitQuaternion<double>;

/// Attitude as pitch/roll/yaw about the body right/forth/up axes.
///
/// Navigation axes are East-North-Up, body axes Right-Forth-Up, and the
/// body-to-nav matrix factors as Rz(yaw) * Rx(pitch) * Ry(roll) with yaw
/// positive counterclockwise when viewed from above (a 180 deg yaw maps
/// body-right to west).  Pitch stays inside (-pi/2, pi/2); yaw and roll
/// are reported in (-pi, pi].
template <typename T>
struct EulerAngles {
  T pitch{0};
  T roll{0};
  T yaw{0};
};

using EulerAnglesd = EulerAngles<double>;

template <typename T>
inline constexpr T deg_to_rad(T deg) {
  return deg * std::numbers::pi_v<T> / T(180);
}

template <typename T>
inline constexpr T rad_to_deg(T rad) {
  return rad * T(180) / std::numbers::pi_v<T>;
}

}  // namespace swayalign
