#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "swayalign/types.hpp"

namespace swayalign {

/// Spherical, uniformly rotating earth.  Only the rotation rate and the
/// local gravity magnitude matter for gravitational-apparent-motion
/// alignment; position is reduced to the latitude passed per call, and no
/// operation depends on longitude.
template <typename T>
struct EarthModel {
  T omega_e{T(7.2921151467e-5)};  // rad/s
  T g{T(9.7803267714)};           // m/s^2
};

using EarthModeld = EarthModel<double>;

namespace detail {
template <typename T>
void require_latitude(T lat) {
  if (!(std::abs(lat) <= std::numbers::pi_v<T> / T(2))) {
    throw std::invalid_argument("latitude outside [-pi/2, pi/2]");
  }
}
}  // namespace detail

/// Earth rotation rate in East-North-Up axes at latitude lat (rad).
template <typename T>
Vec3<T> omega_ie_n(const EarthModel<T>& earth, T lat) {
  detail::require_latitude(lat);
  using std::cos;
  using std::sin;
  return Vec3<T>(T(0), earth.omega_e * cos(lat), earth.omega_e * sin(lat));
}

/// Gravity in East-North-Up axes (points along -Up).
template <typename T>
Vec3<T> gravity_n(const EarthModel<T>& earth) {
  return Vec3<T>(T(0), T(0), -earth.g);
}

/// Constant rotation from the local-meridian earth frame e' to
/// East-North-Up at latitude lat.  e' has z along the earth rotation axis,
/// x in the local meridian plane pointing away from the axis, and y
/// completing the right-handed set (eastward).
///
///             |    0    1      0   |
/// C_e'^n  =   | -sinL   0   cosL   |
///             |  cosL   0   sinL   |
template <typename T>
Mat3<T> c_eprime_n(T lat) {
  detail::require_latitude(lat);
  using std::cos;
  using std::sin;
  const T sl = sin(lat), cl = cos(lat);
  Mat3<T> c;
  c << T(0), T(1), T(0),
       -sl, T(0), cl,
        cl, T(0), sl;
  return c;
}

/// Rotation from the inertially frozen copy of e' (frozen at t = 0) to e'
/// at time t: a plane z-rotation by the earth angle omega_e * t.
template <typename T>
Mat3<T> c_i0_eprime(const EarthModel<T>& earth, T t) {
  using std::cos;
  using std::sin;
  const T a = earth.omega_e * t;
  const T c = cos(a), s = sin(a);
  Mat3<T> m;
  m << c, s, T(0),
      -s, c, T(0),
      T(0), T(0), T(1);
  return m;
}

/// Apparent gravity (the negative specific force a level, stationary
/// accelerometer feels) resolved in the frozen inertial frame i0.  As the
/// earth turns, the vector sweeps a cone of half-angle pi/2 - |lat| around
/// the earth axis:
///
///   g * [ cosL cos(w t), cosL sin(w t), sinL ]
template <typename T>
Vec3<T> reference_apparent_gravity_i0(const EarthModel<T>& earth, T lat, T t) {
  detail::require_latitude(lat);
  using std::cos;
  using std::sin;
  const T a = earth.omega_e * t;
  return earth.g *
         Vec3<T>(cos(lat) * cos(a), cos(lat) * sin(a), sin(lat));
}

}  // namespace swayalign
