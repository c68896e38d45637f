#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "swayalign/attmath.hpp"
#include "swayalign/earth.hpp"

using namespace swayalign;
namespace tt = swayalign::testing;

namespace {
// High-precision values computed independently (30-digit arithmetic) for
// the reference latitude 30.266 deg used throughout the experiment suite.
constexpr double kLatRef = 0.528241351408603789751724247991;
constexpr double kCosLatRef = 0.863694791291023506805864558957;
constexpr double kSinLatRef = 0.504015185779908168375415149191;
}  // namespace

TEST_SUITE_BEGIN("earth");

TEST_CASE("default constants") {
  const EarthModeld earth;
  CHECK(earth.omega_e == 7.2921151467e-5);
  CHECK(earth.g == 9.7803267714);
}

TEST_CASE("omega_ie_n components at pinned latitudes") {
  const EarthModeld earth;
  const Vec3d at_ref = omega_ie_n(earth, kLatRef);
  CHECK(at_ref.x() == 0.0);
  CHECK(at_ref.y() == doctest::Approx(earth.omega_e * kCosLatRef).epsilon(1e-15));
  CHECK(at_ref.z() == doctest::Approx(earth.omega_e * kSinLatRef).epsilon(1e-15));

  const Vec3d equator = omega_ie_n(earth, 0.0);
  CHECK(equator.y() == earth.omega_e);
  CHECK(equator.z() == 0.0);

  const Vec3d pole = omega_ie_n(earth, std::numbers::pi / 2);
  CHECK(std::abs(pole.y()) < 1e-20);
  CHECK(pole.z() == doctest::Approx(earth.omega_e).epsilon(1e-15));

  CHECK(omega_ie_n(earth, kLatRef).norm() ==
        doctest::Approx(earth.omega_e).epsilon(1e-15));

  CHECK_THROWS_AS((void)omega_ie_n(earth, 1.6), std::invalid_argument);
}

TEST_CASE("gravity_n points along -Up with magnitude g") {
  const EarthModeld earth;
  CHECK(gravity_n(earth) == Vec3d(0, 0, -earth.g));
}

TEST_CASE("c_eprime_n is a proper rotation mapping the earth axis to ENU") {
  auto g = tt::rng(201);
  for (int i = 0; i < 50; ++i) {
    const double lat = tt::uniform(g, -std::numbers::pi / 2, std::numbers::pi / 2);
    const Mat3d c = c_eprime_n(lat);
    CHECK((c.transpose() * c - Mat3d::Identity()).norm() <= 1e-14);
    CHECK(c.determinant() == doctest::Approx(1.0).epsilon(1e-14));
    // The earth axis (z of e') lands on (0, cosL, sinL) in ENU.
    CHECK((c * Vec3d(0, 0, 1) - Vec3d(0, std::cos(lat), std::sin(lat))).norm() <
          1e-15);
  }
}

TEST_CASE("c_i0_eprime satisfies the one-parameter group law") {
  const EarthModeld earth;
  auto g = tt::rng(202);
  for (int i = 0; i < 100; ++i) {
    const double t1 = tt::uniform(g, 0, 5000), t2 = tt::uniform(g, 0, 5000);
    const Mat3d lhs = c_i0_eprime(earth, t1 + t2);
    const Mat3d rhs = c_i0_eprime(earth, t1) * c_i0_eprime(earth, t2);
    CHECK((lhs - rhs).norm() <= 1e-13);
  }
  CHECK((c_i0_eprime(earth, 0.0) - Mat3d::Identity()).norm() == 0.0);
  // Matches the generic rotation-vector exponential about -z at the earth
  // rate (coordinates rotate opposite to the frame).
  const double t = 1234.5;
  const Mat3d viaexp = dcm_from_rotvec(Vec3d(0, 0, -earth.omega_e * t));
  CHECK((c_i0_eprime(earth, t) - viaexp).norm() <= 1e-13);
}

TEST_CASE("reference apparent gravity: magnitude, cone angle, pinned values") {
  const EarthModeld earth;
  auto g = tt::rng(203);
  const Vec3d axis(0, 0, 1);
  for (int i = 0; i < 100; ++i) {
    const double lat = tt::uniform(g, -std::numbers::pi / 2, std::numbers::pi / 2);
    const double t = tt::uniform(g, 0, 86400);
    const Vec3d f = reference_apparent_gravity_i0(earth, lat, t);
    CHECK(std::abs(f.norm() - earth.g) <= 1e-13 * earth.g);
    // Cone half-angle around the earth axis stays pi/2 - lat for all t.
    const double half_angle = std::acos(f.dot(axis) / f.norm());
    CHECK(std::abs(half_angle - (std::numbers::pi / 2 - lat)) < 1e-10);
  }

  const Vec3d at0 = reference_apparent_gravity_i0(earth, kLatRef, 0.0);
  CHECK(at0.x() == doctest::Approx(earth.g * kCosLatRef).epsilon(1e-15));
  CHECK(at0.y() == 0.0);
  CHECK(at0.z() == doctest::Approx(earth.g * kSinLatRef).epsilon(1e-15));

  // Quarter turn of the earth moves the x-component onto y.
  const double quarter = (std::numbers::pi / 2) / earth.omega_e;
  const Vec3d atq = reference_apparent_gravity_i0(earth, kLatRef, quarter);
  CHECK(atq.x() == doctest::Approx(0.0).scale(earth.g).epsilon(1e-15));
  CHECK(atq.y() == doctest::Approx(earth.g * kCosLatRef).epsilon(1e-14));
}

TEST_CASE("apparent gravity equals the rotated-frame composition") {
  // The i0-frame apparent gravity must equal C_i0^e'(t)^T * C_e'^n(L)^T
  // applied to -gravity_n, confirming the frame chain orientation.
  const EarthModeld earth;
  auto g = tt::rng(204);
  for (int i = 0; i < 100; ++i) {
    const double lat = tt::uniform(g, -1.5, 1.5);
    const double t = tt::uniform(g, 0, 86400);
    const Vec3d direct = reference_apparent_gravity_i0(earth, lat, t);
    const Vec3d chained = c_i0_eprime(earth, t).transpose() *
                          c_eprime_n(lat).transpose() * (-gravity_n(earth));
    CHECK((direct - chained).norm() <= 1e-13 * earth.g);
  }
}

TEST_SUITE_END();
