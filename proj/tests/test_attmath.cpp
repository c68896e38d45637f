#include <doctest.h>

#include <numbers>

#include <cstring>

#include "oracles.hpp"
#include "swayalign/attmath.hpp"

using namespace swayalign;
namespace tt = swayalign::testing;

TEST_SUITE_BEGIN("attmath");

TEST_CASE("skew matches the cross product and is antisymmetric") {
  auto g = tt::rng(101);
  for (int i = 0; i < 200; ++i) {
    const Vec3d a = tt::random_vec3(g), b = tt::random_vec3(g);
    CHECK((skew(a) * b - a.cross(b)).norm() <= 1e-15 * (a.norm() * b.norm()));
    CHECK((skew(a) + skew(a).transpose()).norm() == 0.0);
  }
}

TEST_CASE("euler_to_dcm pinned values") {
  const Mat3d id = euler_to_dcm<double>({0, 0, 0});
  CHECK((id - Mat3d::Identity()).norm() < 1e-15);

  // A pure 180 deg yaw flips Right and Forth and keeps Up.
  const Mat3d flip = euler_to_dcm<double>({0, 0, std::numbers::pi});
  CHECK((flip - Vec3d(-1, -1, 1).asDiagonal().toDenseMatrix()).norm() < 1e-15);

  // Pure positive pitch tips the body Forth axis upward: C(2,1) = sin(pitch).
  const double th = 0.3;
  const Mat3d pitched = euler_to_dcm<double>({th, 0, 0});
  CHECK(pitched(2, 1) == doctest::Approx(std::sin(th)).epsilon(1e-15));
  CHECK(pitched(0, 0) == 1.0);

  // Positive yaw turns Forth toward West (counterclockwise from above).
  const Mat3d yawed = euler_to_dcm<double>({0, 0, 0.5});
  const Vec3d forth_in_nav = yawed * Vec3d(0, 1, 0);
  CHECK(forth_in_nav.x() == doctest::Approx(-std::sin(0.5)).epsilon(1e-15));
  CHECK(forth_in_nav.y() == doctest::Approx(std::cos(0.5)).epsilon(1e-15));
}

TEST_CASE("euler_to_dcm yields proper rotations") {
  auto g = tt::rng(102);
  for (int i = 0; i < 200; ++i) {
    EulerAnglesd e{tt::uniform(g, -1.5, 1.5), tt::uniform(g, -3.1, 3.1),
                   tt::uniform(g, -3.1, 3.1)};
    const Mat3d c = euler_to_dcm(e);
    CHECK((c.transpose() * c - Mat3d::Identity()).norm() < 1e-14);
    CHECK(c.determinant() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("euler round trip away from gimbal lock") {
  auto g = tt::rng(103);
  for (int i = 0; i < 500; ++i) {
    EulerAnglesd e{tt::uniform(g, -1.55, 1.55), tt::uniform(g, -3.14, 3.14),
                   tt::uniform(g, -3.14, 3.14)};
    const auto back = dcm_to_euler(euler_to_dcm(e));
    CHECK(!back.gimbal_lock);
    CHECK(std::abs(back.angles.pitch - e.pitch) < 1e-10);
    CHECK(std::abs(back.angles.roll - e.roll) < 1e-10);
    CHECK(std::abs(back.angles.yaw - e.yaw) < 1e-10);
  }
}

TEST_CASE("dcm_to_euler flags gimbal proximity") {
  const auto locked =
      dcm_to_euler(euler_to_dcm<double>({std::numbers::pi / 2 - 5e-7, 0.4, 1.0}));
  CHECK(locked.gimbal_lock);

  const auto near_locked =
      dcm_to_euler(euler_to_dcm<double>({std::numbers::pi / 2 - 1e-4, 0.4, 1.0}));
  CHECK(!near_locked.gimbal_lock);
  CHECK(std::abs(near_locked.angles.roll - 0.4) < 1e-9);
  CHECK(std::abs(near_locked.angles.yaw - 1.0) < 1e-9);
}

TEST_CASE("dcm_to_euler rejects non-orthonormal input") {
  Mat3d bad = Mat3d::Identity();
  bad(0, 1) = 1e-3;
  CHECK_THROWS_AS((void)dcm_to_euler(bad), std::invalid_argument);
}

TEST_CASE("sym_eig3 recovers a planted eigensystem") {
  auto g = tt::rng(104);
  for (int i = 0; i < 300; ++i) {
    const Mat3d q = tt::random_rotation(g);
    Vec3d lam(tt::uniform(g, 5, 10), tt::uniform(g, 1, 5), tt::uniform(g, -4, 1));
    const Mat3d m = q * lam.asDiagonal() * q.transpose();
    const auto e = sym_eig3(m);
    for (int k = 0; k < 3; ++k) {
      CHECK(std::abs(e.values(k) - lam(k)) < 1e-12 * m.norm());
      // Planted and recovered eigenvectors agree up to sign.
      CHECK(std::abs(std::abs(e.vectors.col(k).dot(q.col(k))) - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("sym_eig3 reconstruction, orthonormality, ordering, trace") {
  auto g = tt::rng(105);
  for (int i = 0; i < 300; ++i) {
    const Mat3d m = tt::random_symmetric3(g, tt::uniform(g, 0.1, 100));
    const auto e = sym_eig3(m);
    CHECK((e.vectors * e.values.asDiagonal() * e.vectors.transpose() - m).norm() <=
          1e-12 * m.norm());
    CHECK((e.vectors.transpose() * e.vectors - Mat3d::Identity()).norm() <= 1e-12);
    CHECK(e.values(0) >= e.values(1));
    CHECK(e.values(1) >= e.values(2));
    CHECK(std::abs(e.values.sum() - m.trace()) <= 1e-12 * m.norm());
  }
}

TEST_CASE("sym_eig3 handles rank-1 and repeated spectra") {
  const Vec3d v(1.0, -2.0, 2.0);
  const auto rank1 = sym_eig3<double>(v * v.transpose());
  CHECK(rank1.values(0) == doctest::Approx(v.squaredNorm()).epsilon(1e-14));
  CHECK(std::abs(rank1.values(1)) < 1e-14 * v.squaredNorm());
  CHECK(std::abs(rank1.values(2)) < 1e-14 * v.squaredNorm());
  CHECK(std::abs(std::abs(rank1.vectors.col(0).dot(v.normalized())) - 1.0) < 1e-14);

  auto g = tt::rng(106);
  const Mat3d q = tt::random_rotation(g);
  const Mat3d m = q * Vec3d(5, 5, 1).asDiagonal() * q.transpose();
  const auto e = sym_eig3(m);
  CHECK((e.vectors * e.values.asDiagonal() * e.vectors.transpose() - m).norm() <=
        1e-12 * m.norm());
  CHECK(std::abs(std::abs(e.vectors.col(2).dot(q.col(2))) - 1.0) < 1e-9);
}

TEST_CASE("sym_eig3 sign canonicalization and bit determinism") {
  auto g = tt::rng(107);
  for (int i = 0; i < 100; ++i) {
    const Mat3d m = tt::random_symmetric3(g);
    const auto e1 = sym_eig3(m);
    const auto e2 = sym_eig3(m);
    CHECK(std::memcmp(e1.vectors.data(), e2.vectors.data(), sizeof(double) * 9) == 0);
    CHECK(std::memcmp(e1.values.data(), e2.values.data(), sizeof(double) * 3) == 0);
    for (int k = 0; k < 3; ++k) {
      int imax = 0;
      e1.vectors.col(k).cwiseAbs().maxCoeff(&imax);
      CHECK(e1.vectors(imax, k) > 0.0);
    }
  }
}

TEST_CASE("sym_eig3 rejects asymmetric input") {
  Mat3d m = Mat3d::Identity();
  m(0, 1) = 0.5;
  CHECK_THROWS_AS((void)sym_eig3(m), std::invalid_argument);
}

TEST_CASE("similar matrices share eigenvalues") {
  auto g = tt::rng(108);
  for (int i = 0; i < 300; ++i) {
    const Mat3d m = tt::random_symmetric3(g, tt::uniform(g, 0.5, 20));
    const Mat3d r = tt::random_rotation(g);
    const Mat3d sim = r * m * r.transpose();
    const auto em = sym_eig3(m);
    const auto es = sym_eig3(sim);
    CHECK((em.values - es.values).cwiseAbs().maxCoeff() <= 1e-11 * m.norm());
  }
}

TEST_CASE("max_eig4 recovers a planted dominant pair") {
  auto g = tt::rng(109);
  for (int i = 0; i < 200; ++i) {
    const Mat4d q = tt::quat_left_matrix(g);
    const Vec4d lam(tt::uniform(g, 6, 9), tt::uniform(g, 2, 5),
                    tt::uniform(g, -1, 2), tt::uniform(g, -5, -2));
    const Mat4d k = q * lam.asDiagonal() * q.transpose();
    const auto top = max_eig4(k);
    CHECK(std::abs(top.value - lam(0)) < 1e-12 * k.norm());
    CHECK(std::abs(std::abs(top.vector.dot(q.col(0))) - 1.0) < 1e-10);
    CHECK((k * top.vector - top.value * top.vector).norm() <= 1e-10 * k.norm());
    CHECK(top.vector.norm() == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("orthonormalize returns the polar factor") {
  auto g = tt::rng(110);
  for (int i = 0; i < 200; ++i) {
    const Mat3d r = tt::random_rotation(g);
    Mat3d noise;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) noise(a, b) = tt::gauss(g) * 0.05;
    const Mat3d c = r + noise;
    if (std::abs(c.determinant()) <= 1e-6) continue;
    const Mat3d u = orthonormalize(c);
    CHECK((u.transpose() * u - Mat3d::Identity()).norm() <= 1e-14);
    CHECK(u.determinant() * c.determinant() > 0.0);
    // Polar-factor characterization: U^T C is symmetric positive definite.
    const Mat3d p = u.transpose() * c;
    CHECK((p - p.transpose()).norm() < 1e-12);
    CHECK(p(0, 0) > 0.0);
  }
}

TEST_CASE("orthonormalize keeps rotations fixed and reflections improper") {
  auto g = tt::rng(111);
  const Mat3d r = tt::random_rotation(g);
  CHECK((orthonormalize(r) - r).norm() < 1e-14);

  Mat3d refl = r;
  refl.col(2) = -refl.col(2);
  const Mat3d u = orthonormalize(refl);
  CHECK(u.determinant() == doctest::Approx(-1.0).epsilon(1e-12));

  CHECK_THROWS_AS((void)orthonormalize(Mat3d(Mat3d::Zero())), std::invalid_argument);
}

TEST_CASE("rotation vector exp/log round trip against Rodrigues") {
  auto g = tt::rng(112);
  for (int i = 0; i < 300; ++i) {
    const Vec3d axis = tt::random_vec3(g).normalized();
    const double angle = tt::uniform(g, 1e-9, std::numbers::pi - 1e-6);
    const Vec3d v = axis * angle;
    const Mat3d c = dcm_from_rotvec(v);
    CHECK((c - tt::rodrigues_reference(axis, angle)).norm() < 1e-13);
    CHECK((rotvec_from_dcm(c) - v).norm() < 1e-11 * std::max(1.0, angle));
    // Rotation trace identity.
    CHECK(c.trace() == doctest::Approx(1.0 + 2.0 * std::cos(angle)).epsilon(1e-12));
  }
}

TEST_CASE("quat_from_rotvec stays unit and handles tiny angles") {
  auto g = tt::rng(113);
  for (int i = 0; i < 100; ++i) {
    const Vec3d v = tt::random_vec3(g, tt::uniform(g, 1e-16, 2.0));
    CHECK(std::abs(quat_from_rotvec(v).norm() - 1.0) <= 1e-12);
  }
  CHECK((dcm_from_rotvec(Vec3d(Vec3d::Zero())) - Mat3d::Identity()).norm() == 0.0);
  const Vec3d tiny(1e-14, -2e-14, 5e-15);
  CHECK((dcm_from_rotvec(tiny) - (Mat3d::Identity() + skew(tiny))).norm() < 1e-25);
}

TEST_SUITE_END();
