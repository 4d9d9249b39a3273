#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "hsbte/kinematics.hpp"
#include "hsbte/quadrature.hpp"
#include "hsbte/sphere.hpp"

using namespace hsbte;
using sph::Direction;
using sph::Vec3;

TEST_CASE("exp map frozen example") {
  // zeta = (pi/2) e1 in ambient coordinates at omega = e3 maps to e1.
  const Direction om(0.0, 0.0, 1.0);
  const auto [o1, o2] = sph::frame(om);
  const Vec3 zeta_ambient(std::numbers::pi / 2.0, 0.0, 0.0);
  sph::TangentVector z{om, Eigen::Vector2d(zeta_ambient.dot(o1),
                                           zeta_ambient.dot(o2))};
  const Direction w = sph::exp_map(om, z);
  CHECK((w.vec() - Vec3(1, 0, 0)).norm() == doctest::Approx(0.0).epsilon(1e-12));
  // zero tangent vector is the identity
  sph::TangentVector zero{om, Eigen::Vector2d::Zero()};
  CHECK((sph::exp_map(om, zero).vec() - om.vec()).norm() == 0.0);
}

TEST_CASE("log map rejects antipodes and handles near-coincidence") {
  const Direction a(0.0, 0.0, 1.0);
  CHECK_THROWS_AS(sph::log_map(a, Direction(0.0, 0.0, -1.0)),
                  std::domain_error);
  const Direction b(1e-9, 0.0, 1.0);
  const auto z = sph::log_map(a, b);
  CHECK(z.norm() == doctest::Approx(1e-9).epsilon(1e-6));
}

TEST_CASE("sphere quadrature integrates low-degree harmonics exactly") {
  sph::SphereQuadrature q{6, 10};
  CHECK(q.integrate([](const Vec3&) { return 1.0; }) ==
        doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-14));
  CHECK(q.integrate([](const Vec3& w) { return w[2]; }) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(q.integrate([](const Vec3& w) { return w[2] * w[2]; }) ==
        doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-13));
  CHECK(q.integrate([](const Vec3& w) {
    return (w[0] * w[0] - w[1] * w[1]) * (w[0] * w[0] - w[1] * w[1]);
  }) == doctest::Approx(16.0 * std::numbers::pi / 15.0).epsilon(1e-13));
}

TEST_CASE("scatter circle derivative rejects the collapsed cone") {
  const Direction om(0.0, 1.0, 0.0);
  CHECK_THROWS_AS(sph::scatter_circle_dEp(2.0, 2.0, om, 0.3),
                  std::invalid_argument);
  CHECK_THROWS_AS(sph::scatter_circle(1.0, 2.0, om, 0.3), std::exception);
}

TEST_CASE("mean value property of harmonics over scattering circles") {
  // (1/2pi) circle integral of Y_l(gamma(s)) = P_l(mu) Y_l(omega); the
  // geometry side of the harmonic fast path, checked by raw quadrature.
  const Direction om = Direction(0.4, -0.2, 0.6);
  const double Ep = 3.5, E = 1.7;
  const double mu = kin::mu(Ep, E);
  auto avg = [&](auto&& Y) {
    return quad::circle_trapezoid(
               [&](double s) { return Y(sph::scatter_circle(Ep, E, om, s)); },
               64) /
           (2.0 * std::numbers::pi);
  };
  auto y1 = [](const Vec3& w) { return w[2]; };
  auto y2 = [](const Vec3& w) { return w[0] * w[1]; };  // degree-2 harmonic
  CHECK(avg(y1) == doctest::Approx(mu * y1(om.vec())).epsilon(1e-12));
  const double p2 = 0.5 * (3.0 * mu * mu - 1.0);
  CHECK(avg(y2) == doctest::Approx(p2 * y2(om.vec())).epsilon(1e-12));
}

TEST_CASE("taylor residual is exactly zero at coincident points") {
  sph::SphereField f{[](const Vec3& w) { return w[0] * w[2]; },
                     [](const Vec3& w) { return Vec3(w[2], 0.0, w[0]); },
                     {}};
  const Direction om(0.6, 0.0, 0.8);
  const auto t = sph::sphere_taylor1(f, om, om);
  CHECK(t.residual == 0.0);
}
