#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "hsbte/fields.hpp"

using namespace hsbte;
using fld::TestField;
using sph::Vec3;

namespace {
const double kE0 = 1.0, kEm = 4.0;
const Vec3 kX(0.3, -0.2, 0.4);
const Vec3 kW = Vec3(0.2, 0.7, -0.4).normalized();
const double kE = 2.3;
}  // namespace

TEST_CASE("catalog has the full factor cross product with stable ids") {
  const auto all = fld::builtin_fields(kE0, kEm);
  CHECK(all.size() == 3 * 3 * 5);
  CHECK_NOTHROW(fld::field_by_id("a1*Y10*cm2", kE0, kEm));
  CHECK_THROWS_AS(fld::field_by_id("a9*Y10*cm2", kE0, kEm),
                  std::invalid_argument);
}

TEST_CASE("analytic derivatives agree with finite differences") {
  const double h = 1e-6;
  for (const char* id : {"a1*Y10*cm2", "a2*Y22*cx", "a0*Y00*cp2"}) {
    const TestField f = fld::field_by_id(id, kE0, kEm);
    CAPTURE(id);
    // dE
    const double fd_e =
        (f.value(kX, kW, kE + h) - f.value(kX, kW, kE - h)) / (2 * h);
    CHECK(f.dE(kX, kW, kE) == doctest::Approx(fd_e).epsilon(1e-8));
    // grad_x
    for (int i = 0; i < 3; ++i) {
      Vec3 xp = kX, xm = kX;
      xp[i] += h;
      xm[i] -= h;
      const double fd =
          (f.value(xp, kW, kE) - f.value(xm, kW, kE)) / (2 * h);
      CHECK(f.grad_x(kX, kW, kE)[i] == doctest::Approx(fd).epsilon(1e-8));
    }
    // tangency of grad_S
    CHECK(std::abs(f.grad_S(kX, kW, kE).dot(kW)) < 1e-14);
  }
}

TEST_CASE("laplace_S reproduces harmonic eigenvalues") {
  const TestField y1 = fld::field_by_id("a0*Y10*cm1", kE0, kEm);
  const TestField y2 = fld::field_by_id("a0*Y22*cm1", kE0, kEm);
  CHECK(y1.laplace_S(kX, kW, kE) ==
        doctest::Approx(-2.0 * y1.value(kX, kW, kE)).epsilon(1e-13));
  CHECK(y2.laplace_S(kX, kW, kE) ==
        doctest::Approx(-6.0 * y2.value(kX, kW, kE)).epsilon(1e-13));
}

TEST_CASE("dE_view is the exact energy derivative field") {
  const TestField f = fld::field_by_id("a1*Y22*cx", kE0, kEm);
  const TestField df = f.dE_view();
  CHECK(df.value(kX, kW, kE) == f.dE(kX, kW, kE));
  CHECK(df.dE(kX, kW, kE) == f.d2E(kX, kW, kE));
  CHECK(df.harmonic_degree == f.harmonic_degree);
  // omega structure differentiates only the energy factor
  CHECK(df.omega_grad(kX, kW, kE)[0] ==
        doctest::Approx(f.omega_grad(kX, kW, kE)[0] * f.dE(kX, kW, kE) /
                        f.value(kX, kW, kE))
            .epsilon(1e-12));
}

TEST_CASE("finite-difference jet fields carry the documented accuracy") {
  const TestField g = fld::field_from_callable(
      "adhoc", [](const Vec3& x, const Vec3& w, double E) {
        return std::sin(x[0] + 0.5 * E) * w[2] * w[2];
      });
  const double exact = std::cos(kX[0] + 0.5 * kE) * 0.5 * kW[2] * kW[2];
  CHECK(g.dE(kX, kW, kE) == doctest::Approx(exact).epsilon(1e-8));
  CHECK(std::abs(g.grad_S(kX, kW, kE).dot(kW)) < 1e-8);
}

TEST_CASE("linear combinations preserve structure when degrees match") {
  const TestField f = fld::field_by_id("a0*Y10*cm1", kE0, kEm);
  const TestField g = fld::field_by_id("a2*Y10*cx", kE0, kEm);
  const TestField h = fld::linear_combination(2.0, f, -1.0, g);
  CHECK(h.harmonic_degree.has_value());
  CHECK(*h.harmonic_degree == 1);
  CHECK(h.value(kX, kW, kE) ==
        doctest::Approx(2.0 * f.value(kX, kW, kE) - g.value(kX, kW, kE)));
  const TestField mixed =
      fld::linear_combination(1.0, f, 1.0, fld::field_by_id("a0*Y22*cm1", kE0, kEm));
  CHECK(!mixed.harmonic_degree.has_value());
}
