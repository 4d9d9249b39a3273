#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "hsbte/collision.hpp"
#include "hsbte/config.hpp"
#include "hsbte/kinematics.hpp"

using namespace hsbte;
using fld::TestField;
using sph::Vec3;

namespace {
coll::CollisionContext make_ctx() {
  cfg::RunConfig config;
  return config.collision_context();
}
const Vec3 kX(0.25, -0.15, 0.1);
const Vec3 kW = Vec3(-0.4, 0.3, 0.86).normalized();
}  // namespace

TEST_CASE("circle averages of energy-derivative views feed the order-2 rule") {
  auto ctx = make_ctx();
  const TestField f = fld::field_by_id("a1*Y10*cm2", 1.0, 4.0);
  const TestField df = f.dE_view();
  const double got = coll::circle_average(df, kX, kW, 3.0, 2.0, 3.0, ctx);
  const double want = 2.0 * std::numbers::pi * kin::mu(3.0, 2.0) *
                      f.dE(kX, kW, 3.0);
  CHECK(got == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("gradient circle averages reject the collapsed cone") {
  auto ctx = make_ctx();
  const TestField f = fld::field_by_id("a0*Y10*cm1", 1.0, 4.0);
  CHECK_THROWS_AS(coll::circle_average_grad_dE(f, kX, kW, 2.0, 2.0, 2.0, ctx),
                  std::invalid_argument);
}

TEST_CASE("limit formulas agree with the approach from above") {
  auto ctx = make_ctx();
  const TestField f = fld::field_by_id("a0*Y22*cm1", 1.0, 4.0);
  const double E = 2.0;
  const double limit = coll::circle_average_grad_limit_dE(f, kX, kW, E, E);
  double prev_err = 1e300;
  for (double d : {1e-2, 1e-3, 1e-4}) {
    const double got =
        coll::circle_average_grad_dE(f, kX, kW, E + d, E, E, ctx);
    const double err = std::abs(got - limit);
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err < 1e-4);
}

TEST_CASE("hadamard order-2 needs the derivative-capable context") {
  auto ctx = make_ctx();
  const TestField f = fld::field_by_id("a0*Y10*cm1", 1.0, 4.0);
  CHECK_THROWS_AS(
      coll::hadamard_collision(f, kX, kW, ctx.space.Em, 1, ctx),
      std::invalid_argument);
  CHECK_THROWS_AS(coll::hadamard_collision(f, kX, kW, 2.0, 3, ctx),
                  std::invalid_argument);
}

TEST_CASE("restricted operator: zero kernels give zero") {
  auto ctx = make_ctx();
  ctx.xs.k1 = [](const Vec3&, const Vec3&, const Vec3&, double, double) {
    return 0.0;
  };
  ctx.xs.k1_structure.reset();
  ctx.xs.k2 = [](const Vec3&, const Vec3&, const Vec3&, double) { return 0.0; };
  ctx.xs.k2_structure.reset();
  ctx.xs.sigma3 = [](const Vec3&, double, double) { return 0.0; };
  const TestField f = fld::field_by_id("a1*Y22*cm1", 1.0, 4.0);
  CHECK(coll::restricted_apply(f, kX, kW, 2.0, ctx) == 0.0);
  CHECK(coll::restricted_adjoint_apply(f, kX, kW, 2.0, ctx) == 0.0);
}

TEST_CASE("K1 fast path matches the full angular-energy quadrature") {
  auto ctx = make_ctx();
  ctx.space.sphere = {12, 24};  // resolve the generic path well
  const TestField f = fld::field_by_id("a0*Y10*cm1", 1.0, 4.0);
  TestField g = f;
  g.harmonic_degree.reset();
  const double fast = coll::restricted_apply(f, kX, kW, 2.2, ctx);
  const double slow = coll::restricted_apply(g, kX, kW, 2.2, ctx);
  CHECK(fast == doctest::Approx(slow).epsilon(1e-10));
}

TEST_CASE("pseudo form drops to the K_r branch when sigma2 vanishes") {
  auto ctx = make_ctx();
  auto zero3 = [](const Vec3&, double, double) { return 0.0; };
  ctx.xs.sigma2 = zero3;
  ctx.xs.dsigma2_dE = zero3;
  ctx.xs.dsigma2_dEp = zero3;
  const TestField f = fld::field_by_id("a1*Y10*cm1", 1.0, 4.0);
  const double E = 2.4;
  const double pseudo = coll::collision_pseudo_form(f, kX, kW, E, ctx);
  const double want = -coll::hadamard_collision(f, kX, kW, E, 1, ctx) +
                      coll::k0_integral(f, kX, kW, E, ctx);
  CHECK(pseudo == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("holder check is zero for angular constants") {
  auto ctx = make_ctx();
  const TestField one = fld::uniform_field(1.0);
  CHECK(coll::circle_average_holder_check(one, kX, kW, 2.0, ctx) == 0.0);
}
