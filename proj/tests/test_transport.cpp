#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "hsbte/config.hpp"
#include "hsbte/quadrature.hpp"
#include "hsbte/transport.hpp"

using namespace hsbte;
using fld::TestField;
using sph::Vec3;

namespace {
tr::TransportContext make_tctx() {
  cfg::RunConfig config;
  return config.transport_context();
}
}  // namespace

TEST_CASE("A2 pairing against the one-dimensional double-p.f. reference") {
  // With x-independent sigma2 and Y00 x Y00 fields the pairing collapses to
  // a 1-D identity: int_I pf2[F(.,E)](E) dE equals the lowered route
  //   int_I' pf1_lower_pos[dF/dEp](Ep) + dF/dEp(Ep,Ep) - F(Em,Ep)/(Em-Ep) dEp
  // which is computable without any sphere machinery.
  tr::TransportContext tctx = make_tctx();
  auto& ctx = tctx.coll;
  const double E0 = ctx.space.E0, Em = ctx.space.Em;
  const double lambda = 2.0;
  auto s = [lambda](double Ep, double E) {
    return std::exp(-(Ep - E) / lambda);
  };
  auto ds_dEp = [lambda, s](double Ep, double E) {
    return -s(Ep, E) / lambda;
  };
  ctx.xs.sigma2 = [s](const Vec3&, double Ep, double E) { return s(Ep, E); };
  ctx.xs.dsigma2_dEp = [ds_dEp](const Vec3&, double Ep, double E) {
    return ds_dEp(Ep, E);
  };
  ctx.xs.dsigma2_dE = [lambda, s](const Vec3&, double Ep, double E) {
    return s(Ep, E) / lambda;
  };

  const TestField psi = fld::field_by_id("a0*Y00*cm1", E0, Em);
  const TestField v = fld::field_by_id("a0*Y00*cp1", E0, Em);
  auto cpsi = [Em](double E) { return Em - E; };
  auto cv = [E0](double E) { return E - E0; };
  auto dcv = [](double) { return 1.0; };

  const double pairing =
      ctx.space.integrate_phase([&](const Vec3& x, const Vec3& w, double Ep) {
        return psi.value(x, w, Ep) * tr::adjoint_A2_apply(v, x, w, Ep, tctx);
      });

  // 1-D reference: pairing = -(2 pi) * Vol(G) * 4 pi * R with
  //   R = int_I' cpsi(Ep) pf2_lower[s(Ep,.) cv(.)](Ep) dEp.
  const double spatial = (4.0 * std::numbers::pi / 3.0) *
                         std::pow(ctx.space.radius, 3.0);
  const double angular = 4.0 * std::numbers::pi * 2.0 * std::numbers::pi;
  const fp::QuadratureSpec q{16, 12, 2.0, false};
  auto inner = [&](double Ep) {
    // note d/dE of s(Ep, E) is +s/lambda (the argument is Ep - E)
    fp::PfIntegrand d{[&](double E) { return s(Ep, E) * cv(E); },
                      [&](double E) {
                        return s(Ep, E) / lambda * cv(E) + s(Ep, E) * dcv(E);
                      },
                      1.0};
    return fp::pf2_lower(d, Ep, E0, q);
  };
  const double R = quad::energy_interval(
      [&](double Ep) { return cpsi(Ep) * inner(Ep); }, E0, Em, 6, 8);
  const double reference = -spatial * angular * R;
  // two independent discretizations of a double-p.f. integral; the pairing
  // contract is 1e-4 relative
  CHECK(pairing == doctest::Approx(reference).epsilon(1e-4));
}

TEST_CASE("B0 with psi = v reduces to the half-sum of boundary norms") {
  tr::TransportContext tctx = make_tctx();
  auto& ctx = tctx.coll;
  ctx.xs.Sigma = [](const Vec3&, const Vec3&, double) { return 0.0; };
  ctx.xs.k1 = [](const Vec3&, const Vec3&, const Vec3&, double, double) {
    return 0.0;
  };
  ctx.xs.k1_structure.reset();
  ctx.xs.k2 = [](const Vec3&, const Vec3&, const Vec3&, double) { return 0.0; };
  ctx.xs.k2_structure.reset();
  ctx.xs.sigma3 = [](const Vec3&, double, double) { return 0.0; };
  const TestField psi = fld::field_by_id("a1*Y10*cm1", ctx.space.E0,
                                         ctx.space.Em);
  const double b0 = tr::bilinear_B0(psi, psi, tctx);
  const double gp =
      ps::trace_inner(psi.value, psi.value, ps::Side::kPlus, ctx.space);
  const double gm =
      ps::trace_inner(psi.value, psi.value, ps::Side::kMinus, ctx.space);
  CHECK(b0 == doctest::Approx(0.5 * (gp + gm)).epsilon(1e-10));
}

TEST_CASE("B2 rejects fields violating the vanishing conditions") {
  tr::TransportContext tctx = make_tctx();
  const double E0 = tctx.coll.space.E0, Em = tctx.coll.space.Em;
  const TestField trial = fld::field_by_id("a0*Y00*cm1", E0, Em);
  const TestField test = fld::field_by_id("a0*Y00*cp1", E0, Em);
  CHECK_THROWS_AS(tr::bilinear_B2(test, trial, tctx), std::invalid_argument);
  CHECK_NOTHROW(tr::bilinear_B2(trial, test, tctx));
}

TEST_CASE("bilinearity of B1 in both arguments") {
  tr::TransportContext tctx = make_tctx();
  const double E0 = tctx.coll.space.E0, Em = tctx.coll.space.Em;
  const TestField p1 = fld::field_by_id("a0*Y10*cm1", E0, Em);
  const TestField p2 = fld::field_by_id("a2*Y10*cx", E0, Em);
  const TestField v = fld::field_by_id("a0*Y10*cp1", E0, Em);
  const TestField combo = fld::linear_combination(0.8, p1, 1.5, p2);
  const double lhs = tr::bilinear_B1(combo, v, tctx);
  const double rhs = 0.8 * tr::bilinear_B1(p1, v, tctx) +
                     1.5 * tr::bilinear_B1(p2, v, tctx);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

namespace {
// Rotated view of a field: psi_Q(x, w, E) = psi(x, Q^T w, E). A pure
// harmonic stays a pure harmonic of the same degree, but we strip the tag
// so the circle integrals run through the explicit geometry.
TestField rotate_field(const TestField& f, const sph::Mat3& Q) {
  TestField g = f;
  g.id = f.id + "@Q";
  g.harmonic_degree.reset();
  g.denergy.reset();
  g.value = [f, Q](const Vec3& x, const Vec3& w, double E) {
    return f.value(x, Q.transpose() * w, E);
  };
  g.dE = [f, Q](const Vec3& x, const Vec3& w, double E) {
    return f.dE(x, Q.transpose() * w, E);
  };
  g.d2E = [f, Q](const Vec3& x, const Vec3& w, double E) {
    return f.d2E(x, Q.transpose() * w, E);
  };
  g.grad_x = [f, Q](const Vec3& x, const Vec3& w, double E) -> Vec3 {
    return f.grad_x(x, Q.transpose() * w, E);
  };
  g.omega_grad = [f, Q](const Vec3& x, const Vec3& w, double E) -> Vec3 {
    return Q * f.omega_grad(x, Q.transpose() * w, E);
  };
  g.omega_hess = [f, Q](const Vec3& x, const Vec3& w, double E) {
    return (Q * f.omega_hess(x, Q.transpose() * w, E) * Q.transpose()).eval();
  };
  return g;
}
}  // namespace

TEST_CASE("collision terms are rotation covariant through the geometry") {
  // Kernels depend on omega only through omega'.omega, so rotating the
  // field and the evaluation direction together must leave the value
  // unchanged. With the harmonic tag stripped this exercises the frames,
  // the scattering circle and its derivatives end to end.
  tr::TransportContext tctx = make_tctx();
  auto& ctx = tctx.coll;
  const double E0 = ctx.space.E0, Em = ctx.space.Em;
  const TestField psi = fld::field_by_id("a2*Y22*cm2", E0, Em);

  Eigen::AngleAxisd rot(0.7, Vec3(0.36, -0.48, 0.8).normalized());
  const sph::Mat3 Q = rot.toRotationMatrix();
  TestField base = psi;
  base.harmonic_degree.reset();
  base.denergy.reset();
  const TestField rotated = rotate_field(psi, Q);

  const Vec3 x(0.25, -0.05, 0.3);
  const Vec3 w = Vec3(0.2, 0.9, -0.37).normalized();
  const double E = 2.2;

  const double direct = coll::collision_hadamard_form(base, x, w, E, ctx);
  const double covariant =
      coll::collision_hadamard_form(rotated, x, Q * w, E, ctx);
  CHECK(covariant == doctest::Approx(direct).epsilon(1e-9));

  const double kr = coll::restricted_apply(base, x, w, E, ctx);
  const double kr_rot = coll::restricted_apply(rotated, x, Q * w, E, ctx);
  CHECK(kr_rot == doctest::Approx(kr).epsilon(1e-9));
}

TEST_CASE("adjoints agree between harmonic fast path and quadrature path") {
  tr::TransportContext tctx = make_tctx();
  const double E0 = tctx.coll.space.E0, Em = tctx.coll.space.Em;
  const TestField v = fld::field_by_id("a2*Y22*cp2", E0, Em);
  TestField vg = v;
  vg.harmonic_degree.reset();
  TestField dvg = *v.denergy;
  dvg.harmonic_degree.reset();
  vg.denergy = std::make_shared<TestField>(dvg);
  const Vec3 x(0.3, 0.1, -0.2);
  const Vec3 w = Vec3(0.7, -0.2, 0.4).normalized();
  for (double Ep : {1.8, 2.6, 3.5}) {
    CAPTURE(Ep);
    CHECK(tr::adjoint_A1_apply(v, x, w, Ep, tctx) ==
          doctest::Approx(tr::adjoint_A1_apply(vg, x, w, Ep, tctx))
              .epsilon(1e-9));
    CHECK(tr::adjoint_A2_apply(v, x, w, Ep, tctx) ==
          doctest::Approx(tr::adjoint_A2_apply(vg, x, w, Ep, tctx))
              .epsilon(1e-8));
  }
}

TEST_CASE("variational report flags the worst test field") {
  tr::TransportContext tctx = make_tctx();
  const double E0 = tctx.coll.space.E0, Em = tctx.coll.space.Em;
  const TestField psi = fld::field_by_id("a0*Y00*cm1", E0, Em);
  const auto battery = std::vector<TestField>{
      fld::field_by_id("a0*Y00*cp1", E0, Em),
      fld::field_by_id("a0*Y10*cp2", E0, Em)};
  const auto rep = tr::variational_residual(psi, battery, tctx);
  CHECK(rep.B_total == doctest::Approx(rep.B0 + rep.B1 + rep.B2));
  CHECK(!rep.worst_test.empty());
  CHECK(rep.scaled_residual < 1e-4);
}
