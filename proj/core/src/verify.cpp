#include "hsbte/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "hsbte/collision.hpp"
#include "hsbte/csda.hpp"
#include "hsbte/finite_part.hpp"
#include "hsbte/kinematics.hpp"
#include "hsbte/legendre.hpp"
#include "hsbte/pointset.hpp"
#include "hsbte/quadrature.hpp"
#include "hsbte/transport.hpp"

namespace hsbte::verify {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

using fld::TestField;
using pts::radical_inverse;
using sph::Direction;
using sph::Vec3;

Check mk(std::string name, double residual, double tol) {
  return {std::move(name), residual, tol, residual <= tol};
}

// ---------------------------------------------------------------------------
// finite-part
// ---------------------------------------------------------------------------

std::vector<Check> finite_part_checks(const cfg::RunConfig& config) {
  std::vector<Check> out;
  const fp::QuadratureSpec q{};     // module default: 16 panels, 12 nodes
  const fp::QuadratureSpec qs{16, 12, 2.0, true};

  fp::PfIntegrand one{[](double) { return 1.0; }, [](double) { return 0.0; },
                      1.0};

  {  // closed forms over 200 random intervals in (0, 10)
    double worst1 = 0.0, worst2 = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double u = radical_inverse(i + 1, 2), v = radical_inverse(i + 1, 3);
      const double x = 10.0 * u;
      const double b = x + 1e-3 + (10.0 - x - 1e-3) * v;
      const double len = b - x;
      const double r1 = std::abs(fp::pf1_upper(one, x, b, q) - std::log(len)) /
                        (1.0 + std::abs(std::log(len)));
      const double r2 = std::abs(fp::pf2_upper(one, x, b, q) + 1.0 / len) /
                        (1.0 + 1.0 / len);
      worst1 = std::max(worst1, r1);
      worst2 = std::max(worst2, r2);
    }
    out.push_back(mk("pf1(1) = ln(b-x), 200 intervals", worst1, 1e-10));
    out.push_back(mk("pf2(1) = -1/(b-x), 200 intervals", worst2, 1e-10));
  }

  {  // frozen examples (upper and lower endpoint rules)
    double worst = 0.0;
    worst = std::max(worst, std::abs(fp::pf1_upper(one, 0.0, 1.0, q)));
    worst = std::max(
        worst, std::abs(fp::pf1_upper(one, 0.0, 2.0, q) - std::log(2.0)));
    fp::PfIntegrand lin{[](double t) { return t - 0.4; },
                        [](double) { return 1.0; }, 1.0};
    worst = std::max(worst,
                     std::abs(fp::pf1_upper(lin, 0.4, 2.4, q) - 2.0));
    worst = std::max(worst, std::abs(fp::pf2_upper(one, 0.0, 2.0, q) + 0.5));
    fp::PfIntegrand ident{[](double t) { return t; },
                          [](double) { return 1.0; }, 1.0};
    worst = std::max(worst, std::abs(fp::pf2_upper(ident, 0.0, 1.0, q)));
    fp::PfIntegrand sq{[](double t) { return (t - 0.3) * (t - 0.3); },
                       [](double t) { return 2.0 * (t - 0.3); }, 1.0};
    worst = std::max(worst, std::abs(fp::pf2_upper(sq, 0.3, 1.5, q) - 1.2));
    worst = std::max(worst, std::abs(fp::pf1_lower(one, 1.0, 0.0, q)));
    worst = std::max(worst, std::abs(fp::pf2_lower(one, 2.0, 0.0, q) + 0.5));
    fp::PfIntegrand mirror{[](double t) { return 1.5 - t; },
                           [](double) { return -1.0; }, 1.0};
    worst = std::max(worst,
                     std::abs(fp::pf1_lower(mirror, 1.5, 0.5, q) + 1.0));
    out.push_back(mk("closed-form example battery", worst, 1e-10));
  }

  {  // linearity, at the operational panel depth (the order-2 subtraction
     // noise floor scales like eps / nearest-node-distance)
    const fp::QuadratureSpec ql{6, 8, 1.5, false};
    fp::PfIntegrand f{[](double t) { return std::sin(t); },
                      [](double t) { return std::cos(t); }, 1.0};
    fp::PfIntegrand g{[](double t) { return 1.0 + t * t; },
                      [](double t) { return 2.0 * t; }, 1.0};
    const double a = 1.3, b = -0.7;
    fp::PfIntegrand h{
        [&](double t) { return a * f.eval(t) + b * g.eval(t); },
        [&](double t) { return a * f.eval_deriv(t) + b * g.eval_deriv(t); },
        1.0};
    double worst = 0.0;
    for (int order : {1, 2}) {
      auto pf = [&](const fp::PfIntegrand& d) {
        return order == 1 ? fp::pf1_upper(d, 0.2, 1.9, ql)
                          : fp::pf2_upper(d, 0.2, 1.9, ql);
      };
      const double lhs = pf(h);
      const double rhs = a * pf(f) + b * pf(g);
      worst = std::max(worst, std::abs(lhs - rhs) /
                                  std::max({std::abs(lhs), std::abs(rhs), 1.0}));
    }
    out.push_back(mk("linearity of pf1/pf2", worst, 1e-12));
  }

  {  // consistency with the plain integral when f(x) = 0
    const double x = 0.5, b = 2.0;
    fp::PfIntegrand f{[x](double t) { return (t - x) * std::cos(t); },
                      [x](double t) { return std::cos(t) - (t - x) * std::sin(t); },
                      1.0};
    const double plain = quad::graded_gauss(
        [&](double t) { return f.eval(t) / (t - x); }, x, b, 16, 12, 2.0, x);
    const double resid = std::abs(fp::pf1_upper(f, x, b, q) - plain);
    out.push_back(mk("pf1 consistency, vanishing density", resid, 1e-8));
  }

  {  // derivative identity vs central differences, 20 densities
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double a = 0.5 + radical_inverse(i + 1, 2);
      const double bcoef = 0.5 + radical_inverse(i + 1, 3);
      const double c = radical_inverse(i + 1, 5) - 0.5;
      fp::Pf2Density f;
      f.eval = [=](double x, double t) {
        return std::sin(a * x + bcoef * t) + c * x * t + 0.3 * t * t;
      };
      f.d_dx = [=](double x, double t) {
        return a * std::cos(a * x + bcoef * t) + c * t;
      };
      f.d_dt = [=](double x, double t) {
        return bcoef * std::cos(a * x + bcoef * t) + c * x + 0.6 * t;
      };
      const double x = 0.3, b = 1.4;
      const double lhs = fp::pf1_derivative(f, x, b, q);
      const double h = 1e-4;
      auto H = [&](double xx) {
        fp::PfIntegrand d{[&](double t) { return f.eval(xx, t); }, {}, 1.0};
        return fp::pf1_upper(d, xx, b, q);
      };
      const double fd = (H(x + h) - H(x - h)) / (2.0 * h);
      worst = std::max(worst, std::abs(lhs - fd));
    }
    out.push_back(mk("derivative identity vs finite differences", worst, 1e-6));
  }

  {  // Fubini-type swap, 20 smooth densities
    const double E0 = config.space.E0, Em = config.space.Em;
    double worst = 0.0;
    worst = std::max(
        worst, fp::fubini_pf1_residual([](double, double) { return 1.0; }, E0,
                                       Em, qs));
    worst = std::max(worst, fp::fubini_pf1_residual(
                                [](double Ep, double E) { return Ep * E; }, E0,
                                Em, qs));
    for (int i = 0; i < 18; ++i) {
      const double a = radical_inverse(i + 1, 2);
      const double b = radical_inverse(i + 1, 3);
      auto f = [=](double Ep, double E) {
        return std::exp(-a * (Ep - E)) * (1.0 + b * E) +
               0.2 * std::sin(0.5 * Ep + a * E);
      };
      worst = std::max(worst, fp::fubini_pf1_residual(f, E0, Em, qs));
    }
    out.push_back(mk("Fubini-type swap residual, 20 densities", worst, 1e-8));
    out.push_back(
        mk("Fubini swap, degenerate interval",
           fp::fubini_pf1_residual([](double, double) { return 1.0; }, E0, E0,
                                   qs),
           0.0));
  }

  {  // pf2 -> pf1 lowering identity
    const double Em = 2.5;
    double worst = 0.0;
    auto gap = [&](const fp::EnergyDensity& f, double E) {
      const auto [lhs, rhs] = fp::pf2_to_pf1_identity(f, E, Em, q);
      return std::abs(lhs - rhs);
    };
    fp::EnergyDensity c1{[](double, double) { return 1.0; },
                         [](double, double) { return 0.0; }};
    fp::EnergyDensity lin{[](double Ep, double E) { return Ep - E; },
                          [](double, double) { return 1.0; }};
    fp::EnergyDensity ex{[](double Ep, double) { return std::exp(Ep); },
                         [](double Ep, double) { return std::exp(Ep); }};
    for (double E : {0.4, 1.0, 1.8}) {
      worst = std::max(worst, gap(c1, E));
      worst = std::max(worst, gap(lin, E));
      worst = std::max(worst, gap(ex, E));
    }
    // frozen analytic values
    const auto [l1, r1] = fp::pf2_to_pf1_identity(c1, 1.0, Em, q);
    worst = std::max(worst, std::abs(l1 + 1.0 / (Em - 1.0)));
    const auto [l2, r2] = fp::pf2_to_pf1_identity(lin, 1.0, Em, q);
    worst = std::max(worst, std::abs(l2 - std::log(Em - 1.0)));
    (void)r1;
    (void)r2;
    out.push_back(mk("pf2 -> pf1 lowering identity", worst, 1e-7));
  }

  return out;
}

// ---------------------------------------------------------------------------
// geometry (sphere + kinematics)
// ---------------------------------------------------------------------------

std::vector<Check> geometry_checks(const cfg::RunConfig& config) {
  std::vector<Check> out;
  (void)config;

  std::vector<Direction> dirs;
  dirs.emplace_back(0.0, 0.0, 1.0);
  dirs.emplace_back(0.0, 0.0, -1.0);
  dirs.emplace_back(1e-5, -2e-5, 1.0);
  dirs.emplace_back(-3e-5, 1e-5, -1.0);
  for (int i = 0; i < 996; ++i) {
    const double u = radical_inverse(i + 1, 2), v = radical_inverse(i + 1, 3);
    const double z = 2.0 * u - 1.0;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = kTwoPi * v;
    dirs.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }

  {  // frame orthonormality and R e3 = omega
    double worst = 0.0;
    for (const auto& d : dirs) {
      const auto [o1, o2] = sph::frame(d);
      worst = std::max({worst, std::abs(o1.norm() - 1.0),
                        std::abs(o2.norm() - 1.0), std::abs(o1.dot(o2)),
                        std::abs(o1.dot(d.vec())), std::abs(o2.dot(d.vec()))});
      const sph::Mat3 R = sph::rotation_to(d);
      worst = std::max(
          worst, (R.transpose() * R - sph::Mat3::Identity()).cwiseAbs().maxCoeff());
      worst = std::max(worst,
                       (R * Vec3(0, 0, 1) - d.vec()).cwiseAbs().maxCoeff());
    }
    out.push_back(
        mk("frame orthonormality and R e3 = omega, 1000 dirs", worst, 1e-12));
  }

  {  // frozen frame example at omega = e1; R(e3) is the identity
    const auto [o1, o2] = sph::frame(Direction(1.0, 0.0, 0.0));
    double worst = (o1 - Vec3(0, 1, 0)).cwiseAbs().maxCoeff();
    worst = std::max(worst, (o2 - Vec3(0, 0, -1)).cwiseAbs().maxCoeff());
    const sph::Mat3 Rp = sph::rotation_to(Direction(0.0, 0.0, 1.0));
    worst = std::max(worst,
                     (Rp - sph::Mat3::Identity()).cwiseAbs().maxCoeff());
    out.push_back(mk("frame values at e1 and pole fallback", worst, 1e-15));
  }

  {  // exp/log round trips
    double worst = 0.0;
    for (std::size_t i = 0; i < dirs.size(); i += 7) {
      const auto& d = dirs[i];
      const double n = 3.0 * radical_inverse(i + 1, 5) + 1e-3;
      const double ang = kTwoPi * radical_inverse(i + 1, 7);
      sph::TangentVector z{d, Eigen::Vector2d(n * std::cos(ang),
                                              n * std::sin(ang))};
      const Direction w = sph::exp_map(d, z);
      const sph::TangentVector back = sph::log_map(d, w);
      worst = std::max(worst, (back.coeffs - z.coeffs).cwiseAbs().maxCoeff());
    }
    out.push_back(mk("exp/log round trip, |zeta| <= 3", worst, 1e-10));
  }

  {  // Laplace-Beltrami eigenvalues, analytic and FD paths
    sph::SphereField y1{[](const Vec3& w) { return w[2]; },
                        [](const Vec3&) { return Vec3(0, 0, 1); },
                        [](const Vec3&) { return sph::Mat3::Zero().eval(); }};
    sph::Mat3 h22 = sph::Mat3::Zero();
    h22(0, 0) = 2.0;
    h22(1, 1) = -2.0;
    sph::SphereField y2{
        [](const Vec3& w) { return w[0] * w[0] - w[1] * w[1]; },
        [](const Vec3& w) { return Vec3(2 * w[0], -2 * w[1], 0); },
        [h22](const Vec3&) { return h22; }};
    sph::SphereField c1{[](const Vec3&) { return 1.0; },
                        [](const Vec3&) { return Vec3::Zero().eval(); },
                        [](const Vec3&) { return sph::Mat3::Zero().eval(); }};
    sph::SphereField y1_fd{y1.eval, {}, {}};
    sph::SphereField y2_fd{y2.eval, {}, {}};
    double worst = 0.0;
    for (std::size_t i = 0; i < dirs.size(); i += 37) {
      const auto& d = dirs[i];
      worst = std::max(worst, std::abs(sph::laplace_beltrami(c1, d)));
      worst = std::max(worst, std::abs(sph::laplace_beltrami(y1, d) +
                                       2.0 * d.vec()[2]));
      const double y2v = d.vec()[0] * d.vec()[0] - d.vec()[1] * d.vec()[1];
      worst = std::max(worst,
                       std::abs(sph::laplace_beltrami(y2, d) + 6.0 * y2v));
      worst = std::max(worst, std::abs(sph::laplace_beltrami(y1_fd, d) +
                                       2.0 * d.vec()[2]));
      worst = std::max(worst,
                       std::abs(sph::laplace_beltrami(y2_fd, d) + 6.0 * y2v));
    }
    out.push_back(
        mk("Laplace-Beltrami eigenvalues l = 0,1,2", worst, 1e-8));
  }

  {  // surface gradient: tangency and the frozen example
    sph::SphereField f{[](const Vec3& w) { return w[2]; },
                       [](const Vec3&) { return Vec3(0, 0, 1); },
                       {}};
    double worst =
        (sph::surface_gradient(f, Direction(1.0, 0.0, 0.0)) - Vec3(0, 0, 1))
            .cwiseAbs()
            .maxCoeff();
    for (std::size_t i = 0; i < dirs.size(); i += 53) {
      const Vec3 g = sph::surface_gradient(f, dirs[i]);
      worst = std::max(worst, std::abs(g.dot(dirs[i].vec())));
    }
    out.push_back(mk("surface gradient tangency", worst, 1e-12));
  }

  {  // scattering circle: gamma(E,E) = omega exactly, on-sphere, cone angle
    double collapse = 0.0, worst = 0.0;
    const double Ep = 4.0, E = 2.0;
    const double m = kin::mu(Ep, E);
    for (std::size_t i = 0; i < dirs.size(); i += 11) {
      const auto& d = dirs[i];
      collapse = std::max(
          collapse,
          (sph::scatter_circle(2.0, 2.0, d, 1.3) - d.vec()).cwiseAbs().maxCoeff());
      for (double s : {0.0, 1.0, 2.5, 4.0}) {
        const Vec3 g = sph::scatter_circle(Ep, E, d, s);
        worst = std::max(worst, std::abs(g.norm() - 1.0));
        worst = std::max(worst, std::abs(g.dot(d.vec()) - m));
      }
    }
    out.push_back(mk("gamma(E,E,omega) = omega exactly", collapse, 0.0));
    out.push_back(mk("circle on sphere with cone angle mu", worst, 1e-12));
    const Vec3 g0 = sph::scatter_circle(4.0, 2.0, Direction(0, 0, 1), 0.0);
    const Vec3 want(0.5, 0.0, std::sqrt(3.0) / 2.0);
    out.push_back(mk("frozen circle point at (Ep,E) = (4,2), s = 0",
                     (g0 - want).cwiseAbs().maxCoeff(), 1e-12));
  }

  {  // circle derivatives vs finite differences; speed; theta sum rule
    double worst_fd = 0.0, worst_speed = 0.0, worst_theta = 0.0;
    const double h = 1e-5;
    for (std::size_t i = 0; i < dirs.size(); i += 101) {
      const auto& d = dirs[i];
      for (double Ep : {2.4, 3.0, 3.7}) {
        const double E = 2.0;
        for (double s : {0.4, 2.2, 5.0}) {
          const Vec3 dEp = sph::scatter_circle_dEp(Ep, E, d, s);
          const Vec3 fd = (sph::scatter_circle(Ep + h, E, d, s) -
                           sph::scatter_circle(Ep - h, E, d, s)) /
                          (2.0 * h);
          worst_fd = std::max(worst_fd, (dEp - fd).cwiseAbs().maxCoeff());
          const Vec3 dE = sph::scatter_circle_dE(Ep, E, d, s);
          const Vec3 fdE = (sph::scatter_circle(Ep, E + h, d, s) -
                            sph::scatter_circle(Ep, E - h, d, s)) /
                           (2.0 * h);
          worst_fd = std::max(worst_fd, (dE - fdE).cwiseAbs().maxCoeff());
          const Vec3 g = sph::scatter_circle(Ep, E, d, s);
          worst_fd = std::max(worst_fd, std::abs(g.dot(dEp)));

          const Vec3 ds = (sph::scatter_circle(Ep, E, d, s + h) -
                           sph::scatter_circle(Ep, E, d, s - h)) /
                          (2.0 * h);
          worst_speed = std::max(
              worst_speed,
              std::abs(ds.norm() - kin::sqrt_one_minus_mu_sq(Ep, E)));

          const double m = kin::mu(Ep, E);
          const double r = kin::sqrt_one_minus_mu_sq(Ep, E);
          const double dsum = kin::mu_dEp(Ep, E) + kin::mu_dE(Ep, E);
          const Vec3 theta_ref =
              sph::rotation_to(d) * Vec3(-dsum * m / r * std::cos(s),
                                         -dsum * m / r * std::sin(s), dsum);
          worst_theta = std::max(
              worst_theta, (dEp + dE - theta_ref).cwiseAbs().maxCoeff());
        }
      }
    }
    out.push_back(
        mk("circle derivatives vs finite differences", worst_fd, 1e-6));
    out.push_back(mk("circle speed sqrt(1 - mu^2)", worst_speed, 1e-8));
    out.push_back(mk("theta sum rule", worst_theta, 1e-12));
  }

  {  // circle/sphere swap residual on 10 kernel pairs
    const sph::SphereQuadrature sq{24, 48};
    std::vector<std::function<double(const Vec3&)>> kernels = {
        [](const Vec3&) { return 1.0; },
        [](const Vec3& w) { return w[2]; },
        [](const Vec3& w) { return w[0] * w[0] - w[1] * w[1]; },
        [](const Vec3& w) { return w[0]; },
        [](const Vec3& w) { return w[1] * w[2]; },
        [](const Vec3& w) { return std::exp(0.5 * w[2]); },
    };
    double worst = 0.0;
    int count = 0;
    for (std::size_t a = 0; a < kernels.size() && count < 10; ++a)
      for (std::size_t b = a; b < kernels.size() && count < 10; ++b) {
        worst = std::max(worst, sph::circle_sphere_swap_residual(
                                    kernels[a], kernels[b], 4.0, 2.0, sq));
        ++count;
      }
    out.push_back(mk("circle/sphere swap residual, 10 pairs", worst, 1e-6));
  }

  {  // sphere Taylor: quadratic residual decay and the log-map bound
    sph::SphereField f{[](const Vec3& w) { return w[2]; },
                       [](const Vec3&) { return Vec3(0, 0, 1); },
                       {}};
    const Direction om(0.3, -0.4, 0.866025403784439);
    double worst_ratio = 0.0;
    for (double h : {0.1, 0.05, 0.025}) {
      sph::TangentVector z{om, Eigen::Vector2d(0.6 * h, 0.8 * h)};
      const Direction w = sph::exp_map(om, z);
      const auto t = sph::sphere_taylor1(f, om, w);
      worst_ratio = std::max(worst_ratio, std::abs(t.residual) / (h * h));
    }
    out.push_back(mk("Taylor residual O(h^2) (bounded C)", worst_ratio, 2.0));
    double worst_bound = 0.0;
    for (std::size_t i = 0; i < dirs.size(); i += 301) {
      for (std::size_t jj = 3; jj < dirs.size(); jj += 401) {
        const auto& a = dirs[i];
        const auto& b = dirs[jj];
        const double c = a.vec().dot(b.vec());
        if (c < -0.9) continue;
        const double lhs = sph::log_map(a, b).norm();
        const double rhs = (kPi / 2.0) * (b.vec() - a.vec()).norm();
        worst_bound = std::max(worst_bound, lhs - rhs);
      }
    }
    out.push_back(mk("log-map bound |zeta| <= (pi/2)|w' - w|", worst_bound,
                     1e-12));
  }

  {  // mu identities
    double worst_exact = std::abs(kin::mu(2.0, 2.0) - 1.0);
    worst_exact =
        std::max(worst_exact, std::abs(kin::mu(4.0, 2.0) - std::sqrt(3.0) / 2.0));
    worst_exact = std::max(worst_exact, std::abs(kin::mu_dE(2.0, 2.0) - 0.125));
    worst_exact =
        std::max(worst_exact, std::abs(kin::mu_dEp(2.0, 2.0) + 0.125));
    worst_exact = std::max(
        worst_exact, std::abs(kin::one_minus_mu_sq(4.0, 2.0) - 0.25));
    out.push_back(mk("mu frozen values", worst_exact, 1e-15));

    double worst_sum = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double E = 1.0 + 3.0 * i / 99.0;
      worst_sum = std::max(worst_sum, std::abs(kin::mu_sum_identity(E)));
    }
    out.push_back(mk("mu partial-sum cancellation on the diagonal", worst_sum,
                     1e-14));

    double worst_fd = 0.0;
    const double h = 1e-6;
    for (double Ep : {2.05, 2.5, 3.8})
      for (double E : {1.2, 2.0}) {
        if (Ep - E < 0.05) continue;
        const double fdp = (kin::mu(Ep + h, E) - kin::mu(Ep - h, E)) / (2 * h);
        const double fde = (kin::mu(Ep, E + h) - kin::mu(Ep, E - h)) / (2 * h);
        worst_fd = std::max(worst_fd, std::abs(kin::mu_dEp(Ep, E) - fdp));
        worst_fd = std::max(worst_fd, std::abs(kin::mu_dE(Ep, E) - fde));
      }
    out.push_back(mk("mu partials vs finite differences", worst_fd, 1e-8));

    double worst_1m = 0.0;
    for (double Ep : {2.1, 3.0, 4.0})
      for (double E : {1.0, 2.0}) {
        if (Ep - E < 0.1) continue;
        const double direct = 1.0 - kin::mu(Ep, E) * kin::mu(Ep, E);
        worst_1m = std::max(
            worst_1m, std::abs(kin::one_minus_mu_sq(Ep, E) - direct));
      }
    out.push_back(mk("one_minus_mu_sq vs direct form", worst_1m, 1e-12));

    // positivity off the diagonal and the sqrt(Ep - E) Lipschitz modulus
    // of the cone half-angle
    bool positive = true;
    double modulus = 0.0;
    for (double E : {1.0, 1.7, 2.9})
      for (double d : {1e-6, 1e-3, 0.1, 1.0}) {
        const double v = kin::one_minus_mu_sq(E + d, E);
        positive = positive && (v > 0.0);
        modulus = std::max(modulus,
                           kin::sqrt_one_minus_mu_sq(E + d, E) / std::sqrt(d));
      }
    const bool mod_ok = positive && std::isfinite(modulus) && modulus < 2.0;
    out.push_back(mk("cone half-angle sqrt-Lipschitz modulus bounded",
                     mod_ok ? 0.0 : 1.0, 0.0));
  }

  return out;
}

// ---------------------------------------------------------------------------
// collision
// ---------------------------------------------------------------------------

xs::CrossSectionSet unit_singular_xs() {
  xs::CrossSectionSet s;
  auto one = [](const Vec3&, double, double) { return 1.0; };
  auto zero = [](const Vec3&, double, double) { return 0.0; };
  s.sigma0 = zero;
  s.sigma1 = one;
  s.sigma2 = one;
  s.dsigma1_dEp = zero;
  s.dsigma2_dEp = zero;
  s.dsigma2_dE = zero;
  s.k1 = [](const Vec3&, const Vec3&, const Vec3&, double, double) {
    return 0.0;
  };
  s.k2 = [](const Vec3&, const Vec3&, const Vec3&, double) { return 0.0; };
  s.sigma3 = zero;
  s.Sigma = [](const Vec3&, const Vec3&, double) { return 0.0; };
  s.M1 = s.M2 = 1.0;
  return s;
}

TestField strip_harmonic(const TestField& f) {
  TestField g = f;
  g.harmonic_degree.reset();
  return g;
}

std::vector<Check> collision_checks(const cfg::RunConfig& config) {
  std::vector<Check> out;
  coll::CollisionContext ctx = config.collision_context();
  const double E0 = ctx.space.E0, Em = ctx.space.Em;
  const Vec3 x(0.2, -0.1, 0.3);
  const Vec3 omega = Vec3(0.3, 0.5, 0.9).normalized();

  {  // constant field circle average
    const TestField one = fld::uniform_field(1.0);
    double worst = std::abs(
        coll::circle_average(one, x, omega, 3.0, 2.0, 3.0, ctx) - kTwoPi);
    worst = std::max(
        worst, std::abs(coll::circle_average(strip_harmonic(one), x, omega,
                                             3.0, 2.0, 3.0, ctx) -
                        kTwoPi));
    out.push_back(mk("circle average of 1 = 2 pi", worst, 1e-12));
  }

  {  // collapse at Ep = E and the cosine identity
    const TestField y1 = fld::field_by_id("a0*Y10*cm1", E0, Em);
    const double E = 2.0;
    const double collapse =
        std::abs(coll::circle_average(y1, x, omega, E, E, E, ctx) -
                 kTwoPi * y1.value(x, omega, E));
    out.push_back(mk("circle average collapses at Ep = E", collapse, 1e-14));

    // psi(w') = w'.omega has degree-1 circle average 2 pi mu; realize it by
    // rotating Y10 and compare the generic quadrature path.
    const double Ep = 3.1;
    const double m = kin::mu(Ep, E);
    const TestField y1g = strip_harmonic(y1);
    const double got = coll::circle_average(y1g, x, omega, Ep, E, Ep, ctx);
    const double want = kTwoPi * m * y1.value(x, omega, Ep);
    out.push_back(
        mk("cosine circle average = 2 pi mu", std::abs(got - want), 1e-10));
  }

  {  // fast vs generic paths across the catalog
    double worst = 0.0;
    for (const char* id : {"a0*Y00*cm1", "a1*Y10*cm2", "a2*Y22*cx"}) {
      const TestField f = fld::field_by_id(id, E0, Em);
      const TestField g = strip_harmonic(f);
      for (double Ep : {2.2, 3.4}) {
        const double E = 1.9;
        worst = std::max(
            worst, std::abs(coll::circle_average(f, x, omega, Ep, E, Ep, ctx) -
                            coll::circle_average(g, x, omega, Ep, E, Ep, ctx)));
        worst = std::max(
            worst,
            std::abs(coll::circle_average_grad_dE(f, x, omega, Ep, E, Ep, ctx) -
                     coll::circle_average_grad_dE(g, x, omega, Ep, E, Ep, ctx)));
        worst = std::max(
            worst,
            std::abs(
                coll::circle_average_grad_dEp(f, x, omega, Ep, E, Ep, ctx) -
                coll::circle_average_grad_dEp(g, x, omega, Ep, E, Ep, ctx)));
      }
    }
    out.push_back(mk("harmonic fast path vs trapezoid path", worst, 1e-9));
  }

  {  // frozen Hadamard compositions with unit kernels
    coll::CollisionContext uctx = ctx;
    uctx.xs = unit_singular_xs();
    const TestField one = fld::uniform_field(1.0);
    double worst = 0.0;
    for (double E : {1.3, 2.0, 3.0}) {
      const double h1 = coll::hadamard_collision(one, x, omega, E, 1, uctx);
      const double want1 = kTwoPi * std::log(Em - E);
      worst = std::max(worst,
                       std::abs(h1 - want1) / (1.0 + std::abs(want1)));
      const double h2 = coll::hadamard_collision(one, x, omega, E, 2, uctx);
      const double want2 = -kTwoPi / (Em - E);
      worst = std::max(worst,
                       std::abs(h2 - want2) / (1.0 + std::abs(want2)));
    }
    out.push_back(mk("H_j of unit data: 2pi ln(Em-E), -2pi/(Em-E)", worst,
                     1e-10));
  }

  {  // form equivalence of the collision operator
    double worst = 0.0;
    const auto points =
        pts::halton_phase_points(10, config.seed, ctx.space.radius * 0.9,
                                 E0 + 0.15 * (Em - E0), Em - 0.15 * (Em - E0));
    for (const auto& id : config.trial_fields) {
      const TestField f = fld::field_by_id(id, E0, Em);
      for (const auto& p : points) {
        const double a =
            coll::collision_hadamard_form(f, p.x, p.omega, p.E, ctx);
        const double b = coll::collision_pseudo_form(f, p.x, p.omega, p.E, ctx);
        worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(a)));
      }
    }
    out.push_back(
        mk("hyper-singular vs pseudo-differential K forms", worst, 1e-5));
  }

  {  // Hoelder diagnostic stays finite
    const TestField y1 = fld::field_by_id("a0*Y10*cm1", E0, Em);
    const double v =
        coll::circle_average_holder_check(y1, x, omega, 1.8, ctx);
    out.push_back(mk("circle-average sqrt-Hoelder diagnostic finite",
                     std::isfinite(v) ? 0.0 : 1.0, 0.0));
  }

  {  // restricted operator pairing (parity-matched pair, nonzero value)
    const TestField psi = fld::field_by_id("a1*Y10*cm1", E0, Em);
    const TestField v = fld::field_by_id("a1*Y10*cp1", E0, Em);
    const double lhs =
        ctx.space.integrate_phase([&](const Vec3& xx, const Vec3& w, double E) {
          return coll::restricted_apply(psi, xx, w, E, ctx) * v.value(xx, w, E);
        });
    const double rhs =
        ctx.space.integrate_phase([&](const Vec3& xx, const Vec3& w, double E) {
          return psi.value(xx, w, E) *
                 coll::restricted_adjoint_apply(v, xx, w, E, ctx);
        });
    out.push_back(mk("K_r adjoint pairing",
                     std::abs(lhs - rhs) / (1.0 + std::abs(lhs)), 1e-5));
    out.push_back(mk("K_r adjoint pairing is non-degenerate",
                     std::abs(lhs) > 1e-3 ? 0.0 : 1.0, 0.0));
  }

  {  // elastic kernel orthogonality: isotropic sigma2 kills Y1
    coll::CollisionContext octx = ctx;
    octx.xs = unit_singular_xs();
    octx.xs.sigma1 = octx.xs.sigma2 = octx.xs.sigma0 =
        [](const Vec3&, double, double) { return 0.0; };
    xs::LegendreKernel iso;
    iso.g = {1.0};
    iso.space = [](const Vec3&) { return 1.0; };
    iso.energy = [](double, double) { return 1.0; };
    octx.xs.k2_structure = iso;
    octx.xs.k2 = [](const Vec3&, const Vec3&, const Vec3&, double) {
      return 1.0 / (4.0 * kPi);
    };
    const TestField y1 = fld::field_by_id("a0*Y10*cm1", E0, Em);
    double worst =
        std::abs(coll::restricted_apply(y1, x, omega, 2.0, octx));
    worst = std::max(worst, std::abs(coll::restricted_apply(
                                strip_harmonic(y1), x, omega, 2.0, octx)));
    out.push_back(mk("isotropic elastic kernel annihilates Y1", worst, 1e-12));
  }

  {  // Schur bounds of the built-in family
    const auto est = xs::estimate_schur(ctx.xs, ctx.space.radius, E0, Em);
    const double over =
        std::max({0.0, est.row_total() - ctx.xs.M1, est.col_total() - ctx.xs.M2});
    out.push_back(mk("Schur row/column integrals within declared bounds", over,
                     0.0));
  }

  {  // linearity in psi
    const TestField f = fld::field_by_id("a0*Y10*cm1", E0, Em);
    const TestField g = fld::field_by_id("a2*Y10*cx", E0, Em);
    const TestField combo = fld::linear_combination(1.7, f, -0.6, g);
    double worst = 0.0;
    const double E = 2.1;
    {
      const double lhs = coll::hadamard_collision(combo, x, omega, E, 2, ctx);
      const double rhs =
          1.7 * coll::hadamard_collision(f, x, omega, E, 2, ctx) -
          0.6 * coll::hadamard_collision(g, x, omega, E, 2, ctx);
      worst = std::max(worst,
                       std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }
    {
      const double lhs = coll::restricted_apply(combo, x, omega, E, ctx);
      const double rhs = 1.7 * coll::restricted_apply(f, x, omega, E, ctx) -
                         0.6 * coll::restricted_apply(g, x, omega, E, ctx);
      worst = std::max(worst,
                       std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }
    out.push_back(mk("operator linearity in psi", worst, 1e-12));
  }

  return out;
}

// ---------------------------------------------------------------------------
// transport
// ---------------------------------------------------------------------------

TestField compact_test_field(double E0, double Em) {
  // a2-spatial x Y10 x ((E-E0)(Em-E))^2: vanishes to second order at both
  // energy endpoints, so adjoint partial integrations carry no boundary
  // terms.
  TestField f;
  auto q = [E0, Em](double E) { return (E - E0) * (Em - E); };
  auto dq = [E0, Em](double E) { return E0 + Em - 2.0 * E; };
  f.id = "compact";
  f.vanishing = TestField::Vanishing::kAtE0;
  const auto shape = [q](double E) { return q(E) * q(E); };
  const auto dshape = [q, dq](double E) { return 2.0 * q(E) * dq(E); };
  const auto d2shape = [q, dq](double E) {
    return 2.0 * (dq(E) * dq(E) - 2.0 * q(E));
  };
  auto spatial = [](const Vec3& x) { return 1.0 - x.squaredNorm(); };
  auto dspatial = [](const Vec3& x) { return Vec3(-2.0 * x); };
  f.value = [=](const Vec3& x, const Vec3& w, double E) {
    return spatial(x) * w[2] * shape(E);
  };
  f.grad_x = [=](const Vec3& x, const Vec3& w, double E) -> Vec3 {
    return dspatial(x) * (w[2] * shape(E));
  };
  f.dE = [=](const Vec3& x, const Vec3& w, double E) {
    return spatial(x) * w[2] * dshape(E);
  };
  f.d2E = [=](const Vec3& x, const Vec3& w, double E) {
    return spatial(x) * w[2] * d2shape(E);
  };
  f.omega_grad = [=](const Vec3& x, const Vec3&, double E) -> Vec3 {
    return Vec3(0, 0, 1) * (spatial(x) * shape(E));
  };
  f.omega_hess = [=](const Vec3&, const Vec3&, double) {
    return fld::Mat3::Zero().eval();
  };
  f.harmonic_degree = 1;
  TestField df = f;
  df.id = "compact'";
  df.value = f.dE;
  df.dE = f.d2E;
  df.omega_grad = [=](const Vec3& x, const Vec3&, double E) -> Vec3 {
    return Vec3(0, 0, 1) * (spatial(x) * dshape(E));
  };
  df.omega_hess = f.omega_hess;
  f.denergy = std::make_shared<TestField>(df);
  return f;
}

std::vector<Check> transport_checks(const cfg::RunConfig& config) {
  std::vector<Check> out;
  tr::TransportContext tctx = config.transport_context();
  const coll::CollisionContext& ctx = tctx.coll;
  const double E0 = ctx.space.E0, Em = ctx.space.Em;

  {  // triple-form equivalence at 50 phase points on the trial battery
    const auto points = pts::halton_phase_points(
        config.phase_points, config.seed, ctx.space.radius * 0.9,
        E0 + 0.12 * (Em - E0), Em - 0.12 * (Em - E0));
    double worst = 0.0;
    for (const auto& id : config.trial_fields) {
      const TestField f = fld::field_by_id(id, E0, Em);
      for (const auto& p : points) {
        const double a =
            tr::transport_apply(f, p.x, p.omega, p.E, tctx, tr::Form::kStrong);
        const double b =
            tr::transport_apply(f, p.x, p.omega, p.E, tctx, tr::Form::kPseudo);
        const double c =
            tr::transport_apply(f, p.x, p.omega, p.E, tctx, tr::Form::kRefined);
        const double scale = 1.0 + std::abs(a);
        worst = std::max({worst, std::abs(a - b) / scale,
                          std::abs(a - c) / scale, std::abs(b - c) / scale});
      }
    }
    out.push_back(mk("triple-form equivalence of T", worst, 1e-5));
  }

  {  // advection-only reduction
    tr::TransportContext actx = tctx;
    actx.coll.xs = unit_singular_xs();
    auto zero3 = [](const Vec3&, double, double) { return 0.0; };
    actx.coll.xs.sigma1 = zero3;
    actx.coll.xs.sigma2 = zero3;
    actx.coll.xs.Sigma = [](const Vec3&, const Vec3&, double) { return 1.0; };
    const TestField f = fld::field_by_id("a1*Y10*cm1", E0, Em);
    double worst = 0.0;
    for (const auto& p :
         pts::halton_phase_points(8, 3, 0.8, E0 + 0.4, Em - 0.4)) {
      const double want =
          p.omega.dot(f.grad_x(p.x, p.omega, p.E)) + f.value(p.x, p.omega, p.E);
      for (auto form :
           {tr::Form::kStrong, tr::Form::kPseudo, tr::Form::kRefined}) {
        worst = std::max(
            worst, std::abs(tr::transport_apply(f, p.x, p.omega, p.E, actx,
                                                form) -
                            want));
      }
    }
    out.push_back(mk("advection-only reduction T = w.grad + psi", worst,
                     1e-12));
  }

  {  // adjoint pairings A1, A2 (parity-matched pairs)
    const TestField psi = fld::field_by_id("a1*Y10*cm1", E0, Em);
    const TestField psi2 = fld::field_by_id("a2*Y22*cm2", E0, Em);
    const TestField v = fld::field_by_id("a1*Y10*cp1", E0, Em);
    const TestField v2 = fld::field_by_id("a2*Y22*cp2", E0, Em);
    double worst1 = 0.0, worst2 = 0.0;
    const std::vector<std::pair<const TestField*, const TestField*>> prs = {
        {&psi, &v}, {&psi2, &v2}};
    for (const auto& pr : prs) {
      const TestField& P = *pr.first;
      const TestField& V = *pr.second;
      const double a1_lhs = ctx.space.integrate_phase(
          [&](const Vec3& x, const Vec3& w, double E) {
            return coll::hadamard_collision(P, x, w, E, 1, ctx) *
                   V.value(x, w, E);
          });
      const double a1_rhs = ctx.space.integrate_phase(
          [&](const Vec3& x, const Vec3& w, double Ep) {
            return P.value(x, w, Ep) * tr::adjoint_A1_apply(V, x, w, Ep, tctx);
          });
      worst1 = std::max(worst1,
                        std::abs(a1_lhs - a1_rhs) / (1.0 + std::abs(a1_lhs)));
      const double a2_lhs = ctx.space.integrate_phase(
          [&](const Vec3& x, const Vec3& w, double E) {
            return -coll::hadamard_collision(P, x, w, E, 2, ctx) *
                   V.value(x, w, E);
          });
      const double a2_rhs = ctx.space.integrate_phase(
          [&](const Vec3& x, const Vec3& w, double Ep) {
            return P.value(x, w, Ep) * tr::adjoint_A2_apply(V, x, w, Ep, tctx);
          });
      worst2 = std::max(worst2,
                        std::abs(a2_lhs - a2_rhs) / (1.0 + std::abs(a2_lhs)));
    }
    out.push_back(mk("adjoint pairing A1", worst1, 1e-5));
    out.push_back(mk("adjoint pairing A2", worst2, 1e-4));
  }

  {  // zero input maps to zero
    const TestField z = fld::uniform_field(0.0);
    const Vec3 x(0.1, 0.2, -0.3);
    const Vec3 w = Vec3(1, 1, 1).normalized();
    double worst =
        std::abs(tr::adjoint_A1_apply(z, x, w, 2.0, tctx)) +
        std::abs(tr::adjoint_A2_apply(z, x, w, 2.0, tctx)) +
        std::abs(tr::transport_apply(z, x, w, 2.0, tctx, tr::Form::kStrong));
    out.push_back(mk("zero field maps to zero", worst, 0.0));
  }

  return out;
}

// ---------------------------------------------------------------------------
// variational (phase-space identities + bilinear forms)
// ---------------------------------------------------------------------------

std::vector<Check> variational_checks(const cfg::RunConfig& config) {
  std::vector<Check> out;
  tr::TransportContext tctx = config.transport_context();
  const coll::CollisionContext& ctx = tctx.coll;
  const double E0 = ctx.space.E0, Em = ctx.space.Em;

  {  // analytic L2 inner product on the unit ball with |I| = 1
    ps::PhaseSpace unit = ctx.space;
    unit.radius = 1.0;
    unit.E0 = 1.0;
    unit.Em = 2.0;
    const TestField one = fld::uniform_field(1.0);
    const double got = ps::l2_inner(one, one, unit);
    const double want = (4.0 * kPi / 3.0) * (4.0 * kPi);
    out.push_back(mk("l2 inner of 1 on unit ball x S x [1,2]",
                     std::abs(got - want) / want, 1e-10));
    const TestField odd = fld::field_by_id("a1*Y00*cm1", E0, Em);
    const TestField even = fld::field_by_id("a0*Y00*cm1", E0, Em);
    out.push_back(mk("odd x even spatial symmetry",
                     std::abs(ps::l2_inner(odd, even, ctx.space)), 1e-10));
  }

  {  // quadrature exactness: separable polynomial-harmonic product with a
     // fully analytic value: int x1^2 dx * int w3^2 dw * int (Em-E)(E-E0) dE
    const TestField p = fld::field_by_id("a1*Y10*cm1", E0, Em);
    const TestField q = fld::field_by_id("a1*Y10*cp1", E0, Em);
    const double r = ctx.space.radius;
    const double len = Em - E0;
    const double want = (4.0 * kPi / 15.0) * std::pow(r, 5) *
                        (4.0 * kPi / 3.0) * (len * len * len / 6.0);
    const double got = ps::l2_inner(p, q, ctx.space);
    out.push_back(mk("l2 quadrature exactness on the catalog degrees",
                     std::abs(got - want) / want, 1e-12));
  }

  {  // trace pairing of 1: total 8 pi^2 per unit energy length, split evenly
    ps::PhaseSpace unit = ctx.space;
    unit.radius = 1.0;
    unit.E0 = 1.0;
    unit.Em = 2.0;
    auto onef = [](const Vec3&, const Vec3&, double) { return 1.0; };
    const double plus = ps::trace_inner(onef, onef, ps::Side::kPlus, unit);
    const double minus = ps::trace_inner(onef, onef, ps::Side::kMinus, unit);
    const double want = 4.0 * kPi * kPi;
    double worst = std::abs(plus - want) / want;
    worst = std::max(worst, std::abs(minus - want) / want);
    out.push_back(mk("trace of 1: 4 pi^2 per side", worst, 1e-10));

    // a function supported on the inflow hemisphere pairs to zero on the
    // outflow side
    auto inflow_only = [&](const Vec3& y, const Vec3& w, double) {
      return w.dot(y) < 0.0 ? 1.0 : 0.0;
    };
    const double cross =
        ps::trace_inner(inflow_only, onef, ps::Side::kPlus, unit);
    out.push_back(mk("inflow-supported trace vanishes on Gamma_+",
                     std::abs(cross), 0.0));
  }

  {  // Green identity
    const TestField one = fld::uniform_field(1.0);
    const TestField x1 = fld::field_by_id("a1*Y00*cm1", E0, Em);
    const TestField smooth = fld::field_by_id("a2*Y10*cm1", E0, Em);
    const TestField smooth2 = fld::field_by_id("a1*Y22*cp1", E0, Em);
    out.push_back(mk("Green residual, constants",
                     ps::green_residual(one, one, ctx.space), 1e-10));
    out.push_back(mk("Green residual, x1 pair",
                     ps::green_residual(x1, one, ctx.space), 1e-8));
    out.push_back(mk("Green residual, smooth pair",
                     ps::green_residual(smooth, smooth2, ctx.space), 1e-6));
  }

  {  // escape time lands on the boundary sphere
    double worst = 0.0;
    for (const auto& p : pts::halton_phase_points(64, 11, ctx.space.radius * 0.98,
                                                  E0, Em)) {
      const double t = ctx.space.escape_time(p.x, p.omega);
      worst = std::max(
          worst, std::abs((p.x - t * p.omega).norm() - ctx.space.radius));
    }
    out.push_back(mk("escape time reaches the boundary", worst, 1e-12));
  }

  {  // catalog vanishing and the log-compatibility limit
    double worst = 0.0;
    const Vec3 x(0.2, 0.2, 0.1);
    const Vec3 w = Vec3(0.1, -0.9, 0.5).normalized();
    for (const auto& f : fld::builtin_fields(E0, Em)) {
      if (f.vanishing == TestField::Vanishing::kAtEm)
        worst = std::max(worst, std::abs(f.value(x, w, Em)));
      if (f.vanishing == TestField::Vanishing::kAtE0)
        worst = std::max(worst, std::abs(f.value(x, w, E0)));
    }
    out.push_back(mk("catalog endpoint vanishing", worst, 1e-14));

    const TestField trial = fld::field_by_id("a0*Y00*cm1", E0, Em);
    double prev = std::numeric_limits<double>::infinity();
    bool monotone = true;
    double last = 0.0;
    for (double d : {1e-2, 1e-4, 1e-6}) {
      last = std::abs(std::log(d) * trial.value(x, w, Em - d));
      monotone = monotone && (last < prev);
      prev = last;
    }
    out.push_back(mk("ln(Em-E) psi -> 0 for trial fields (monotone)",
                     monotone ? last : 1.0, 1e-4));
  }

  {  // lower p.f. of the collision density tends to zero toward E0
    const TestField v = fld::field_by_id("a0*Y10*cp1", E0, Em);
    const Vec3 x(0.1, 0.0, 0.2);
    const Vec3 w = Vec3(0.3, 0.4, -0.5).normalized();
    bool monotone = true;
    double first = 0.0, last = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    int step = 0;
    for (double d : {0.1, 0.01, 0.001}) {
      const double Ep = E0 + d;
      fp::PfIntegrand g;
      g.eval = [&](double E) {
        return ctx.xs.sigma2(x, Ep, E) *
               coll::circle_average(v, x, w, Ep, E, E, ctx);
      };
      last = std::abs(fp::pf1_lower_pos(g, Ep, E0, ctx.pf));
      if (step++ == 0) first = last;
      monotone = monotone && (last < prev);
      prev = last;
    }
    // The limit decays like (Ep - E0) ln(Ep - E0); assert the decrease.
    out.push_back(
        mk("lower p.f. collision density -> 0 toward E0 (monotone)",
           monotone ? last / first : 1.0, 5e-2));
  }

  {  // theta-block coefficient vanishes identically
    double worst = 0.0;
    for (double E : {E0 + 0.2, 2.0, Em - 0.3})
      worst = std::max(worst, std::abs(kin::mu_sum_identity(E)));
    out.push_back(mk("theta-coefficient block vanishes", worst, 1e-14));
  }

  {  // Laplace-Beltrami limit of the gradient circle integral
    const TestField f = fld::field_by_id("a0*Y22*cm1", E0, Em);
    const Vec3 x(0.0, 0.0, 0.0);
    const Vec3 w = Vec3(0.2, -0.3, 0.93).normalized();
    const double E = 2.0;
    const double limit = coll::circle_average_grad_limit_dEp(f, x, w, E, E);
    double err_prev = 0.0, err_last = 0.0;
    int step = 0;
    for (double d : {1e-2, 1e-3}) {
      const double got =
          coll::circle_average_grad_dEp(f, x, w, E + d, E, E, ctx);
      const double err = std::abs(got - limit);
      if (step == 0) err_prev = err; else err_last = err;
      ++step;
    }
    // sqrt rate: err(1e-3) should be <= ~0.45 * err(1e-2) (factor sqrt(10)).
    const double ratio = (err_prev > 0.0) ? err_last / err_prev : 0.0;
    out.push_back(mk("gradient circle integral -> Laplace-Beltrami limit",
                     ratio, 0.45));
  }

  {  // B2 hyper vs lowered on representative pairs
    double worst = 0.0;
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"a0*Y00*cm1", "a0*Y00*cp1"},
        {"a1*Y10*cm1", "a1*Y10*cp1"},
        {"a2*Y22*cm2", "a2*Y22*cp2"},
        {"a0*Y10*cx", "a0*Y10*cp2"},
        {"a2*Y00*cm2", "a0*Y00*cp2"},
    };
    for (const auto& [pid, vid] : pairs) {
      const TestField psi = fld::field_by_id(pid, E0, Em);
      const TestField v = fld::field_by_id(vid, E0, Em);
      const double hyper =
          tr::bilinear_B2(psi, v, tctx, tr::B2Variant::kHyper);
      const double lowered =
          tr::bilinear_B2(psi, v, tctx, tr::B2Variant::kLowered);
      worst = std::max(worst, std::abs(hyper - lowered) /
                                  (1.0 + std::abs(hyper)));
    }
    out.push_back(mk("B2 hyper vs lowered", worst, 1e-4));
  }

  {  // B0 via the Green route
    const TestField psi = fld::field_by_id("a1*Y10*cm1", E0, Em);
    const TestField v = fld::field_by_id("a1*Y10*cp1", E0, Em);
    const double b0 = tr::bilinear_B0(psi, v, tctx);
    const double direct =
        ctx.space.integrate_phase([&](const Vec3& x, const Vec3& w, double E) {
          const double a0 = w.dot(psi.grad_x(x, w, E)) +
                            ctx.xs.Sigma(x, w, E) * psi.value(x, w, E) -
                            coll::restricted_apply(psi, x, w, E, ctx);
          return a0 * v.value(x, w, E);
        }) +
        ps::trace_inner(psi.value, v.value, ps::Side::kMinus, ctx.space);
    out.push_back(mk("B0 consistency via Green route",
                     std::abs(b0 - direct) / (1.0 + std::abs(b0)), 1e-6));
  }

  {  // the variational identity over the configured battery
    const auto battery = config.test_battery();
    double worst = 0.0;
    for (const auto& id : config.trial_fields) {
      const TestField psi = fld::field_by_id(id, E0, Em);
      const auto rep = tr::variational_residual(psi, battery, tctx);
      // scale: 1 + |F| as a stand-in for |T psi| |v| at battery scale
      worst = std::max(worst, rep.residual / (1.0 + std::abs(rep.F)));
    }
    out.push_back(mk("variational identity B(psi,v) = F(v)", worst, 1e-4));
  }

  return out;
}

// ---------------------------------------------------------------------------
// csda
// ---------------------------------------------------------------------------

std::vector<Check> csda_checks(const cfg::RunConfig& config) {
  std::vector<Check> out;
  coll::CollisionContext ctx = config.collision_context();
  const double E0 = ctx.space.E0, Em = ctx.space.Em;
  const csda::KappaConfig kcfg = config.kappa_config();

  {  // split additivity against the untruncated composition
    const TestField f = fld::field_by_id("a1*Y10*cm1", E0, Em);
    double worst = 0.0;
    for (const auto& p : pts::halton_phase_points(6, 5, ctx.space.radius * 0.9,
                                                  E0 + 0.3, Em - 0.3)) {
      for (int order : {1, 2}) {
        const auto s =
            csda::split_K(f, p.x, p.omega, p.E, order, kcfg.kappa, ctx);
        const double whole =
            coll::hadamard_collision(f, p.x, p.omega, p.E, order, ctx);
        worst = std::max(worst, std::abs(s.singular + s.regular - whole) /
                                    (1.0 + std::abs(whole)));
      }
    }
    out.push_back(mk("split additivity K = K_{j,1,k} + K_{j,0,k}", worst,
                     1e-8));
  }

  {  // clipped window: empty regular piece
    const TestField f = fld::field_by_id("a0*Y00*cm1", E0, Em);
    const double E = Em / 1.05;  // kappa E > Em for kappa = 1.5
    const auto s = csda::split_K(f, Vec3(0.1, 0, 0), Vec3(0, 0, 1), E, 1, 1.5,
                                 ctx);
    out.push_back(mk("kappa E >= Em clips the regular piece to zero",
                     std::abs(s.regular), 0.0));
  }

  {  // zero field and zero-singular-kernel exactness
    const TestField z = fld::uniform_field(0.0);
    const auto s = csda::split_K(z, Vec3(0, 0, 0), Vec3(0, 0, 1), 2.0, 2,
                                 kcfg.kappa, ctx);
    double worst = std::abs(s.singular) + std::abs(s.regular);
    coll::CollisionContext zctx = ctx;
    zctx.xs = unit_singular_xs();
    auto zero3 = [](const Vec3&, double, double) { return 0.0; };
    zctx.xs.sigma1 = zero3;
    zctx.xs.sigma2 = zero3;
    const TestField f = fld::field_by_id("a1*Y10*cm1", E0, Em);
    for (const auto& p :
         pts::halton_phase_points(5, 17, 0.8, E0 + 0.4, Em / 1.6)) {
      worst = std::max(worst, std::abs(csda::truncation_error(
                                  f, p.x, p.omega, p.E, 1.25, zctx)));
    }
    out.push_back(
        mk("truncation error vanishes when sigma1 = sigma2 = 0", worst, 0.0));
  }

  {  // T - T_kappa assembled two ways
    const TestField f = fld::field_by_id("a1*Y10*cm1", E0, Em);
    tr::TransportContext tctx;
    tctx.coll = ctx;
    double worst = 0.0;
    for (const auto& p :
         pts::halton_phase_points(4, 23, 0.8, E0 + 0.4, Em / 1.4)) {
      const double direct =
          tr::transport_apply(f, p.x, p.omega, p.E, tctx, tr::Form::kStrong) -
          csda::csda_apply(f, p.x, p.omega, p.E, kcfg.kappa, ctx);
      const double residual_form =
          csda::truncation_error(f, p.x, p.omega, p.E, kcfg.kappa, ctx);
      worst = std::max(worst, std::abs(direct - residual_form) /
                                  (1.0 + std::abs(direct)));
    }
    out.push_back(mk("T - T_kappa matches the two-piece residual form", worst,
                     1e-7));
  }

  {  // convergence sweep: slope and monotonicity
    bool monotone = true;
    double slope_min = std::numeric_limits<double>::infinity();
    for (const auto& id : {std::string("a1*Y10*cm1"), std::string("a2*Y22*cm2")}) {
      const TestField f = fld::field_by_id(id, E0, Em);
      const auto rep = csda::convergence_sweep(f, ctx, kcfg,
                                               config.sweep_grid_points,
                                               config.seed);
      slope_min = std::min(slope_min, rep.fitted_slope);
      for (std::size_t i = 1; i < rep.rows.size(); ++i)
        monotone = monotone &&
                   (rep.rows[i].sup_error <= rep.rows[i - 1].sup_error * 1.05);
    }
    // residual = 0.45 - slope, so a negative value is the margin in hand
    out.push_back(mk("kappa sweep slope >= 0.45 (residual = 0.45 - slope)",
                     0.45 - slope_min, 0.0));
    out.push_back(
        mk("kappa sweep errors decrease monotonically", monotone ? 0.0 : 1.0,
           0.0));
  }

  {  // adjoint pairing for T_kappa with a compactly supported test field
     // (spatial parity matched to the a2 factor of the compact field).
     // The cut-off clips at E* = Em/kappa, which is an interior kink of
     // both integrands (S_kappa switches branch, the regular tail window
     // closes); the pairing rule therefore carries a breakpoint at E*.
    const TestField psi = fld::field_by_id("a2*Y10*cm1", E0, Em);
    const TestField v = compact_test_field(E0, Em);
    const double Estar = Em / kcfg.kappa;
    auto pair_phase =
        [&](const std::function<double(const Vec3&, const Vec3&, double)>& f) {
          return ctx.space.integrate_space([&](const Vec3& x) {
            return ctx.space.sphere.integrate([&](const Vec3& w) {
              auto g = [&](double E) { return f(x, w, E); };
              return quad::energy_interval(g, E0, Estar,
                                           ctx.space.energy_panels_per_half,
                                           ctx.space.energy_nodes) +
                     quad::energy_interval(g, Estar, Em,
                                           ctx.space.energy_panels_per_half,
                                           ctx.space.energy_nodes);
            });
          });
        };
    const double lhs = pair_phase([&](const Vec3& x, const Vec3& w, double E) {
      return csda::csda_apply(psi, x, w, E, kcfg.kappa, ctx) * v.value(x, w, E);
    });
    const double rhs = pair_phase([&](const Vec3& x, const Vec3& w, double E) {
      return psi.value(x, w, E) *
             csda::csda_adjoint_apply(v, x, w, E, kcfg.kappa, ctx);
    });
    out.push_back(mk("adjoint pairing for T_kappa",
                     std::abs(lhs - rhs) / (1.0 + std::abs(lhs)), 1e-4));
    out.push_back(mk("T_kappa pairing is non-degenerate",
                     std::abs(lhs) > 1e-3 ? 0.0 : 1.0, 0.0));
  }

  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "finite-part", "geometry", "collision", "transport", "variational",
      "csda"};
  return names;
}

Suite run_suite(const std::string& name, const cfg::RunConfig& config,
                std::optional<double> tol_override) {
  const auto t0 = std::chrono::steady_clock::now();
  Suite s;
  s.name = name;
  if (name == "finite-part")
    s.checks = finite_part_checks(config);
  else if (name == "geometry")
    s.checks = geometry_checks(config);
  else if (name == "collision")
    s.checks = collision_checks(config);
  else if (name == "transport")
    s.checks = transport_checks(config);
  else if (name == "variational")
    s.checks = variational_checks(config);
  else if (name == "csda")
    s.checks = csda_checks(config);
  else
    throw std::invalid_argument("unknown suite '" + name + "'");

  if (tol_override) {
    for (auto& c : s.checks) {
      c.tolerance = *tol_override;
      c.pass = c.residual <= c.tolerance;
    }
  }
  s.pass = true;
  for (const auto& c : s.checks) s.pass = s.pass && c.pass;
  s.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return s;
}

std::vector<Suite> run_suites(const std::string& name,
                              const cfg::RunConfig& config,
                              std::optional<double> tol_override) {
  std::vector<Suite> out;
  if (name == "all") {
    for (const auto& n : suite_names())
      out.push_back(run_suite(n, config, tol_override));
  } else {
    out.push_back(run_suite(name, config, tol_override));
  }
  return out;
}

}  // namespace hsbte::verify
