#include "hsbte/collision.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hsbte/kinematics.hpp"
#include "hsbte/legendre.hpp"
#include "hsbte/quadrature.hpp"

namespace hsbte::coll {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double energy_gl(const std::function<double(double)>& f, double a, double b,
                 int n) {
  if (a >= b) return 0.0;
  const auto& r = quad::gauss_legendre(n);
  quad::KahanSum sum;
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i)
    sum.add(half * r.weights[i] * f(mid + half * r.nodes[i]));
  return sum.value();
}
}  // namespace

double circle_average(const TestField& psi, const Vec3& x, const Vec3& omega,
                      double Ep, double E, double Ef,
                      const CollisionContext& ctx) {
  if (Ep == E) return kTwoPi * psi.value(x, omega, Ef);
  if (psi.harmonic_degree) {
    const double m = kin::mu(Ep, E);
    return kTwoPi * legendre(*psi.harmonic_degree, m) * psi.value(x, omega, Ef);
  }
  const sph::Direction om(omega);
  return quad::circle_trapezoid(
      [&](double s) {
        return psi.value(x, sph::scatter_circle(Ep, E, om, s), Ef);
      },
      ctx.circle_nodes);
}

namespace {

double circle_average_grad(const TestField& psi, const Vec3& x,
                           const Vec3& omega, double Ep, double E, double Ef,
                           bool wrt_Ep, const CollisionContext& ctx) {
  if (!(Ep > E))
    throw std::invalid_argument(
        "circle_average_grad: Ep > E required; use the limit form at Ep == E");
  const double dmu = wrt_Ep ? kin::mu_dEp(Ep, E) : kin::mu_dE(Ep, E);
  if (psi.harmonic_degree) {
    const int l = *psi.harmonic_degree;
    const auto [p, dp] = legendre_with_derivative(l, kin::mu(Ep, E));
    return kTwoPi * dp * dmu * psi.value(x, omega, Ef);
  }
  const sph::Direction om(omega);
  return quad::circle_trapezoid(
      [&](double s) {
        const Vec3 g = sph::scatter_circle(Ep, E, om, s);
        const Vec3 dg = wrt_Ep ? sph::scatter_circle_dEp(Ep, E, om, s)
                               : sph::scatter_circle_dE(Ep, E, om, s);
        return psi.grad_S(x, g, Ef).dot(dg);
      },
      ctx.circle_nodes);
}

}  // namespace

double circle_average_grad_dE(const TestField& psi, const Vec3& x,
                              const Vec3& omega, double Ep, double E,
                              double Ef, const CollisionContext& ctx) {
  return circle_average_grad(psi, x, omega, Ep, E, Ef, false, ctx);
}

double circle_average_grad_dEp(const TestField& psi, const Vec3& x,
                               const Vec3& omega, double Ep, double E,
                               double Ef, const CollisionContext& ctx) {
  return circle_average_grad(psi, x, omega, Ep, E, Ef, true, ctx);
}

double circle_average_grad_limit_dE(const TestField& psi, const Vec3& x,
                                    const Vec3& omega, double E, double Ef) {
  return -std::numbers::pi * kin::mu_dE(E, E) * psi.laplace_S(x, omega, Ef);
}

double circle_average_grad_limit_dEp(const TestField& psi, const Vec3& x,
                                     const Vec3& omega, double E, double Ef) {
  return -std::numbers::pi * kin::mu_dEp(E, E) * psi.laplace_S(x, omega, Ef);
}

double circle_average_holder_check(const TestField& psi, const Vec3& x,
                                   const Vec3& omega, double E,
                                   const CollisionContext& ctx) {
  const double h1_at_E = kTwoPi * psi.value(x, omega, E);
  double sup = 0.0;
  for (double d : {0.2, 0.1, 0.05, 0.02, 0.01, 0.005}) {
    const double Ep = E + d;
    if (Ep > ctx.space.Em) continue;
    const double h1 = circle_average(psi, x, omega, Ep, E, Ep, ctx);
    sup = std::max(sup, std::abs(h1 - h1_at_E) / std::sqrt(d));
  }
  return sup;
}

double hadamard_collision(const TestField& psi, const Vec3& x,
                          const Vec3& omega, double E, int order,
                          const CollisionContext& ctx) {
  const double Em = ctx.space.Em;
  if (!(E < Em))
    throw std::invalid_argument("hadamard_collision: requires E < Em");
  if (order != 1 && order != 2)
    throw std::invalid_argument("hadamard_collision: order must be 1 or 2");
  const auto& sig = (order == 1) ? ctx.xs.sigma1 : ctx.xs.sigma2;

  fp::PfIntegrand g;
  g.eval = [&](double Ep) {
    return sig(x, Ep, E) * circle_average(psi, x, omega, Ep, E, Ep, ctx);
  };
  if (order == 1) return fp::pf1_upper(g, E, Em, ctx.pf);

  // Order 2: the subtraction rule needs the exact one-sided derivative of
  // the density at Ep = E; the gradient part is the Laplace-Beltrami limit.
  const TestField dpsi = psi.dE_view();
  g.eval_deriv = [&, dpsi](double Ep) {
    if (Ep == E) {
      return ctx.xs.dsigma2_dEp(x, E, E) * kTwoPi * psi.value(x, omega, E) +
             ctx.xs.sigma2(x, E, E) *
                 (circle_average_grad_limit_dEp(psi, x, omega, E, E) +
                  kTwoPi * psi.dE(x, omega, E));
    }
    return ctx.xs.dsigma2_dEp(x, Ep, E) *
               circle_average(psi, x, omega, Ep, E, Ep, ctx) +
           ctx.xs.sigma2(x, Ep, E) *
               (circle_average_grad_dEp(psi, x, omega, Ep, E, Ep, ctx) +
                circle_average(dpsi, x, omega, Ep, E, Ep, ctx));
  };
  return fp::pf2_upper(g, E, Em, ctx.pf);
}

double k0_integral(const TestField& psi, const Vec3& x, const Vec3& omega,
                   double E, const CollisionContext& ctx) {
  return quad::sqrt_graded_gauss(
      [&](double Ep) {
        return ctx.xs.sigma0(x, Ep, E) *
               circle_average(psi, x, omega, Ep, E, Ep, ctx);
      },
      E, ctx.space.Em, ctx.kr_energy_panels, ctx.kr_energy_nodes,
      ctx.pf.endpoint_grading, E);
}

double collision_hadamard_form(const TestField& psi, const Vec3& x,
                               const Vec3& omega, double E,
                               const CollisionContext& ctx) {
  return hadamard_collision(psi, x, omega, E, 2, ctx) -
         hadamard_collision(psi, x, omega, E, 1, ctx) +
         k0_integral(psi, x, omega, E, ctx);
}

double h1_of_k2(const TestField& psi, const Vec3& x, const Vec3& omega,
                double E, const CollisionContext& ctx) {
  fp::PfIntegrand g;
  g.eval = [&](double Ep) {
    return ctx.xs.sigma2(x, Ep, E) *
           circle_average(psi, x, omega, Ep, E, Ep, ctx);
  };
  return fp::pf1_upper(g, E, ctx.space.Em, ctx.pf);
}

double h1_of_k2_dE_density(const TestField& psi, const Vec3& x,
                           const Vec3& omega, double E,
                           const CollisionContext& ctx) {
  fp::PfIntegrand g;
  g.eval = [&](double Ep) {
    if (Ep == E) {
      return ctx.xs.dsigma2_dE(x, E, E) * kTwoPi * psi.value(x, omega, E) +
             ctx.xs.sigma2(x, E, E) *
                 circle_average_grad_limit_dE(psi, x, omega, E, E);
    }
    return ctx.xs.dsigma2_dE(x, Ep, E) *
               circle_average(psi, x, omega, Ep, E, Ep, ctx) +
           ctx.xs.sigma2(x, Ep, E) *
               circle_average_grad_dE(psi, x, omega, Ep, E, Ep, ctx);
  };
  return fp::pf1_upper(g, E, ctx.space.Em, ctx.pf);
}

double k2bar_dEp_diagonal(const TestField& psi, const Vec3& x,
                          const Vec3& omega, double E,
                          const CollisionContext& ctx) {
  return kTwoPi * ctx.xs.dsigma2_dEp(x, E, E) * psi.value(x, omega, E) +
         ctx.xs.sigma2(x, E, E) *
             (circle_average_grad_limit_dEp(psi, x, omega, E, E) +
              kTwoPi * psi.dE(x, omega, E));
}

double dE_h1_of_k2(const TestField& psi, const Vec3& x, const Vec3& omega,
                   double E, const CollisionContext& ctx) {
  const double h = ctx.fd_step_E;
  if (!(E - h > ctx.space.E0) || !(E + h < ctx.space.Em))
    throw std::invalid_argument(
        "dE_h1_of_k2: E within one FD step of the interval ends");
  return (h1_of_k2(psi, x, omega, E + h, ctx) -
          h1_of_k2(psi, x, omega, E - h, ctx)) /
         (2.0 * h);
}

double collision_pseudo_form(const TestField& psi, const Vec3& x,
                             const Vec3& omega, double E,
                             const CollisionContext& ctx) {
  return dE_h1_of_k2(psi, x, omega, E, ctx) -
         h1_of_k2_dE_density(psi, x, omega, E, ctx) +
         k2bar_dEp_diagonal(psi, x, omega, E, ctx) -
         hadamard_collision(psi, x, omega, E, 1, ctx) +
         k0_integral(psi, x, omega, E, ctx);
}

namespace {

// K1 applications; swap_args selects the adjoint kernel orientation.
double apply_k1(const TestField& psi, const Vec3& x, const Vec3& omega,
                double E, const CollisionContext& ctx, bool adjoint) {
  const double E0 = ctx.space.E0, Em = ctx.space.Em;
  const int n = ctx.kr_energy_panels * ctx.kr_energy_nodes;
  if (psi.harmonic_degree && ctx.xs.k1_structure) {
    const auto& st = *ctx.xs.k1_structure;
    const int l = *psi.harmonic_degree;
    if (l >= static_cast<int>(st.g.size())) return 0.0;
    const double angular = st.g[l];
    const double en = energy_gl(
        [&](double Ep) {
          const double rho = adjoint ? st.energy(E, Ep) : st.energy(Ep, E);
          return rho * psi.value(x, omega, Ep);
        },
        E0, Em, n);
    return st.space(x) * angular * en;
  }
  return energy_gl(
      [&](double Ep) {
        return ctx.space.sphere.integrate([&](const Vec3& wp) {
          const double k = adjoint ? ctx.xs.k1(x, omega, wp, E, Ep)
                                   : ctx.xs.k1(x, wp, omega, Ep, E);
          return k * psi.value(x, wp, Ep);
        });
      },
      E0, Em, n);
}

double apply_k2(const TestField& psi, const Vec3& x, const Vec3& omega,
                double E, const CollisionContext& ctx, bool adjoint) {
  if (psi.harmonic_degree && ctx.xs.k2_structure) {
    const auto& st = *ctx.xs.k2_structure;
    const int l = *psi.harmonic_degree;
    if (l >= static_cast<int>(st.g.size())) return 0.0;
    return st.space(x) * st.energy(E, E) * st.g[l] * psi.value(x, omega, E);
  }
  return ctx.space.sphere.integrate([&](const Vec3& wp) {
    const double k = adjoint ? ctx.xs.k2(x, omega, wp, E)
                             : ctx.xs.k2(x, wp, omega, E);
    return k * psi.value(x, wp, E);
  });
}

double apply_k3(const TestField& psi, const Vec3& x, const Vec3& omega,
                double E, const CollisionContext& ctx, bool adjoint) {
  const double E0 = ctx.space.E0, Em = ctx.space.Em;
  if (!adjoint) {
    // int_E^Em sigma3(x,Ep,E) * circle_average(psi; Ep, E, Ep) dEp
    return quad::sqrt_graded_gauss(
        [&](double Ep) {
          return ctx.xs.sigma3(x, Ep, E) *
                 circle_average(psi, x, omega, Ep, E, Ep, ctx);
        },
        E, Em, ctx.kr_energy_panels, ctx.kr_energy_nodes,
        ctx.pf.endpoint_grading, E);
  }
  // int_E0^E sigma3(x,E,Ep) * circle_average(psi; E, Ep, Ep) dEp
  if (E <= E0) return 0.0;
  return quad::sqrt_graded_gauss(
      [&](double Ep) {
        return ctx.xs.sigma3(x, E, Ep) *
               circle_average(psi, x, omega, E, Ep, Ep, ctx);
      },
      E0, E, ctx.kr_energy_panels, ctx.kr_energy_nodes,
      ctx.pf.endpoint_grading, E);
}

}  // namespace

double restricted_apply(const TestField& psi, const Vec3& x, const Vec3& omega,
                        double E, const CollisionContext& ctx) {
  return apply_k1(psi, x, omega, E, ctx, false) +
         apply_k2(psi, x, omega, E, ctx, false) +
         apply_k3(psi, x, omega, E, ctx, false);
}

double restricted_adjoint_apply(const TestField& v, const Vec3& x,
                                const Vec3& omega, double E,
                                const CollisionContext& ctx) {
  return apply_k1(v, x, omega, E, ctx, true) +
         apply_k2(v, x, omega, E, ctx, true) +
         apply_k3(v, x, omega, E, ctx, true);
}

}  // namespace hsbte::coll
