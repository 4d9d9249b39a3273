#pragma once

#include "hsbte/cross_sections.hpp"
#include "hsbte/fields.hpp"
#include "hsbte/finite_part.hpp"
#include "hsbte/phase_space.hpp"

namespace hsbte::coll {

using fld::TestField;
using sph::Vec3;

/// Quadrature and kernel context shared by the collision, transport and
/// CSDA operators.
struct CollisionContext {
  xs::CrossSectionSet xs;
  ps::PhaseSpace space;
  int circle_nodes = 32;       // trapezoid nodes for generic circle integrals
  fp::QuadratureSpec pf{6, 8, 1.5, false};  // Hadamard p.f. rules
  int kr_energy_panels = 6;    // K1/K3 energy integrals
  int kr_energy_nodes = 5;
  double fd_step_E = 1e-4;     // outer d/dE of the pseudo-differential form
};

/// Bare circle integral int_0^2pi psi(x, gamma(Ep,E,omega)(s), Ef) ds.
/// Pure-harmonic angular factors use the mean-value identity
/// 2 pi P_l(mu(Ep,E)) psi(x,omega,Ef); otherwise the periodic trapezoid.
double circle_average(const TestField& psi, const Vec3& x, const Vec3& omega,
                      double Ep, double E, double Ef,
                      const CollisionContext& ctx);

/// Convenience overload with the field evaluated at Ep.
inline double circle_average(const TestField& psi, const Vec3& x,
                             const Vec3& omega, double Ep, double E,
                             const CollisionContext& ctx) {
  return circle_average(psi, x, omega, Ep, E, Ep, ctx);
}

/// int_0^2pi < grad_S psi(x, gamma(s), Ef), d(gamma)/dE (s) > ds. Requires
/// Ep > E; the Ep == E limits are the *_limit functions below.
double circle_average_grad_dE(const TestField& psi, const Vec3& x,
                              const Vec3& omega, double Ep, double E,
                              double Ef, const CollisionContext& ctx);
double circle_average_grad_dEp(const TestField& psi, const Vec3& x,
                               const Vec3& omega, double Ep, double E,
                               double Ef, const CollisionContext& ctx);

/// Analytic Ep -> E limits of the gradient circle averages:
///   -pi (d mu/dE)(E,E) (Lap_S psi)(x,omega,Ef)   (and the dEp twin).
/// These are the Laplace-Beltrami limit values used by the order-2
/// subtraction rules; they hold for any C^3 angular dependence.
double circle_average_grad_limit_dE(const TestField& psi, const Vec3& x,
                                    const Vec3& omega, double E, double Ef);
double circle_average_grad_limit_dEp(const TestField& psi, const Vec3& x,
                                     const Vec3& omega, double E, double Ef);

/// Sampled sup over Ep of |h1(Ep) - h1(E)| / sqrt(Ep - E), where h1 is the
/// bare circle average. Finite for Hoelder fields; a diagnostic for the
/// sqrt-Hoelder bound on the circle-average kernel.
double circle_average_holder_check(const TestField& psi, const Vec3& x,
                                   const Vec3& omega, double E,
                                   const CollisionContext& ctx);

/// H_j composition: p.f. int_E^Em sigma_hat_j(x,Ep,E) * circle_average /
/// (Ep-E)^j dEp, with the order-2 rule fed the analytic endpoint derivative
/// (Laplace-Beltrami limit), never a numerical Ep -> E approach.
double hadamard_collision(const TestField& psi, const Vec3& x,
                          const Vec3& omega, double E, int order,
                          const CollisionContext& ctx);

/// The regular sigma_hat_0 part: int_E^Em sigma0 * circle_average dEp.
double k0_integral(const TestField& psi, const Vec3& x, const Vec3& omega,
                   double E, const CollisionContext& ctx);

/// Full collision operator K in the hyper-singular form:
///   H_2(K2bar psi) - H_1(K1bar psi) + int K0hat.
double collision_hadamard_form(const TestField& psi, const Vec3& x,
                               const Vec3& omega, double E,
                               const CollisionContext& ctx);

/// Full collision operator in the pseudo-differential-like form:
///   d/dE ( H_1(K2bar psi) ) - H_1( dE K2bar psi )
///   + dEp (K2bar psi)|_{Ep=E} - H_1(K1bar psi) + int K0hat,
/// the outer d/dE taken by central differences of step ctx.fd_step_E.
double collision_pseudo_form(const TestField& psi, const Vec3& x,
                             const Vec3& omega, double E,
                             const CollisionContext& ctx);

/// Building blocks shared with the transport forms.
double h1_of_k2(const TestField& psi, const Vec3& x, const Vec3& omega,
                double E, const CollisionContext& ctx);
double h1_of_k2_dE_density(const TestField& psi, const Vec3& x,
                           const Vec3& omega, double E,
                           const CollisionContext& ctx);
double k2bar_dEp_diagonal(const TestField& psi, const Vec3& x,
                          const Vec3& omega, double E,
                          const CollisionContext& ctx);
double dE_h1_of_k2(const TestField& psi, const Vec3& x, const Vec3& omega,
                   double E, const CollisionContext& ctx);

/// Restricted collision operator K_r = K1 + K2 + K3 and its adjoint.
double restricted_apply(const TestField& psi, const Vec3& x, const Vec3& omega,
                        double E, const CollisionContext& ctx);
double restricted_adjoint_apply(const TestField& v, const Vec3& x,
                                const Vec3& omega, double E,
                                const CollisionContext& ctx);

}  // namespace hsbte::coll
