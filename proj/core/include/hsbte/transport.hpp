#pragma once

#include <string>
#include <vector>

#include "hsbte/collision.hpp"

namespace hsbte::tr {

using coll::CollisionContext;
using fld::TestField;
using sph::Vec3;

/// The three printed forms of the exact transport operator.
enum class Form { kStrong, kPseudo, kRefined };

Form form_from_string(const std::string& name);

struct TransportContext {
  CollisionContext coll;
  /// B0 carries the Gamma_+ boundary term. Disable to impose the adjoint
  /// boundary condition gamma_+(v) = 0 on test functions instead.
  bool include_gamma_plus = true;
  /// Form used where a caller does not select one (CLI default, the
  /// f := T psi evaluation inside the variational functionals).
  Form default_form = Form::kRefined;
};

/// (T psi)(x, omega, E).
///   strong:  -H2(K2bar) + H1(K1bar) + advection
///   pseudo:  the order-lowered route with the outer d/dE by differences
///   refined: the fully expanded form (energy derivative, Laplace-Beltrami
///            block, the two order-1 mixed p.f. terms, diagonal terms)
/// advection = omega.grad_x psi + Sigma psi - K_r psi throughout.
double transport_apply(const TestField& psi, const Vec3& x, const Vec3& omega,
                       double E, const TransportContext& ctx, Form form);

/// (A1* v)(x, omega', Ep) = p.f. int_E0^Ep sigma1(x,Ep,E)/(Ep-E)
///   int_0^2pi v(x, gamma(Ep,E,omega')(s), E) ds dE.
double adjoint_A1_apply(const TestField& v, const Vec3& x, const Vec3& omega,
                        double Ep, const TransportContext& ctx);

/// (A2* v)(x, omega', Ep) = - p.f. int_E0^Ep sigma2(x,Ep,E)/(Ep-E)^2
///   int_0^2pi v(x, gamma(Ep,E,omega')(s), E) ds dE.
double adjoint_A2_apply(const TestField& v, const Vec3& x, const Vec3& omega,
                        double Ep, const TransportContext& ctx);

/// B0(psi, v) = <psi, -omega.grad_x v + Sigma v - K_r* v> + Gamma_+ trace.
double bilinear_B0(const TestField& psi, const TestField& v,
                   const TransportContext& ctx);

/// B1(psi, v) = <psi, A1* v> over G x S' x I'.
double bilinear_B1(const TestField& psi, const TestField& v,
                   const TransportContext& ctx);

enum class B2Variant { kHyper, kLowered };

/// B2(psi, v): hyper variant pairs psi against A2* v (order-2 p.f. on the
/// v side); the lowered variant assembles the six order-1 terms, including
/// the grad_S x grad_S block with coefficient
/// pi sigma2(x,Ep,Ep) (d mu/dE)(Ep,Ep).
/// Requires psi(.,.,Em) = 0 and v(.,.,E0) = 0 (checked by sampling).
double bilinear_B2(const TestField& psi, const TestField& v,
                   const TransportContext& ctx,
                   B2Variant variant = B2Variant::kHyper);

/// B = B0 + B1 + B2 (hyper).
double bilinear_B(const TestField& psi, const TestField& v,
                  const TransportContext& ctx);

/// F(v) = <f, v> + int_{Gamma_-} (omega.nu)_- g v with f := T psi (refined)
/// and g := psi|Gamma_-.
double linear_F(const TestField& psi, const TestField& v,
                const TransportContext& ctx);

struct BilinearReport {
  double B0 = 0, B1 = 0, B2 = 0, B_total = 0, F = 0;
  double residual = 0;     // max |B - F| over the battery
  std::string worst_test;  // id of the test field attaining the max
  double norm_T_psi = 0;   // L2 norm of T psi on the assembly grid
  double norm_v = 0;       // L2 norm of the worst test field
  double scaled_residual = 0;  // max |B - F| / (1 + |T psi| |v|)
};

/// Checks B(psi, v) = F(v) with f := T psi over a battery of test fields;
/// reports the worst pair. Uses a cached phase grid so the battery scales
/// with (#fields), not (#fields x #nodes x operator cost).
BilinearReport variational_residual(const TestField& psi,
                                    const std::vector<TestField>& battery,
                                    const TransportContext& ctx);

/// Full cross-product form of variational_residual: every trial field is
/// paired against every test field, with the expensive per-field grids
/// (T psi on the trial side, the three adjoint applications on the test
/// side) computed once each. Returns the worst pair's report.
BilinearReport variational_residual_all(const std::vector<TestField>& trials,
                                        const std::vector<TestField>& tests,
                                        const TransportContext& ctx);

}  // namespace hsbte::tr
