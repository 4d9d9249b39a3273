#pragma once

#include <functional>
#include <utility>

#include "hsbte/quadrature.hpp"

namespace hsbte::fp {

/// One-parameter density t -> f(t) for finite-part quadrature. eval must be
/// finite on the closed integration interval. Order-2 rules additionally
/// require eval_deriv (the Taylor subtraction needs f' at the singular
/// endpoint). holder_exponent is the declared Hoelder class of f, recorded
/// for diagnostics; it is not verified.
struct PfIntegrand {
  std::function<double(double)> eval;
  std::function<double(double)> eval_deriv;  // may be empty for order 1
  double holder_exponent = 1.0;
};

/// Panel layout for the regular residual integrals. Grading is geometric
/// toward the singular endpoint. sqrt_substitution maps distance = u^2,
/// which restores spectral accuracy for densities with sqrt(|t-x|)
/// behaviour near the singular point.
struct QuadratureSpec {
  int panel_count = 16;
  int nodes_per_panel = 12;
  double endpoint_grading = 2.0;
  bool sqrt_substitution = false;
};

/// p.f. int_x^b f(t)/(t-x) dt, evaluated by Taylor subtraction:
///   int_x^b (f(t)-f(x))/(t-x) dt + f(x) ln(b-x).
double pf1_upper(const PfIntegrand& f, double x, double b,
                 const QuadratureSpec& q);

/// p.f. int_x^b f(t)/(t-x)^2 dt, by second-order subtraction:
///   int_x^b (f(t)-f(x)-f'(x)(t-x))/(t-x)^2 dt + f'(x) ln(b-x) - f(x)/(b-x).
double pf2_upper(const PfIntegrand& f, double x, double b,
                 const QuadratureSpec& q);

/// p.f. int_a^x f(t)/(t-x) dt  (lower-endpoint singularity; note the sign:
/// for f == 1 this equals -ln(x-a)).
double pf1_lower(const PfIntegrand& f, double x, double a,
                 const QuadratureSpec& q);

/// p.f. int_a^x f(t)/(x-t) dt = -pf1_lower. For f == 1 this is +ln(x-a);
/// it is the orientation appearing in the adjoint operators.
double pf1_lower_pos(const PfIntegrand& f, double x, double a,
                     const QuadratureSpec& q);

/// p.f. int_a^x f(t)/(t-x)^2 dt (equals the (x-t)^2 orientation).
double pf2_lower(const PfIntegrand& f, double x, double a,
                 const QuadratureSpec& q);

/// Two-variable density f(x,t) with both first partials, C^2 on the square.
struct Pf2Density {
  std::function<double(double, double)> eval;   // f(x,t)
  std::function<double(double, double)> d_dx;   // df/dx
  std::function<double(double, double)> d_dt;   // df/dt
};

/// d/dx [ p.f. int_x^b f(x,t)/(t-x) dt ] via the derivative identity
///   pf2 of f(x,.) + pf1 of df/dx(x,.) - df/dt(x,x).
double pf1_derivative(const Pf2Density& f, double x, double b,
                      const QuadratureSpec& q);

/// Residual of the order-1 Fubini swap over [E0,Em]^2:
///  | int_I ( p.f. int_E^Em f(Ep,E)/(Ep-E) dEp ) dE
///    - int_I' ( p.f. int_E0^Ep f(Ep,E)/(Ep-E) dE ) dEp |.
/// Zero for exact arithmetic; used as a self-test.
double fubini_pf1_residual(const std::function<double(double, double)>& f,
                           double E0, double Em, const QuadratureSpec& q);

/// Energy-pair density f(Ep, E) with its partial in the first argument.
struct EnergyDensity {
  std::function<double(double, double)> eval;    // f(Ep, E)
  std::function<double(double, double)> d_dEp;   // df/dEp
};

/// Both sides of the order-lowering identity at fixed E:
///   lhs = p.f. int_E^Em f(Ep,E)/(Ep-E)^2 dEp
///   rhs = p.f. int_E^Em df/dEp(Ep,E)/(Ep-E) dEp + df/dEp(E,E)
///         - f(Em,E)/(Em-E).
/// Callers assert lhs == rhs. Rejects E == Em.
std::pair<double, double> pf2_to_pf1_identity(const EnergyDensity& f, double E,
                                              double Em,
                                              const QuadratureSpec& q);

}  // namespace hsbte::fp
