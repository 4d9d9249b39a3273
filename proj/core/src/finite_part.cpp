#include "hsbte/finite_part.hpp"

#include <cmath>
#include <stdexcept>

namespace hsbte::fp {

namespace {

void check_upper(const PfIntegrand& f, double x, double b, bool need_deriv) {
  if (!(x < b)) throw std::invalid_argument("finite_part: requires x < b");
  if (!f.eval) throw std::invalid_argument("finite_part: missing eval");
  if (need_deriv && !f.eval_deriv)
    throw std::invalid_argument("finite_part: order-2 rule needs eval_deriv");
}

void check_lower(const PfIntegrand& f, double x, double a, bool need_deriv) {
  if (!(a < x)) throw std::invalid_argument("finite_part: requires a < x");
  if (!f.eval) throw std::invalid_argument("finite_part: missing eval");
  if (need_deriv && !f.eval_deriv)
    throw std::invalid_argument("finite_part: order-2 rule needs eval_deriv");
}

double check_finite(double v) {
  if (!std::isfinite(v))
    throw std::domain_error("finite_part: non-finite integrand sample");
  return v;
}

// Residual integral toward the singular point at `x`, lower end of [x,b].
double residual_upper(const std::function<double(double)>& r, double x,
                      double b, const QuadratureSpec& q) {
  if (q.sqrt_substitution) {
    const double W = std::sqrt(b - x);
    auto g = [&](double u) { return 2.0 * u * check_finite(r(x + u * u)); };
    return quad::graded_gauss(g, 0.0, W, q.panel_count, q.nodes_per_panel,
                              q.endpoint_grading, 0.0);
  }
  auto g = [&](double t) { return check_finite(r(t)); };
  return quad::graded_gauss(g, x, b, q.panel_count, q.nodes_per_panel,
                            q.endpoint_grading, x);
}

// Residual integral toward the singular point at `x`, upper end of [a,x].
double residual_lower(const std::function<double(double)>& r, double x,
                      double a, const QuadratureSpec& q) {
  if (q.sqrt_substitution) {
    const double W = std::sqrt(x - a);
    auto g = [&](double u) { return 2.0 * u * check_finite(r(x - u * u)); };
    return quad::graded_gauss(g, 0.0, W, q.panel_count, q.nodes_per_panel,
                              q.endpoint_grading, 0.0);
  }
  auto g = [&](double t) { return check_finite(r(t)); };
  return quad::graded_gauss(g, a, x, q.panel_count, q.nodes_per_panel,
                            q.endpoint_grading, x);
}

}  // namespace

double pf1_upper(const PfIntegrand& f, double x, double b,
                 const QuadratureSpec& q) {
  check_upper(f, x, b, false);
  const double fx = check_finite(f.eval(x));
  // d == 0 happens when the sqrt-substituted distance u^2 underflows next
  // to the singular point; the weighted sample tends to zero there.
  auto r = [&](double t) {
    const double d = t - x;
    if (d == 0.0) return 0.0;
    return (f.eval(t) - fx) / d;
  };
  return residual_upper(r, x, b, q) + fx * std::log(b - x);
}

double pf2_upper(const PfIntegrand& f, double x, double b,
                 const QuadratureSpec& q) {
  check_upper(f, x, b, true);
  const double fx = check_finite(f.eval(x));
  const double dfx = check_finite(f.eval_deriv(x));
  auto r = [&](double t) {
    const double d = t - x;
    if (d == 0.0) return 0.0;
    return (f.eval(t) - fx - dfx * d) / (d * d);
  };
  return residual_upper(r, x, b, q) + dfx * std::log(b - x) - fx / (b - x);
}

double pf1_lower(const PfIntegrand& f, double x, double a,
                 const QuadratureSpec& q) {
  check_lower(f, x, a, false);
  const double fx = check_finite(f.eval(x));
  auto r = [&](double t) {
    const double d = t - x;
    if (d == 0.0) return 0.0;
    return (f.eval(t) - fx) / d;
  };
  return residual_lower(r, x, a, q) - fx * std::log(x - a);
}

double pf1_lower_pos(const PfIntegrand& f, double x, double a,
                     const QuadratureSpec& q) {
  return -pf1_lower(f, x, a, q);
}

double pf2_lower(const PfIntegrand& f, double x, double a,
                 const QuadratureSpec& q) {
  check_lower(f, x, a, true);
  const double fx = check_finite(f.eval(x));
  const double dfx = check_finite(f.eval_deriv(x));
  auto r = [&](double t) {
    const double d = t - x;
    if (d == 0.0) return 0.0;
    return (f.eval(t) - fx - dfx * d) / (d * d);
  };
  return residual_lower(r, x, a, q) - dfx * std::log(x - a) - fx / (x - a);
}

double pf1_derivative(const Pf2Density& f, double x, double b,
                      const QuadratureSpec& q) {
  if (!f.eval || !f.d_dx || !f.d_dt)
    throw std::invalid_argument("pf1_derivative: missing partial derivatives");
  PfIntegrand fx{[&](double t) { return f.eval(x, t); },
                 [&](double t) { return f.d_dt(x, t); }, 1.0};
  PfIntegrand dfdx{[&](double t) { return f.d_dx(x, t); }, {}, 1.0};
  return pf2_upper(fx, x, b, q) + pf1_upper(dfdx, x, b, q) - f.d_dt(x, x);
}

double fubini_pf1_residual(const std::function<double(double, double)>& f,
                           double E0, double Em, const QuadratureSpec& q) {
  if (E0 == Em) return 0.0;
  if (!(E0 < Em)) throw std::invalid_argument("fubini_pf1_residual: E0 < Em");
  auto lhs_inner = [&](double E) {
    PfIntegrand d{[&, E](double Ep) { return f(Ep, E); }, {}, 1.0};
    return pf1_upper(d, E, Em, q);
  };
  auto rhs_inner = [&](double Ep) {
    PfIntegrand d{[&, Ep](double E) { return f(Ep, E); }, {}, 1.0};
    return pf1_lower_pos(d, Ep, E0, q);
  };
  // Outer integrands carry ln(Em-E) resp. ln(Ep-E0) endpoint behaviour.
  const double lhs = quad::sqrt_graded_gauss(lhs_inner, E0, Em, q.panel_count,
                                             q.nodes_per_panel,
                                             q.endpoint_grading, Em);
  const double rhs = quad::sqrt_graded_gauss(rhs_inner, E0, Em, q.panel_count,
                                             q.nodes_per_panel,
                                             q.endpoint_grading, E0);
  return std::abs(lhs - rhs);
}

std::pair<double, double> pf2_to_pf1_identity(const EnergyDensity& f, double E,
                                              double Em,
                                              const QuadratureSpec& q) {
  if (!(E < Em))
    throw std::invalid_argument("pf2_to_pf1_identity: requires E < Em");
  PfIntegrand d{[&](double Ep) { return f.eval(Ep, E); },
                [&](double Ep) { return f.d_dEp(Ep, E); }, 1.0};
  PfIntegrand dd{[&](double Ep) { return f.d_dEp(Ep, E); }, {}, 1.0};
  const double lhs = pf2_upper(d, E, Em, q);
  const double rhs =
      pf1_upper(dd, E, Em, q) + f.d_dEp(E, E) - f.eval(Em, E) / (Em - E);
  return {lhs, rhs};
}

}  // namespace hsbte::fp
