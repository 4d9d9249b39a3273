#pragma once

// Test-only evaluator of Hadamard finite parts straight from the epsilon
// limit definitions, Richardson-stabilized over the sequence eps = 2^-k.
// Deliberately independent of the production subtraction path: the inner
// integrals use plain composite Gauss-Legendre on a log-graded mesh of
// [x + eps, b] (resp. [a, x - eps]) and never subtract the singularity.

#include <cmath>
#include <functional>
#include <vector>

#include "hsbte/quadrature.hpp"

namespace hsbte::test_oracle {

inline double integrate_tail(const std::function<double(double)>& f, double lo,
                             double hi) {
  // log-graded breakpoints: the integrand grows like 1/(t-x)^j near lo.
  std::vector<double> bp;
  const int panels = 40;
  for (int i = 0; i <= panels; ++i) {
    const double s = static_cast<double>(i) / panels;
    bp.push_back(lo + (hi - lo) * (std::expm1(8.0 * s) / std::expm1(8.0)));
  }
  return hsbte::quad::composite_gauss(f, bp, 12);
}

inline double richardson(std::vector<double> seq) {
  // seq[k] = F(eps_k), eps_k = eps_0 2^-k, F(eps) = L + c1 eps + c2 eps^2...
  std::vector<double> cur = std::move(seq);
  for (std::size_t level = 1; level < cur.size(); ++level) {
    const double p = std::pow(2.0, static_cast<double>(level));
    for (std::size_t i = 0; i + level < cur.size(); ++i)
      cur[i] = (p * cur[i + 1] - cur[i]) / (p - 1.0);
  }
  return cur[0];
}

/// p.f. int_x^b f(t)/(t-x) dt via the limit of
///   int_{x+eps}^b f/(t-x) dt + f(x) ln(eps).
inline double pf1_upper_eps(const std::function<double(double)>& f, double x,
                            double b, int kmax = 14) {
  std::vector<double> seq;
  for (int k = 4; k <= kmax; ++k) {
    const double eps = std::ldexp(b - x, -k);
    const double tail = integrate_tail(
        [&](double t) { return f(t) / (t - x); }, x + eps, b);
    seq.push_back(tail + f(x) * std::log(eps));
  }
  return richardson(std::move(seq));
}

/// p.f. int_x^b f(t)/(t-x)^2 dt via the limit of
///   int_{x+eps}^b f/(t-x)^2 dt + f'(x) ln(eps) - f(x)/eps.
inline double pf2_upper_eps(const std::function<double(double)>& f,
                            const std::function<double(double)>& df, double x,
                            double b, int kmax = 14) {
  std::vector<double> seq;
  for (int k = 4; k <= kmax; ++k) {
    const double eps = std::ldexp(b - x, -k);
    const double tail = integrate_tail(
        [&](double t) { return f(t) / ((t - x) * (t - x)); }, x + eps, b);
    seq.push_back(tail + df(x) * std::log(eps) - f(x) / eps);
  }
  return richardson(std::move(seq));
}

/// p.f. int_a^x f(t)/(t-x) dt via the limit of
///   int_a^{x-eps} f/(t-x) dt - f(x) ln(eps).
inline double pf1_lower_eps(const std::function<double(double)>& f, double x,
                            double a, int kmax = 14) {
  std::vector<double> seq;
  for (int k = 4; k <= kmax; ++k) {
    const double eps = std::ldexp(x - a, -k);
    const double tail = integrate_tail(
        [&](double t) { return f(a + x - eps - t) / ((a + x - eps - t) - x); },
        a, x - eps);
    seq.push_back(tail - f(x) * std::log(eps));
  }
  return richardson(std::move(seq));
}

/// p.f. int_a^x f(t)/(t-x)^2 dt via the limit of
///   int_a^{x-eps} f/(t-x)^2 dt - f'(x) ln(eps) - f(x)/eps.
inline double pf2_lower_eps(const std::function<double(double)>& f,
                            const std::function<double(double)>& df, double x,
                            double a, int kmax = 14) {
  std::vector<double> seq;
  for (int k = 4; k <= kmax; ++k) {
    const double eps = std::ldexp(x - a, -k);
    const double tail = integrate_tail(
        [&](double t) {
          const double u = a + x - eps - t;  // mirrored: singularity at lo
          return f(u) / ((u - x) * (u - x));
        },
        a, x - eps);
    seq.push_back(tail - df(x) * std::log(eps) - f(x) / eps);
  }
  return richardson(std::move(seq));
}

}  // namespace hsbte::test_oracle
