#pragma once

#include <utility>

namespace hsbte {

/// P_l(t) by the three-term recurrence.
inline double legendre(int l, double t) {
  if (l == 0) return 1.0;
  if (l == 1) return t;
  double p0 = 1.0, p1 = t;
  for (int k = 2; k <= l; ++k) {
    const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

/// (P_l(t), P_l'(t)). The derivative uses the standard relation
/// (1-t^2) P_l' = l (P_{l-1} - t P_l), with the endpoint values
/// P_l'(+-1) = (+-1)^{l+1} l(l+1)/2 taken on a branch.
inline std::pair<double, double> legendre_with_derivative(int l, double t) {
  const double p = legendre(l, t);
  if (l == 0) return {p, 0.0};
  const double denom = 1.0 - t * t;
  if (denom < 1e-14) {
    const double sign = (t > 0.0) ? 1.0 : ((l % 2 == 0) ? -1.0 : 1.0);
    return {p, sign * 0.5 * l * (l + 1)};
  }
  const double pm1 = legendre(l - 1, t);
  return {p, l * (pm1 - t * p) / denom};
}

}  // namespace hsbte
