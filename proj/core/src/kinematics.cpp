#include "hsbte/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace hsbte::kin {

namespace {
void check_args(double Ep, double E) {
  if (!(E > 0.0) || !(Ep >= E))
    throw std::invalid_argument("kinematics: need 0 < E <= Ep");
}
}  // namespace

double mu(double Ep, double E) {
  check_args(Ep, E);
  if (Ep == E) return 1.0;
  return std::sqrt(E * (Ep + 2.0) / (Ep * (E + 2.0)));
}

double mu_dEp(double Ep, double E) {
  check_args(Ep, E);
  const double m = mu(Ep, E);
  return (1.0 / (2.0 * m)) * (-2.0 * E) / (Ep * Ep * (E + 2.0));
}

double mu_dE(double Ep, double E) {
  check_args(Ep, E);
  const double m = mu(Ep, E);
  return (1.0 / (2.0 * m)) * (2.0 * Ep + 4.0) / (Ep * (E + 2.0) * (E + 2.0));
}

double mu_sum_identity(double E) { return mu_dEp(E, E) + mu_dE(E, E); }

double one_minus_mu_sq(double Ep, double E) {
  check_args(Ep, E);
  return 2.0 * (Ep - E) / (Ep * (E + 2.0));
}

double sqrt_one_minus_mu_sq(double Ep, double E) {
  return std::sqrt(one_minus_mu_sq(Ep, E));
}

}  // namespace hsbte::kin
