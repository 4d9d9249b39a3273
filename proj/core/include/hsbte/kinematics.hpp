#pragma once

namespace hsbte::kin {

/// Kinematic factor mu(Ep, E) = sqrt(E (Ep + 2) / (Ep (E + 2))), the cosine
/// of the scattering angle linking incoming energy Ep >= E to outgoing E.
/// Valid for 0 < E <= Ep. mu(E, E) == 1 exactly (taken on a branch, not
/// through the square root).
double mu(double Ep, double E);

/// Closed-form partials of mu. Singular nowhere for 0 < E <= Ep.
double mu_dEp(double Ep, double E);
double mu_dE(double Ep, double E);

/// (d/dEp mu + d/dE mu)(E, E). Identically zero; exposed so callers can
/// assert the cancellation that kills the theta-coefficient block.
double mu_sum_identity(double E);

/// 1 - mu(Ep,E)^2 evaluated in the cancellation-free form
/// 2 (Ep - E) / (Ep (E + 2)). Never computed as 1 - mu^2.
double one_minus_mu_sq(double Ep, double E);

/// sqrt(1 - mu^2) via the cancellation-free form.
double sqrt_one_minus_mu_sq(double Ep, double E);

}  // namespace hsbte::kin
