#include "hsbte/cross_sections.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hsbte/legendre.hpp"
#include "hsbte/quadrature.hpp"

namespace hsbte::xs {

namespace {

double legendre_sum(const std::vector<double>& g, double t) {
  double acc = 0.0;
  for (std::size_t l = 0; l < g.size(); ++l)
    acc += g[l] * (2.0 * l + 1.0) / (4.0 * std::numbers::pi) *
           legendre(static_cast<int>(l), t);
  return acc;
}

}  // namespace

CrossSectionSet builtin_xs(const std::string& family_id,
                           const FamilyParams& p) {
  if (family_id != "smooth")
    throw std::invalid_argument("builtin_xs: unknown family '" + family_id +
                                "'");
  if (!(p.lambda > 0.0))
    throw std::invalid_argument("builtin_xs: lambda must be positive");
  if (p.beta < 0.0)
    throw std::invalid_argument("builtin_xs: beta must be non-negative");
  if (p.c0 < 0.0 || p.c1 < 0.0 || p.c2 < 0.0)
    throw std::invalid_argument("builtin_xs: c_j must be non-negative");

  const double c0 = p.c0, c1 = p.c1, c2 = p.c2;
  const double beta = p.beta, lambda = p.lambda;

  auto w = [beta](const Vec3& x) { return 1.0 / (1.0 + beta * x.squaredNorm()); };
  auto decay = [lambda](double Ep, double E) {
    return std::exp(-(Ep - E) / lambda);
  };

  CrossSectionSet s;
  // sigma_hat_j(x,Ep,E) = c_j w(x) exp(-(Ep-E)/lambda) p_j(Ep,E)
  //   p0 = 1, p1 = 1 + 0.1 E, p2 = 1 + 0.05 E Ep.
  s.sigma0 = [=](const Vec3& x, double Ep, double E) {
    return c0 * w(x) * decay(Ep, E);
  };
  s.sigma1 = [=](const Vec3& x, double Ep, double E) {
    return c1 * w(x) * decay(Ep, E) * (1.0 + 0.1 * E);
  };
  s.sigma2 = [=](const Vec3& x, double Ep, double E) {
    return c2 * w(x) * decay(Ep, E) * (1.0 + 0.05 * E * Ep);
  };
  s.dsigma1_dEp = [=](const Vec3& x, double Ep, double E) {
    return c1 * w(x) * decay(Ep, E) * (-(1.0 + 0.1 * E) / lambda);
  };
  s.dsigma2_dEp = [=](const Vec3& x, double Ep, double E) {
    return c2 * w(x) * decay(Ep, E) *
           (-(1.0 + 0.05 * E * Ep) / lambda + 0.05 * E);
  };
  s.dsigma2_dE = [=](const Vec3& x, double Ep, double E) {
    return c2 * w(x) * decay(Ep, E) *
           ((1.0 + 0.05 * E * Ep) / lambda + 0.05 * Ep);
  };

  // Restricted kernels. K1: mildly anisotropic, Gaussian energy coupling;
  // K2: elastic, truncated Legendre expansion; K3: sigma0 restricted to
  // Ep >= E.
  LegendreKernel k1s;
  k1s.g = {1.0, 1.0 / 6.0};  // 1 + t/2 >= 1/2 on [-1,1]
  k1s.space = [=](const Vec3& x) { return 0.5 * c0 * w(x); };
  k1s.energy = [=](double Ep, double E) {
    const double d = (Ep - E) / lambda;
    return std::exp(-d * d);
  };
  s.k1_structure = k1s;
  s.k1 = [k1s](const Vec3& x, const Vec3& wp, const Vec3& wo, double Ep,
               double E) {
    return k1s.space(x) * k1s.energy(Ep, E) * legendre_sum(k1s.g, wp.dot(wo));
  };

  LegendreKernel k2s;
  k2s.g = {1.0, 0.3, 0.1};  // positive combination on [-1,1]
  k2s.space = [=](const Vec3& x) { return 0.8 * c0 * w(x); };
  k2s.energy = [](double /*Ep*/, double E) { return 1.0 / (1.0 + 0.1 * E); };
  s.k2_structure = k2s;
  s.k2 = [k2s](const Vec3& x, const Vec3& wp, const Vec3& wo, double E) {
    return k2s.space(x) * k2s.energy(E, E) * legendre_sum(k2s.g, wp.dot(wo));
  };

  s.sigma3 = [=](const Vec3& x, double Ep, double E) {
    if (Ep < E) return 0.0;
    return c0 * w(x) * decay(Ep, E);
  };

  const double Sigma_c = p.Sigma;
  s.Sigma = [Sigma_c](const Vec3&, const Vec3&, double) { return Sigma_c; };

  s.M1 = p.M1;
  s.M2 = p.M2;
  return s;
}

SchurEstimate estimate_schur(const CrossSectionSet& xs, double radius,
                             double E0, double Em, int samples) {
  SchurEstimate est;
  sph::SphereQuadrature sq{12, 24};
  const int ne = 24;
  const auto& er = quad::gauss_legendre(ne);

  auto energy_int = [&](const std::function<double(double)>& f) {
    double acc = 0.0;
    for (int i = 0; i < ne; ++i) {
      const double E = 0.5 * (E0 + Em) + 0.5 * (Em - E0) * er.nodes[i];
      acc += 0.5 * (Em - E0) * er.weights[i] * f(E);
    }
    return acc;
  };

  for (int ix = 0; ix < samples; ++ix) {
    const Vec3 x(radius * (ix + 0.5) / samples, 0.0, 0.0);
    for (int ie = 0; ie <= samples; ++ie) {
      const double E = E0 + (Em - E0) * ie / samples;
      const Vec3 wo(0.0, std::sin(0.3 * ie), std::cos(0.3 * ie));
      const Vec3 w = wo.normalized();

      auto k1_row = sq.integrate([&](const Vec3& wp) {
        return energy_int([&](double Ep) { return xs.k1(x, wp, w, Ep, E); });
      });
      auto k1_col = sq.integrate([&](const Vec3& wp) {
        return energy_int([&](double Ep) { return xs.k1(x, w, wp, E, Ep); });
      });
      est.k1_row = std::max(est.k1_row, k1_row);
      est.k1_col = std::max(est.k1_col, k1_col);

      auto k2_row =
          sq.integrate([&](const Vec3& wp) { return xs.k2(x, wp, w, E); });
      auto k2_col =
          sq.integrate([&](const Vec3& wp) { return xs.k2(x, w, wp, E); });
      est.k2_row = std::max(est.k2_row, k2_row);
      est.k2_col = std::max(est.k2_col, k2_col);

      // sigma3 rows/columns are 1-D energy integrals (times the 2 pi circle
      // measure).
      const double two_pi = 2.0 * std::numbers::pi;
      est.k3_row = std::max(
          est.k3_row, two_pi * energy_int([&](double Ep) {
            return xs.sigma3(x, Ep, E);
          }));
      est.k3_col = std::max(
          est.k3_col, two_pi * energy_int([&](double Ep) {
            return xs.sigma3(x, E, Ep);
          }));
    }
  }
  return est;
}

}  // namespace hsbte::xs
