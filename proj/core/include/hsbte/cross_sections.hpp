#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hsbte/sphere.hpp"

namespace hsbte::xs {

using sph::Vec3;

/// Separable angular structure w(x) * rho * sum_l g_l (2l+1)/(4pi) P_l(w.w');
/// enables the Funk-Hecke fast path for pure-harmonic fields.
struct LegendreKernel {
  std::vector<double> g;                             // coefficient per degree
  std::function<double(const Vec3&)> space;          // w(x)
  std::function<double(double, double)> energy;      // rho(Ep, E); K2 ignores Ep
};

/// Cross-section bundle for the Moller-type collision operator.
///
/// sigma0/1/2 are the singular-family coefficients sigma_hat_j(x, Ep, E);
/// the partials listed are the ones the refined transport operator and the
/// formal adjoints consume. The restricted operator K_r = K1 + K2 + K3 uses
/// k1 (angle-energy kernel), k2 (elastic, diagonal in E) and sigma3
/// (circle-form kernel, supported on Ep >= E). Sigma is the total
/// cross-section.
struct CrossSectionSet {
  using SigmaHat = std::function<double(const Vec3&, double, double)>;

  SigmaHat sigma0, sigma1, sigma2;
  SigmaHat dsigma1_dEp;
  SigmaHat dsigma2_dEp, dsigma2_dE;

  // K1 kernel sigma^1(x, wp, w, Ep, E) and K2 kernel sigma^2(x, wp, w, E).
  std::function<double(const Vec3&, const Vec3&, const Vec3&, double, double)>
      k1;
  std::function<double(const Vec3&, const Vec3&, const Vec3&, double)> k2;
  // Structure hints; present for the built-in families.
  std::optional<LegendreKernel> k1_structure;
  std::optional<LegendreKernel> k2_structure;

  SigmaHat sigma3;  // sigma_hat^3(x, Ep, E); zero for Ep < E

  std::function<double(const Vec3&, const Vec3&, double)> Sigma;

  double M1 = 0.0;  // declared Schur row bound
  double M2 = 0.0;  // declared Schur column bound
};

/// Parameters of the built-in synthetic families. Measured physical
/// coefficients live in external data; everything here is parametric.
struct FamilyParams {
  double c0 = 0.4;
  double c1 = 0.3;
  double c2 = 0.5;
  double beta = 0.15;    // spatial falloff 1/(1+beta |x|^2)
  double lambda = 1.5;   // energy-transfer decay scale
  double Sigma = 1.0;    // constant total cross-section
  double M1 = 50.0;      // declared Schur bounds
  double M2 = 50.0;
};

/// Families: "smooth" (default; all kernels positive, C^infinity).
/// Throws on unknown id or non-positive scale parameters.
CrossSectionSet builtin_xs(const std::string& family_id,
                           const FamilyParams& params);

/// Numerically estimated Schur row/column integrals of the restricted
/// kernels, maximised over a sample grid of (x, omega, E).
struct SchurEstimate {
  double k1_row = 0, k1_col = 0;
  double k2_row = 0, k2_col = 0;
  double k3_row = 0, k3_col = 0;
  double row_total() const { return k1_row + k2_row + k3_row; }
  double col_total() const { return k1_col + k2_col + k3_col; }
};
SchurEstimate estimate_schur(const CrossSectionSet& xs, double radius,
                             double E0, double Em, int samples = 5);

}  // namespace hsbte::xs
