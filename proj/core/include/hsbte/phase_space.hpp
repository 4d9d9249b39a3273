#pragma once

#include <functional>

#include "hsbte/fields.hpp"
#include "hsbte/sphere.hpp"

namespace hsbte::ps {

using fld::TestField;
using sph::Vec3;

/// Phase space G x S x I with G the open ball of the given radius. E0 > 0
/// is required (the kinematic factor is C^2 only for positive energies).
/// The node counts configure the tensor quadrature used by the inner
/// products and bilinear assemblies.
struct PhaseSpace {
  double radius = 1.0;
  double E0 = 1.0;
  double Em = 4.0;

  // Defaults are exact for the built-in catalog (spherical polynomials of
  // degree <= 4, radial degree <= 7, energy degree <= 4 per factor pair)
  // and resolve the log-endpoint content of the p.f. compositions.
  int n_radial = 4;
  sph::SphereQuadrature sphere{6, 10};        // omega quadrature
  sph::SphereQuadrature surface{4, 8};        // xhat quadrature on dG and G
  int energy_panels_per_half = 4;             // outer energy rule (sqrt-graded)
  int energy_nodes = 5;
  int trace_polar = 8;                        // hemisphere rule for traces
  int trace_azimuth = 16;

  void validate() const;

  /// Escape time t(x, omega): x - t omega lies on the boundary sphere.
  double escape_time(const Vec3& x, const Vec3& omega) const;

  /// Sign of omega . nu(y) for a boundary point y (+1, 0 within 1e-14, -1).
  int boundary_sign(const Vec3& y, const Vec3& omega) const;

  struct BoundarySample {
    Vec3 y;
    Vec3 omega;
    double E;
    int sign;  // sign of omega . nu(y): -1 inflow, +1 outflow, 0 tangential
  };
  BoundarySample classify(const Vec3& y, const Vec3& omega, double E) const {
    return {y, omega, E, boundary_sign(y, omega)};
  }

  /// Integral over the ball G.
  double integrate_space(const std::function<double(const Vec3&)>& f) const;
  /// Integral over G x S x I.
  double integrate_phase(
      const std::function<double(const Vec3&, const Vec3&, double)>& f) const;
  /// Integral over the boundary sphere dG (surface measure).
  double integrate_boundary(const std::function<double(const Vec3&)>& f) const;
  /// Integral over the energy interval with log-tolerant endpoints.
  double integrate_energy(const std::function<double(double)>& f) const;
};

/// <psi, v> over G x S x I.
double l2_inner(const TestField& psi, const TestField& v,
                const PhaseSpace& space);

enum class Side { kMinus, kPlus };

/// Trace pairing int_{Gamma_side} g1 g2 |omega . nu| dsigma domega dE. The
/// omega hemisphere is resolved in a frame aligned with nu(y), so the
/// restriction is exact and the integrand stays smooth.
double trace_inner(
    const std::function<double(const Vec3&, const Vec3&, double)>& g1,
    const std::function<double(const Vec3&, const Vec3&, double)>& g2,
    Side side, const PhaseSpace& space);

/// | <omega.grad_x psi, v> + <omega.grad_x v, psi>
///   - int_{dG x S x I} (omega.nu) psi v |.
double green_residual(const TestField& psi, const TestField& v,
                      const PhaseSpace& space);

}  // namespace hsbte::ps
