#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <utility>

namespace hsbte::sph {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Unit vector on S^2. Normalizes on construction; the stored vector
/// satisfies ||v|| = 1 to machine precision.
class Direction {
 public:
  Direction() : v_(0, 0, 1) {}
  explicit Direction(const Vec3& v);
  Direction(double x, double y, double z) : Direction(Vec3(x, y, z)) {}
  const Vec3& vec() const { return v_; }
  double operator[](int i) const { return v_[i]; }

 private:
  Vec3 v_;
};

/// Tangent vector at `base`, stored as coefficients (xi1, xi2) in the
/// canonical frame (Omega1, Omega2) at base.
struct TangentVector {
  Direction base;
  Eigen::Vector2d coeffs;

  Vec3 embedded() const;  // xi1*Omega1 + xi2*Omega2
  double norm() const { return coeffs.norm(); }
};

/// Frame selection policy. Below pole_threshold on omega1^2+omega2^2 the
/// fixed frame (e1, sign(omega3) e2) replaces the coordinate frame, which
/// is singular at the poles. All downstream identities are frame-covariant.
struct FrameAtlas {
  double pole_threshold = 1e-8;
};

/// Canonical tangent frame (Omega1, Omega2) at omega:
///   Omega1 = (-w2, w1, 0)/sqrt(w1^2+w2^2)          (azimuthal)
///   Omega2 = (w1 w3, w2 w3, -(w1^2+w2^2))/sqrt(w1^2+w2^2)  (colatitude)
/// The printed form of Omega1 in the source material is not orthogonal to
/// omega; the azimuthal vector above is the orthonormal correction.
std::pair<Vec3, Vec3> frame(const Direction& omega,
                            const FrameAtlas& atlas = {});

/// Orthogonal matrix with columns (Omega2, Omega1, omega); maps e3 to omega.
Mat3 rotation_to(const Direction& omega, const FrameAtlas& atlas = {});

/// Scattering circle gamma(Ep,E,omega)(s) =
///   R(omega) (sqrt(1-mu^2) cos s, sqrt(1-mu^2) sin s, mu),  mu = mu(Ep,E).
/// For Ep == E returns omega exactly (mu == 1 branch taken analytically).
Vec3 scatter_circle(double Ep, double E, const Direction& omega, double s,
                    const FrameAtlas& atlas = {});

/// d(gamma)/dEp; requires Ep > E strictly (the derivative is singular at
/// Ep == E; callers use the analytic limit formulas there instead).
Vec3 scatter_circle_dEp(double Ep, double E, const Direction& omega, double s,
                        const FrameAtlas& atlas = {});
/// d(gamma)/dE; requires Ep > E strictly.
Vec3 scatter_circle_dE(double Ep, double E, const Direction& omega, double s,
                       const FrameAtlas& atlas = {});

/// Exponential map: cos(||zeta||) omega + sin(||zeta||) zeta/||zeta||;
/// zeta == 0 maps to omega.
Direction exp_map(const Direction& omega, const TangentVector& zeta);

/// Inverse of exp_map. Rejects antipodal pairs. The near-coincident limit
/// is evaluated through the stable half-angle form of arccos.
TangentVector log_map(const Direction& omega, const Direction& omega_p,
                      const FrameAtlas& atlas = {});

/// Scalar field on (a neighbourhood of) S^2 with optional ambient
/// derivatives. grad/hess, when present, are the derivatives of the ambient
/// extension; only their tangential content matters.
struct SphereField {
  std::function<double(const Vec3&)> eval;
  std::function<Vec3(const Vec3&)> grad;  // optional
  std::function<Mat3(const Vec3&)> hess;  // optional
};

/// Tangential projection of the ambient gradient:
///   <grad f, Omega1> Omega1 + <grad f, Omega2> Omega2.
Vec3 surface_gradient(const SphereField& f, const Direction& omega,
                      const FrameAtlas& atlas = {});

/// Laplace-Beltrami of f at omega. Uses the spherical-coordinate expression
/// in a chart rotated so that omega sits on the chart equator (pole-safe).
/// With ambient grad+hess the chart second derivatives are exact; otherwise
/// they come from 6th-order finite differences in the chart parameters.
double laplace_beltrami(const SphereField& f, const Direction& omega);

/// Product quadrature on S^2: Gauss-Legendre in cos(theta) x periodic
/// trapezoid in phi.
struct SphereQuadrature {
  int n_polar = 24;
  int n_azimuth = 48;
  double integrate(const std::function<double(const Vec3&)>& f) const;
  std::vector<std::pair<Vec3, double>> weighted_nodes() const;
};

/// Trapezoid node count for circle integrals in s (periodic => spectral).
inline constexpr int kDefaultCircleNodes = 64;

/// | int_S int_0^2pi psi(gamma(Ep,E,omega)(s)) v(omega) ds domega
///   - int_S' int_0^2pi psi(omega') v(gamma(Ep,E,omega')(s)) ds domega' |.
double circle_sphere_swap_residual(
    const std::function<double(const Vec3&)>& psi,
    const std::function<double(const Vec3&)>& v, double Ep, double E,
    const SphereQuadrature& sq = {}, int circle_nodes = kDefaultCircleNodes);

/// First-order sphere Taylor value f(omega) + <grad_S f(omega), log(omega,
/// omega')> and the exact residual f(omega') - value.
struct Taylor1 {
  double value;
  double residual;
};
Taylor1 sphere_taylor1(const SphereField& f, const Direction& omega,
                       const Direction& omega_p);

}  // namespace hsbte::sph
