#include "hsbte/sphere.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hsbte/kinematics.hpp"
#include "hsbte/quadrature.hpp"

namespace hsbte::sph {

Direction::Direction(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw std::invalid_argument("Direction: zero or non-finite vector");
  v_ = v / n;
}

std::pair<Vec3, Vec3> frame(const Direction& omega, const FrameAtlas& atlas) {
  const Vec3& w = omega.vec();
  const double rho2 = w[0] * w[0] + w[1] * w[1];
  if (rho2 < atlas.pole_threshold) {
    // Fixed frame seeded at e1, projected orthogonal to the actual omega.
    // Matches the analytic frame's limit along phi = 0, so R(e3) is the
    // identity and R(-e3) = diag(-1, 1, -1).
    const double sgn = w[2] >= 0.0 ? 1.0 : -1.0;
    const Vec3 seed = Vec3(1, 0, 0) - w[0] * w;
    const Vec3 o2 = sgn * seed.normalized();
    const Vec3 o1 = w.cross(o2);
    return {o1, o2};
  }
  const double rho = std::sqrt(rho2);
  Vec3 o1(-w[1] / rho, w[0] / rho, 0.0);
  Vec3 o2(w[0] * w[2] / rho, w[1] * w[2] / rho, -rho2 / rho);
  return {o1, o2};
}

Mat3 rotation_to(const Direction& omega, const FrameAtlas& atlas) {
  const auto [o1, o2] = frame(omega, atlas);
  Mat3 R;
  R.col(0) = o2;
  R.col(1) = o1;
  R.col(2) = omega.vec();
  return R;
}

Vec3 TangentVector::embedded() const {
  const auto [o1, o2] = frame(base);
  return coeffs[0] * o1 + coeffs[1] * o2;
}

Vec3 scatter_circle(double Ep, double E, const Direction& omega, double s,
                    const FrameAtlas& atlas) {
  if (Ep == E) return omega.vec();
  const double m = kin::mu(Ep, E);
  if (!(m >= -1.0 && m <= 1.0))
    throw std::domain_error("scatter_circle: invalid kinematics (mu out of [-1,1])");
  const double r = kin::sqrt_one_minus_mu_sq(Ep, E);
  return rotation_to(omega, atlas) * Vec3(r * std::cos(s), r * std::sin(s), m);
}

namespace {
Vec3 circle_partial(double Ep, double E, const Direction& omega, double s,
                    double dmu, const FrameAtlas& atlas) {
  if (!(Ep > E))
    throw std::invalid_argument(
        "scatter_circle derivative: requires Ep > E (singular at Ep == E)");
  const double m = kin::mu(Ep, E);
  const double r = kin::sqrt_one_minus_mu_sq(Ep, E);
  const double c = -dmu * m / r;
  return rotation_to(omega, atlas) * Vec3(c * std::cos(s), c * std::sin(s), dmu);
}
}  // namespace

Vec3 scatter_circle_dEp(double Ep, double E, const Direction& omega, double s,
                        const FrameAtlas& atlas) {
  return circle_partial(Ep, E, omega, s, kin::mu_dEp(Ep, E), atlas);
}

Vec3 scatter_circle_dE(double Ep, double E, const Direction& omega, double s,
                       const FrameAtlas& atlas) {
  return circle_partial(Ep, E, omega, s, kin::mu_dE(Ep, E), atlas);
}

Direction exp_map(const Direction& omega, const TangentVector& zeta) {
  const double n = zeta.norm();
  if (n == 0.0) return omega;
  const Vec3 z = zeta.embedded();
  return Direction(std::cos(n) * omega.vec() + std::sin(n) * (z / n));
}

TangentVector log_map(const Direction& omega, const Direction& omega_p,
                      const FrameAtlas& atlas) {
  const double c = std::clamp(omega.vec().dot(omega_p.vec()), -1.0, 1.0);
  if (c <= -1.0 + 1e-12)
    throw std::domain_error("log_map: antipodal input");
  // theta/sin(theta) via the half-angle form, stable as c -> 1.
  const double onemc = 1.0 - c;
  double factor;
  if (onemc == 0.0) {
    factor = 1.0;
  } else {
    const double theta = 2.0 * std::asin(std::sqrt(0.5 * onemc));
    const double sin_theta = std::sqrt(onemc * (1.0 + c));
    factor = theta / sin_theta;
  }
  const Vec3 z = factor * (omega_p.vec() - c * omega.vec());
  const auto [o1, o2] = frame(omega, atlas);
  TangentVector t;
  t.base = omega;
  t.coeffs = Eigen::Vector2d(z.dot(o1), z.dot(o2));
  return t;
}

Vec3 surface_gradient(const SphereField& f, const Direction& omega,
                      const FrameAtlas& atlas) {
  if (!f.grad)
    throw std::invalid_argument("surface_gradient: field has no gradient");
  const Vec3 g = f.grad(omega.vec());
  const auto [o1, o2] = frame(omega, atlas);
  return g.dot(o1) * o1 + g.dot(o2) * o2;
}

namespace {

// Chart second derivatives by 6th-order central differences in (phi, theta)
// of the rotated parametrization; used when the field has no Hessian.
double laplace_fd(const SphereField& f, const Direction& omega) {
  // Rotate so omega sits at (phi, theta) = (0, pi/2) of the chart.
  const auto [t1, t2] = frame(omega);
  const Vec3 w = omega.vec();
  auto chart = [&](double phi, double theta) {
    // u(phi,theta) = cos(phi) sin(theta) w + sin(phi) sin(theta) t1
    //                - cos(theta) t2  maps (0, pi/2) to w.
    return Vec3(std::cos(phi) * std::sin(theta) * w +
                std::sin(phi) * std::sin(theta) * t1 -
                std::cos(theta) * t2);
  };
  static const double c[7] = {2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0};
  const double h = 0.035;
  double dpp = 0.0, dtt = 0.0;
  for (int k = -3; k <= 3; ++k) {
    dpp += c[k + 3] * f.eval(chart(k * h, std::numbers::pi / 2));
    dtt += c[k + 3] * f.eval(chart(0.0, std::numbers::pi / 2 + k * h));
  }
  const double scale = 180.0 * h * h;
  // At theta = pi/2 the metric terms collapse: Lap = psi_tt + psi_pp.
  return dpp / scale + dtt / scale;
}

}  // namespace

double laplace_beltrami(const SphereField& f, const Direction& omega) {
  if (!f.eval) throw std::invalid_argument("laplace_beltrami: missing eval");
  if (f.grad && f.hess) {
    // Chart second derivatives of the rotated parametrization, exact via the
    // ambient jet: at the chart equator the expression reduces to
    //   t1' H t1 + t2' H t2 - 2 w . grad f.
    const auto [t1, t2] = frame(omega);
    const Vec3 w = omega.vec();
    const Mat3 H = f.hess(w);
    const Vec3 g = f.grad(w);
    return t1.dot(H * t1) + t2.dot(H * t2) - 2.0 * w.dot(g);
  }
  return laplace_fd(f, omega);
}

double SphereQuadrature::integrate(
    const std::function<double(const Vec3&)>& f) const {
  const auto& rule = quad::gauss_legendre(n_polar);
  const double hphi = 2.0 * std::numbers::pi / n_azimuth;
  quad::KahanSum sum;
  for (int i = 0; i < n_polar; ++i) {
    const double z = rule.nodes[i];
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < n_azimuth; ++j) {
      const double phi = hphi * j;
      const Vec3 w(r * std::cos(phi), r * std::sin(phi), z);
      sum.add(rule.weights[i] * hphi * f(w));
    }
  }
  return sum.value();
}

std::vector<std::pair<Vec3, double>> SphereQuadrature::weighted_nodes() const {
  const auto& rule = quad::gauss_legendre(n_polar);
  const double hphi = 2.0 * std::numbers::pi / n_azimuth;
  std::vector<std::pair<Vec3, double>> out;
  out.reserve(static_cast<std::size_t>(n_polar) * n_azimuth);
  for (int i = 0; i < n_polar; ++i) {
    const double z = rule.nodes[i];
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < n_azimuth; ++j) {
      const double phi = hphi * j;
      out.emplace_back(Vec3(r * std::cos(phi), r * std::sin(phi), z),
                       rule.weights[i] * hphi);
    }
  }
  return out;
}

double circle_sphere_swap_residual(
    const std::function<double(const Vec3&)>& psi,
    const std::function<double(const Vec3&)>& v, double Ep, double E,
    const SphereQuadrature& sq, int circle_nodes) {
  auto lhs_f = [&](const Vec3& w) {
    const Direction om(w);
    auto g = [&](double s) { return psi(scatter_circle(Ep, E, om, s)); };
    return quad::circle_trapezoid(g, circle_nodes) * v(w);
  };
  auto rhs_f = [&](const Vec3& wp) {
    const Direction om(wp);
    auto g = [&](double s) { return v(scatter_circle(Ep, E, om, s)); };
    return quad::circle_trapezoid(g, circle_nodes) * psi(wp);
  };
  return std::abs(sq.integrate(lhs_f) - sq.integrate(rhs_f));
}

Taylor1 sphere_taylor1(const SphereField& f, const Direction& omega,
                       const Direction& omega_p) {
  const TangentVector zeta = log_map(omega, omega_p);
  const Vec3 gs = surface_gradient(f, omega);
  const double value = f.eval(omega.vec()) + gs.dot(zeta.embedded());
  return {value, f.eval(omega_p.vec()) - value};
}

}  // namespace hsbte::sph
