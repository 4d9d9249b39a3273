#include "hsbte/phase_space.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hsbte/quadrature.hpp"

namespace hsbte::ps {

void PhaseSpace::validate() const {
  if (!(radius > 0.0)) throw std::invalid_argument("PhaseSpace: radius > 0");
  if (!(E0 > 0.0)) throw std::invalid_argument("PhaseSpace: E0 > 0 required");
  if (!(Em > E0)) throw std::invalid_argument("PhaseSpace: Em > E0");
}

double PhaseSpace::escape_time(const Vec3& x, const Vec3& omega) const {
  const double xw = x.dot(omega);
  const double disc = xw * xw + radius * radius - x.squaredNorm();
  return xw + std::sqrt(std::max(0.0, disc));
}

int PhaseSpace::boundary_sign(const Vec3& y, const Vec3& omega) const {
  const double d = omega.dot(y) / y.norm();
  if (std::abs(d) <= 1e-14) return 0;
  return d > 0.0 ? 1 : -1;
}

double PhaseSpace::integrate_space(
    const std::function<double(const Vec3&)>& f) const {
  const auto& rr = quad::gauss_legendre(n_radial);
  quad::KahanSum sum;
  for (int i = 0; i < n_radial; ++i) {
    const double rho = 0.5 * radius * (1.0 + rr.nodes[i]);
    const double wrho = 0.5 * radius * rr.weights[i] * rho * rho;
    sum.add(wrho *
            surface.integrate([&](const Vec3& xe) { return f(rho * xe); }));
  }
  return sum.value();
}

double PhaseSpace::integrate_energy(
    const std::function<double(double)>& f) const {
  return quad::energy_interval(f, E0, Em, energy_panels_per_half,
                               energy_nodes);
}

double PhaseSpace::integrate_phase(
    const std::function<double(const Vec3&, const Vec3&, double)>& f) const {
  return integrate_space([&](const Vec3& x) {
    return sphere.integrate([&](const Vec3& w) {
      return integrate_energy([&](double E) { return f(x, w, E); });
    });
  });
}

double PhaseSpace::integrate_boundary(
    const std::function<double(const Vec3&)>& f) const {
  const double r2 = radius * radius;
  return r2 *
         surface.integrate([&](const Vec3& n) { return f(radius * n); });
}

double l2_inner(const TestField& psi, const TestField& v,
                const PhaseSpace& space) {
  return space.integrate_phase([&](const Vec3& x, const Vec3& w, double E) {
    return psi.value(x, w, E) * v.value(x, w, E);
  });
}

double trace_inner(
    const std::function<double(const Vec3&, const Vec3&, double)>& g1,
    const std::function<double(const Vec3&, const Vec3&, double)>& g2,
    Side side, const PhaseSpace& space) {
  // omega = Q(nu) (r cos phi, r sin phi, z) with z restricted to the
  // requested hemisphere; |omega.nu| = |z| exactly.
  const auto& zr = quad::gauss_legendre(space.trace_polar);
  const double hphi = 2.0 * std::numbers::pi / space.trace_azimuth;
  const double zsign = (side == Side::kPlus) ? 1.0 : -1.0;

  return space.integrate_boundary([&](const Vec3& y) {
    const sph::Direction nu(y);
    const sph::Mat3 Q = sph::rotation_to(nu);
    quad::KahanSum sum;
    for (int i = 0; i < space.trace_polar; ++i) {
      const double z = zsign * 0.5 * (1.0 + zr.nodes[i]);
      const double wz = 0.5 * zr.weights[i];
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (int j = 0; j < space.trace_azimuth; ++j) {
        const double phi = hphi * j;
        const Vec3 w = Q * Vec3(r * std::cos(phi), r * std::sin(phi), z);
        const double inner = space.integrate_energy([&](double E) {
          return g1(y, w, E) * g2(y, w, E);
        });
        sum.add(wz * hphi * std::abs(z) * inner);
      }
    }
    return sum.value();
  });
}

double green_residual(const TestField& psi, const TestField& v,
                      const PhaseSpace& space) {
  const double vol = space.integrate_phase(
      [&](const Vec3& x, const Vec3& w, double E) {
        return w.dot(psi.grad_x(x, w, E)) * v.value(x, w, E) +
               w.dot(v.grad_x(x, w, E)) * psi.value(x, w, E);
      });
  const double surf = space.integrate_boundary([&](const Vec3& y) {
    const Vec3 nu = y / y.norm();
    return space.sphere.integrate([&](const Vec3& w) {
      return space.integrate_energy([&](double E) {
        return w.dot(nu) * psi.value(y, w, E) * v.value(y, w, E);
      });
    });
  });
  return std::abs(vol - surf);
}

}  // namespace hsbte::ps
