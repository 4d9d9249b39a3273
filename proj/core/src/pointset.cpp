#include "hsbte/pointset.hpp"

#include <cmath>
#include <numbers>

namespace hsbte::pts {

double radical_inverse(std::uint64_t n, std::uint32_t base) {
  double inv = 1.0 / base, f = inv, value = 0.0;
  while (n > 0) {
    value += f * static_cast<double>(n % base);
    n /= base;
    f *= inv;
  }
  return value;
}

namespace {
Vec3 sphere_point(double u, double v) {
  const double z = 2.0 * u - 1.0;
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = 2.0 * std::numbers::pi * v;
  return Vec3(r * std::cos(phi), r * std::sin(phi), z);
}
}  // namespace

std::vector<PhasePoint> halton_phase_points(int n, std::uint64_t seed,
                                            double radius, double E_lo,
                                            double E_hi) {
  std::vector<PhasePoint> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t k = seed + 1 + static_cast<std::uint64_t>(i);
    const double rho = radius * std::cbrt(radical_inverse(k, 2));
    const Vec3 xhat = sphere_point(radical_inverse(k, 3),
                                   radical_inverse(k, 5));
    const Vec3 omega = sphere_point(radical_inverse(k, 7),
                                    radical_inverse(k, 11));
    const double E = E_lo + (E_hi - E_lo) * radical_inverse(k, 13);
    out.push_back({rho * xhat, omega, E});
  }
  return out;
}

}  // namespace hsbte::pts
