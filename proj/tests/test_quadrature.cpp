#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "hsbte/quadrature.hpp"

using namespace hsbte;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
  for (int n : {2, 5, 8, 16}) {
    const auto& r = quad::gauss_legendre(n);
    double wsum = 0.0;
    for (double w : r.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    // highest exactly integrable even monomial: x^(2n-2)
    const int k = 2 * n - 2;
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      acc += r.weights[i] * std::pow(r.nodes[i], k);
    CHECK(acc == doctest::Approx(2.0 / (k + 1)).epsilon(1e-13));
  }
}

TEST_CASE("graded breakpoints shrink toward the requested end") {
  const auto bp = quad::graded_breakpoints(0.0, 1.0, 5, 2.0, 0.0);
  REQUIRE(bp.size() == 6);
  CHECK(bp.front() == 0.0);
  CHECK(bp.back() == 1.0);
  for (std::size_t i = 2; i < bp.size(); ++i)
    CHECK(bp[i] - bp[i - 1] > bp[i - 1] - bp[i - 2]);
  CHECK_THROWS_AS(quad::graded_breakpoints(0.0, 1.0, 3, 0.5, 0.0),
                  std::invalid_argument);
}

TEST_CASE("energy node expansion reproduces the energy interval rule") {
  auto f = [](double E) { return std::exp(-0.3 * E) * (1.0 + E * E); };
  const double a = 1.0, b = 4.0;
  const double direct = quad::energy_interval(f, a, b, 4, 5);
  const auto nodes = quad::energy_interval_nodes(a, b, 4, 5);
  quad::KahanSum sum;
  for (const auto& n : nodes) sum.add(n.w * f(n.t));
  CHECK(sum.value() == direct);  // identical arithmetic, bit for bit
}

TEST_CASE("circle trapezoid is exact for low trigonometric degrees") {
  auto f = [](double s) { return 1.0 + std::cos(s) + 0.5 * std::sin(2 * s); };
  CHECK(quad::circle_trapezoid(f, 8) ==
        doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("compensated accumulation survives adversarial cancellation") {
  quad::KahanSum s;
  s.add(1.0);
  for (int i = 0; i < 10000; ++i) s.add(1e-16);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-12).epsilon(1e-10));
}
