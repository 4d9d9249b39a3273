#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "hsbte/finite_part.hpp"
#include "support/eps_limit.hpp"

using namespace hsbte;

namespace {
const fp::QuadratureSpec kSpec{};  // 16 panels, 12 nodes, grading 2
}

TEST_CASE("upper finite parts match the epsilon-limit oracle") {
  auto f = [](double t) { return std::exp(0.7 * t) + 0.3 * std::sin(2.0 * t); };
  auto df = [](double t) {
    return 0.7 * std::exp(0.7 * t) + 0.6 * std::cos(2.0 * t);
  };
  fp::PfIntegrand d{f, df, 1.0};
  const double x = 0.4, b = 2.1;
  CHECK(fp::pf1_upper(d, x, b, kSpec) ==
        doctest::Approx(test_oracle::pf1_upper_eps(f, x, b)).epsilon(1e-9));
  CHECK(fp::pf2_upper(d, x, b, kSpec) ==
        doctest::Approx(test_oracle::pf2_upper_eps(f, df, x, b)).epsilon(1e-8));
}

TEST_CASE("lower finite parts match the epsilon-limit oracle") {
  auto f = [](double t) { return 1.0 + t * t - 0.2 * std::cos(t); };
  auto df = [](double t) { return 2.0 * t + 0.2 * std::sin(t); };
  fp::PfIntegrand d{f, df, 1.0};
  const double a = 0.2, x = 1.7;
  CHECK(fp::pf1_lower(d, x, a, kSpec) ==
        doctest::Approx(test_oracle::pf1_lower_eps(f, x, a)).epsilon(1e-9));
  CHECK(fp::pf2_lower(d, x, a, kSpec) ==
        doctest::Approx(test_oracle::pf2_lower_eps(f, df, x, a)).epsilon(1e-8));
  // frozen values from the limit definitions
  fp::PfIntegrand one{[](double) { return 1.0; }, [](double) { return 0.0; },
                      1.0};
  CHECK(fp::pf1_lower(one, 1.0, 0.0, kSpec) == doctest::Approx(0.0));
  CHECK(fp::pf2_lower(one, 2.0, 0.0, kSpec) == doctest::Approx(-0.5));
}

TEST_CASE("sqrt substitution recovers accuracy for sqrt-type densities") {
  // f(t) = sqrt(t - x) (1 + t/2): f(x) = 0, so the finite part is the plain
  // integral int_x^b (1 + t/2)/sqrt(t - x) dt = 2(1 + x/2) W + W^3/3 with
  // W = sqrt(b - x). Plain panels converge slowly on the 1/sqrt residual;
  // the u^2 substitution makes it polynomial.
  const double x = 0.5, b = 2.0;
  auto f = [x](double t) { return std::sqrt(t - x) * (1.0 + 0.5 * t); };
  fp::PfIntegrand d{f, {}, 0.5};
  const double W = std::sqrt(b - x);
  const double ref = 2.0 * (1.0 + 0.5 * x) * W + W * W * W / 3.0;
  fp::QuadratureSpec plain{8, 6, 1.5, false};
  fp::QuadratureSpec subst{8, 6, 1.5, true};
  const double err_plain = std::abs(fp::pf1_upper(d, x, b, plain) - ref);
  const double err_subst = std::abs(fp::pf1_upper(d, x, b, subst) - ref);
  CHECK(err_subst < 1e-12);
  CHECK(err_subst < 1e-3 * err_plain);
}

TEST_CASE("invalid inputs are rejected") {
  fp::PfIntegrand one{[](double) { return 1.0; }, {}, 1.0};
  CHECK_THROWS_AS(fp::pf1_upper(one, 2.0, 1.0, kSpec), std::invalid_argument);
  CHECK_THROWS_AS(fp::pf2_upper(one, 0.0, 1.0, kSpec), std::invalid_argument);
  CHECK_THROWS_AS(fp::pf1_lower(one, 0.0, 1.0, kSpec), std::invalid_argument);
  fp::PfIntegrand bad{[](double t) { return 1.0 / (t - 0.5); }, {}, 1.0};
  CHECK_THROWS_AS(fp::pf1_upper(bad, 0.5, 1.0, kSpec), std::domain_error);
  fp::EnergyDensity e{[](double, double) { return 1.0; },
                      [](double, double) { return 0.0; }};
  CHECK_THROWS_AS(fp::pf2_to_pf1_identity(e, 2.0, 2.0, kSpec),
                  std::invalid_argument);
}

TEST_CASE("derivative identity frozen examples") {
  // f(x,t) = 1: d/dx [ ln(b - x) ] = -1/(b - x).
  fp::Pf2Density c1{[](double, double) { return 1.0; },
                    [](double, double) { return 0.0; },
                    [](double, double) { return 0.0; }};
  CHECK(fp::pf1_derivative(c1, 0.0, 1.0, kSpec) == doctest::Approx(-1.0));
  // f(x,t) = t at x = 0.3, b = 1: differentiate pf1 = (b-x) + t-part...
  fp::Pf2Density ft{[](double, double t) { return t; },
                    [](double, double) { return 0.0; },
                    [](double, double) { return 1.0; }};
  const double x = 0.3, b = 1.0, h = 1e-4;
  auto H = [&](double xx) {
    fp::PfIntegrand d{[](double t) { return t; }, {}, 1.0};
    return fp::pf1_upper(d, xx, b, kSpec);
  };
  const double fd = (H(x + h) - H(x - h)) / (2.0 * h);
  CHECK(fp::pf1_derivative(ft, x, b, kSpec) == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("property: pf1 of shifted monomials against closed forms") {
  // p.f. int_x^b (t-x)^n / (t-x) dt = (b-x)^n / n for n >= 1.
  for (int n = 1; n <= 4; ++n) {
    for (double x : {0.1, 1.0, 2.7}) {
      const double b = x + 1.3;
      fp::PfIntegrand d{[x, n](double t) { return std::pow(t - x, n); },
                        {},
                        1.0};
      CHECK(fp::pf1_upper(d, x, b, kSpec) ==
            doctest::Approx(std::pow(b - x, n) / n).epsilon(1e-12));
    }
  }
}
