#include "hsbte/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace hsbte::fld {

Vec3 TestField::grad_S(const Vec3& x, const Vec3& omega, double E) const {
  const Vec3 g = omega_grad(x, omega, E);
  return g - omega.dot(g) * omega;
}

double TestField::laplace_S(const Vec3& x, const Vec3& omega, double E) const {
  const Mat3 H = omega_hess(x, omega, E);
  const Vec3 g = omega_grad(x, omega, E);
  return H.trace() - omega.dot(H * omega) - 2.0 * omega.dot(g);
}

TestField TestField::dE_view() const {
  if (denergy) return *denergy;
  constexpr double h = 1e-5;
  TestField v = *this;
  v.id = id + "'";
  v.value = dE;
  v.dE = d2E;
  v.d2E = {};
  const auto og = omega_grad;
  const auto oh = omega_hess;
  v.omega_grad = [og](const Vec3& x, const Vec3& w, double E) -> Vec3 {
    return (og(x, w, E + h) - og(x, w, E - h)) / (2.0 * h);
  };
  v.omega_hess = [oh](const Vec3& x, const Vec3& w, double E) -> Mat3 {
    return (oh(x, w, E + h) - oh(x, w, E - h)) / (2.0 * h);
  };
  return v;
}

TestField field_from_callable(
    std::string id, std::function<double(const Vec3&, const Vec3&, double)> f,
    TestField::Vanishing vanishing) {
  constexpr double h = 1e-5;
  TestField t;
  t.id = std::move(id);
  t.value = f;
  t.vanishing = vanishing;
  t.grad_x = [f](const Vec3& x, const Vec3& w, double E) -> Vec3 {
    Vec3 g;
    for (int i = 0; i < 3; ++i) {
      Vec3 xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      g[i] = (f(xp, w, E) - f(xm, w, E)) / (2 * h);
    }
    return g;
  };
  t.dE = [f](const Vec3& x, const Vec3& w, double E) {
    return (f(x, w, E + h) - f(x, w, E - h)) / (2 * h);
  };
  t.d2E = [f](const Vec3& x, const Vec3& w, double E) {
    return (f(x, w, E + h) - 2.0 * f(x, w, E) + f(x, w, E - h)) / (h * h);
  };
  t.omega_grad = [f](const Vec3& x, const Vec3& w, double E) -> Vec3 {
    Vec3 g;
    for (int i = 0; i < 3; ++i) {
      Vec3 wp = w, wm = w;
      wp[i] += h;
      wm[i] -= h;
      g[i] = (f(x, wp.normalized(), E) - f(x, wm.normalized(), E)) / (2 * h);
    }
    return g;
  };
  t.omega_hess = [t](const Vec3& x, const Vec3& w, double E) -> Mat3 {
    Mat3 H;
    for (int i = 0; i < 3; ++i) {
      Vec3 wp = w, wm = w;
      wp[i] += h;
      wm[i] -= h;
      const Vec3 gp = t.omega_grad(x, wp.normalized(), E);
      const Vec3 gm = t.omega_grad(x, wm.normalized(), E);
      H.col(i) = (gp - gm) / (2 * h);
    }
    return 0.5 * (H + H.transpose());
  };
  return t;
}

namespace {

struct SpatialFactor {
  std::string id;
  std::function<double(const Vec3&)> a;
  std::function<Vec3(const Vec3&)> grad;
};

struct AngularFactor {
  std::string id;
  int degree;
  std::function<double(const Vec3&)> Y;
  std::function<Vec3(const Vec3&)> grad;
  std::function<Mat3(const Vec3&)> hess;
};

struct EnergyFactor {
  std::string id;
  TestField::Vanishing vanishing;
  std::function<double(double)> c;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
};

std::vector<SpatialFactor> spatial_factors() {
  return {
      {"a0", [](const Vec3&) { return 1.0; },
       [](const Vec3&) { return Vec3::Zero().eval(); }},
      {"a1", [](const Vec3& x) { return x[0]; },
       [](const Vec3&) { return Vec3(1, 0, 0); }},
      {"a2", [](const Vec3& x) { return 1.0 - x.squaredNorm(); },
       [](const Vec3& x) { return Vec3(-2.0 * x); }},
  };
}

std::vector<AngularFactor> angular_factors() {
  Mat3 h22 = Mat3::Zero();
  h22(0, 0) = 2.0;
  h22(1, 1) = -2.0;
  return {
      {"Y00", 0, [](const Vec3&) { return 1.0; },
       [](const Vec3&) { return Vec3::Zero().eval(); },
       [](const Vec3&) { return Mat3::Zero().eval(); }},
      {"Y10", 1, [](const Vec3& w) { return w[2]; },
       [](const Vec3&) { return Vec3(0, 0, 1); },
       [](const Vec3&) { return Mat3::Zero().eval(); }},
      {"Y22", 2, [](const Vec3& w) { return w[0] * w[0] - w[1] * w[1]; },
       [](const Vec3& w) { return Vec3(2.0 * w[0], -2.0 * w[1], 0.0); },
       [h22](const Vec3&) { return h22; }},
  };
}

std::vector<EnergyFactor> energy_factors(double E0, double Em) {
  auto trial = TestField::Vanishing::kAtEm;
  auto test = TestField::Vanishing::kAtE0;
  return {
      {"cm1", trial, [Em](double E) { return Em - E; },
       [](double) { return -1.0; }, [](double) { return 0.0; }},
      {"cm2", trial, [Em](double E) { return (Em - E) * (Em - E); },
       [Em](double E) { return -2.0 * (Em - E); }, [](double) { return 2.0; }},
      {"cx", trial, [E0, Em](double E) { return (E - E0) * (Em - E); },
       [E0, Em](double E) { return Em + E0 - 2.0 * E; },
       [](double) { return -2.0; }},
      {"cp1", test, [E0](double E) { return E - E0; },
       [](double) { return 1.0; }, [](double) { return 0.0; }},
      {"cp2", test, [E0](double E) { return (E - E0) * (E - E0); },
       [E0](double E) { return 2.0 * (E - E0); }, [](double) { return 2.0; }},
  };
}

TestField assemble(const SpatialFactor& a, const AngularFactor& Y,
                   const std::function<double(double)>& c,
                   const std::function<double(double)>& d1,
                   const std::function<double(double)>& d2) {
  TestField f;
  f.harmonic_degree = Y.degree;
  f.value = [=](const Vec3& x, const Vec3& w, double E) {
    return a.a(x) * Y.Y(w) * c(E);
  };
  f.grad_x = [=](const Vec3& x, const Vec3& w, double E) -> Vec3 {
    return a.grad(x) * (Y.Y(w) * c(E));
  };
  f.dE = [=](const Vec3& x, const Vec3& w, double E) {
    return a.a(x) * Y.Y(w) * d1(E);
  };
  f.d2E = [=](const Vec3& x, const Vec3& w, double E) {
    return a.a(x) * Y.Y(w) * d2(E);
  };
  f.omega_grad = [=](const Vec3& x, const Vec3& w, double E) -> Vec3 {
    return Y.grad(w) * (a.a(x) * c(E));
  };
  f.omega_hess = [=](const Vec3& x, const Vec3& w, double E) -> Mat3 {
    return Y.hess(w) * (a.a(x) * c(E));
  };
  return f;
}

TestField make_separable(const SpatialFactor& a, const AngularFactor& Y,
                         const EnergyFactor& c) {
  TestField f = assemble(a, Y, c.c, c.d1, c.d2);
  f.id = a.id + "*" + Y.id + "*" + c.id;
  f.vanishing = c.vanishing;
  auto zero = [](double) { return 0.0; };
  auto d = std::make_shared<TestField>(assemble(a, Y, c.d1, c.d2, zero));
  d->id = f.id + "'";
  f.denergy = std::move(d);
  return f;
}

}  // namespace

std::vector<TestField> builtin_fields(double E0, double Em) {
  std::vector<TestField> out;
  for (const auto& a : spatial_factors())
    for (const auto& Y : angular_factors())
      for (const auto& c : energy_factors(E0, Em))
        out.push_back(make_separable(a, Y, c));
  return out;
}

TestField field_by_id(const std::string& id, double E0, double Em) {
  for (auto& f : builtin_fields(E0, Em))
    if (f.id == id) return f;
  throw std::invalid_argument("unknown field id '" + id + "'");
}

namespace {
TestField uniform_impl(double value) {
  TestField f;
  f.id = "uniform";
  f.harmonic_degree = 0;
  f.value = [value](const Vec3&, const Vec3&, double) { return value; };
  f.grad_x = [](const Vec3&, const Vec3&, double) {
    return Vec3::Zero().eval();
  };
  f.dE = [](const Vec3&, const Vec3&, double) { return 0.0; };
  f.d2E = [](const Vec3&, const Vec3&, double) { return 0.0; };
  f.omega_grad = [](const Vec3&, const Vec3&, double) {
    return Vec3::Zero().eval();
  };
  f.omega_hess = [](const Vec3&, const Vec3&, double) {
    return Mat3::Zero().eval();
  };
  return f;
}
}  // namespace

TestField uniform_field(double value) {
  TestField f = uniform_impl(value);
  f.denergy = std::make_shared<TestField>(uniform_impl(0.0));
  return f;
}

TestField linear_combination(double alpha, const TestField& f, double beta,
                             const TestField& g) {
  TestField h;
  h.id = "(" + std::to_string(alpha) + "*" + f.id + "+" +
         std::to_string(beta) + "*" + g.id + ")";
  if (f.harmonic_degree && g.harmonic_degree &&
      *f.harmonic_degree == *g.harmonic_degree)
    h.harmonic_degree = f.harmonic_degree;
  if (f.vanishing == g.vanishing) h.vanishing = f.vanishing;
  h.value = [=](const Vec3& x, const Vec3& w, double E) {
    return alpha * f.value(x, w, E) + beta * g.value(x, w, E);
  };
  h.grad_x = [=](const Vec3& x, const Vec3& w, double E) -> Vec3 {
    return alpha * f.grad_x(x, w, E) + beta * g.grad_x(x, w, E);
  };
  h.dE = [=](const Vec3& x, const Vec3& w, double E) {
    return alpha * f.dE(x, w, E) + beta * g.dE(x, w, E);
  };
  h.d2E = [=](const Vec3& x, const Vec3& w, double E) {
    return alpha * f.d2E(x, w, E) + beta * g.d2E(x, w, E);
  };
  h.omega_grad = [=](const Vec3& x, const Vec3& w, double E) -> Vec3 {
    return alpha * f.omega_grad(x, w, E) + beta * g.omega_grad(x, w, E);
  };
  h.omega_hess = [=](const Vec3& x, const Vec3& w, double E) -> Mat3 {
    return alpha * f.omega_hess(x, w, E) + beta * g.omega_hess(x, w, E);
  };
  if (f.denergy && g.denergy)
    h.denergy = std::make_shared<TestField>(
        linear_combination(alpha, *f.denergy, beta, *g.denergy));
  return h;
}

}  // namespace hsbte::fld
