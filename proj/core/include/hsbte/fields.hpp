#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hsbte/sphere.hpp"

namespace hsbte::fld {

using sph::Mat3;
using sph::Vec3;

/// Smooth phase-space function psi(x, omega, E) with the analytic
/// derivatives the operators consume. omega_grad / omega_hess are the
/// ambient derivatives of the angular dependence; grad_S and laplace_S are
/// derived from them, which keeps every angular formula pole-safe.
///
/// harmonic_degree is set when the angular factor is a single spherical
/// harmonic of that degree; circle integrals then collapse to closed form
/// through the mean-value property (circle average of a degree-l harmonic
/// over the cone w.w' = mu equals P_l(mu) times the value at the axis).
struct TestField {
  enum class Vanishing { kNone, kAtE0, kAtEm };

  std::string id;
  std::function<double(const Vec3&, const Vec3&, double)> value;
  std::function<Vec3(const Vec3&, const Vec3&, double)> grad_x;
  std::function<double(const Vec3&, const Vec3&, double)> dE;
  std::function<double(const Vec3&, const Vec3&, double)> d2E;
  std::function<Vec3(const Vec3&, const Vec3&, double)> omega_grad;
  std::function<Mat3(const Vec3&, const Vec3&, double)> omega_hess;
  Vanishing vanishing = Vanishing::kNone;
  std::optional<int> harmonic_degree;

  /// Tangential projection of omega_grad at omega.
  Vec3 grad_S(const Vec3& x, const Vec3& omega, double E) const;
  /// Laplace-Beltrami in omega via the ambient jet (exact for the built-in
  /// catalog).
  double laplace_S(const Vec3& x, const Vec3& omega, double E) const;

  /// d(psi)/dE as a field of its own (same angular structure). Separable
  /// fields carry this exactly; otherwise it falls back to differences.
  TestField dE_view() const;

  std::shared_ptr<const TestField> denergy;  // exact dE field when separable
};

/// Construct a field from a plain callable; all derivative entries are
/// filled with central finite differences of documented step 1e-5. Accuracy
/// is limited accordingly; intended for ad-hoc experiments, not for the
/// operator batteries.
TestField field_from_callable(
    std::string id, std::function<double(const Vec3&, const Vec3&, double)> f,
    TestField::Vanishing vanishing = TestField::Vanishing::kNone);

/// The built-in separable catalog psi = a(x) Y(omega) c(E).
///   a:  a0 = 1, a1 = x1, a2 = 1 - |x|^2
///   Y:  Y00 = 1, Y10 = omega3, Y22 = omega1^2 - omega2^2
///   c (trial, vanish at Em):  cm1 = Em-E, cm2 = (Em-E)^2, cx = (E-E0)(Em-E)
///   c (test, vanish at E0):   cp1 = E-E0, cp2 = (E-E0)^2
/// Ids are "<a>*<Y>*<c>", e.g. "a1*Y10*cm2".
std::vector<TestField> builtin_fields(double E0, double Em);

/// Look up a field by id in the built-in catalog. Throws on unknown id.
TestField field_by_id(const std::string& id, double E0, double Em);

/// Constant field (harmonic degree 0, all derivatives zero).
TestField uniform_field(double value);

/// alpha f + beta g. The harmonic tag survives only when both terms share a
/// degree; otherwise the combination takes the generic (quadrature) paths.
TestField linear_combination(double alpha, const TestField& f, double beta,
                             const TestField& g);

}  // namespace hsbte::fld
