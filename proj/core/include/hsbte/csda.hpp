#pragma once

#include <utility>
#include <vector>

#include "hsbte/pointset.hpp"
#include "hsbte/transport.hpp"

namespace hsbte::csda {

using coll::CollisionContext;
using fld::TestField;
using sph::Vec3;

/// Cut-off parameters. All kappa > 1. Where kappa E exceeds Em the singular
/// window clips to [E, Em] and the regular piece is empty, which preserves
/// the split additivity identically.
struct KappaConfig {
  double kappa = 1.125;
  std::vector<double> sweep = {1.5, 1.25, 1.125, 1.0625, 1.03125, 1.015625};
  void validate() const;
};

struct SplitK {
  double singular;  // K_{j,1,kappa}: p.f. over [E, min(kappa E, Em)]
  double regular;   // K_{j,0,kappa}: ordinary integral over the tail
};

/// Split of K_j psi at the cut-off kappa. singular + regular reproduces the
/// untruncated hadamard_collision.
SplitK split_K(const TestField& psi, const Vec3& x, const Vec3& omega,
               double E, int order, double kappa, const CollisionContext& ctx);

/// Local Taylor approximations of the singular pieces:
///   K~_{1,1,kappa} = 2 pi ln(d) sigma1(x,E,E) psi
///   K~_{2,1,kappa} = -2 pi/d sigma2 psi + ln(d) sigma2 (A psi)
///                    + 2 pi sigma2 ln(d) dE psi + 2 pi ln(d) dEp sigma2 psi
/// with d = min(kappa E, Em) - E and A the Laplace-Beltrami block.
double local_K11(const TestField& psi, const Vec3& x, const Vec3& omega,
                 double E, double kappa, const CollisionContext& ctx);
double local_K21(const TestField& psi, const Vec3& x, const Vec3& omega,
                 double E, double kappa, const CollisionContext& ctx);

/// T_kappa psi = -S_k dE psi - Q_k psi + omega.grad_x psi + Sigma_k psi
///               - K_{r,kappa} psi.
double csda_apply(const TestField& psi, const Vec3& x, const Vec3& omega,
                  double E, double kappa, const CollisionContext& ctx);

/// Formal adjoint T_kappa* v = S_k dE v - Q_k v - omega.grad_x v
///   + (dE S_k + Sigma_k) v - K_{r,kappa}* v.
double csda_adjoint_apply(const TestField& v, const Vec3& x, const Vec3& omega,
                          double E, double kappa, const CollisionContext& ctx);

/// (T - T_kappa) psi assembled as the residual of the two approximated
/// pieces; exactly zero when sigma1 = sigma2 = 0.
double truncation_error(const TestField& psi, const Vec3& x, const Vec3& omega,
                        double E, double kappa, const CollisionContext& ctx);

struct ConvergenceRow {
  double kappa;
  double sup_error;
  double l2_error;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  double fitted_slope = 0.0;  // log-log slope vs (kappa - 1); NaN if degenerate
  double runtime_seconds = 0.0;
};

/// Sup and RMS errors of T psi - T_kappa psi over a fixed phase grid for
/// each kappa in the sweep, plus the least-squares log-log slope.
/// The grid keeps kappa_max * E <= Em so no clipping noise enters the fit.
ConvergenceReport convergence_sweep(const TestField& psi,
                                    const CollisionContext& ctx,
                                    const KappaConfig& cfg, int grid_points,
                                    std::uint64_t seed);

}  // namespace hsbte::csda
