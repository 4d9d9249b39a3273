#include "hsbte/csda.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hsbte/kinematics.hpp"
#include "hsbte/quadrature.hpp"

namespace hsbte::csda {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cutoff(double E, double kappa, double Em) {
  return std::min(kappa * E, Em);
}

double laplace_block(const TestField& psi, const Vec3& x, const Vec3& omega,
                     double E) {
  return -kPi * kin::mu_dEp(E, E) * psi.laplace_S(x, omega, E);
}
}  // namespace

void KappaConfig::validate() const {
  if (!(kappa > 1.0)) throw std::invalid_argument("KappaConfig: kappa > 1");
  for (double k : sweep)
    if (!(k > 1.0))
      throw std::invalid_argument("KappaConfig: all sweep kappas > 1");
}

SplitK split_K(const TestField& psi, const Vec3& x, const Vec3& omega,
               double E, int order, double kappa, const CollisionContext& ctx) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("split_K: order must be 1 or 2");
  if (!(kappa > 1.0)) throw std::invalid_argument("split_K: kappa > 1");
  const double Em = ctx.space.Em;
  const double Ec = cutoff(E, kappa, Em);
  const auto& sig = (order == 1) ? ctx.xs.sigma1 : ctx.xs.sigma2;

  fp::PfIntegrand g;
  g.eval = [&](double Ep) {
    return sig(x, Ep, E) * coll::circle_average(psi, x, omega, Ep, E, Ep, ctx);
  };
  const TestField dpsi = psi.dE_view();
  if (order == 2) {
    g.eval_deriv = [&, dpsi](double Ep) {
      if (Ep == E) {
        return ctx.xs.dsigma2_dEp(x, E, E) * kTwoPi * psi.value(x, omega, E) +
               ctx.xs.sigma2(x, E, E) *
                   (coll::circle_average_grad_limit_dEp(psi, x, omega, E, E) +
                    kTwoPi * psi.dE(x, omega, E));
      }
      return ctx.xs.dsigma2_dEp(x, Ep, E) *
                 coll::circle_average(psi, x, omega, Ep, E, Ep, ctx) +
             ctx.xs.sigma2(x, Ep, E) *
                 (coll::circle_average_grad_dEp(psi, x, omega, Ep, E, Ep,
                                                ctx) +
                  coll::circle_average(dpsi, x, omega, Ep, E, Ep, ctx));
    };
  }

  SplitK out{};
  out.singular = (order == 1) ? fp::pf1_upper(g, E, Ec, ctx.pf)
                              : fp::pf2_upper(g, E, Ec, ctx.pf);
  if (Ec < Em) {
    out.regular = quad::sqrt_graded_gauss(
        [&](double Ep) {
          const double d = Ep - E;
          const double pow = (order == 1) ? d : d * d;
          return g.eval(Ep) / pow;
        },
        Ec, Em, ctx.kr_energy_panels, ctx.kr_energy_nodes,
        ctx.pf.endpoint_grading, Ec);
  } else {
    out.regular = 0.0;
  }
  return out;
}

double local_K11(const TestField& psi, const Vec3& x, const Vec3& omega,
                 double E, double kappa, const CollisionContext& ctx) {
  const double d = cutoff(E, kappa, ctx.space.Em) - E;
  return kTwoPi * std::log(d) * ctx.xs.sigma1(x, E, E) * psi.value(x, omega, E);
}

double local_K21(const TestField& psi, const Vec3& x, const Vec3& omega,
                 double E, double kappa, const CollisionContext& ctx) {
  const double d = cutoff(E, kappa, ctx.space.Em) - E;
  const double L = std::log(d);
  const double s2 = ctx.xs.sigma2(x, E, E);
  return -kTwoPi / d * s2 * psi.value(x, omega, E) +
         L * s2 * laplace_block(psi, x, omega, E) +
         kTwoPi * s2 * L * psi.dE(x, omega, E) +
         kTwoPi * L * ctx.xs.dsigma2_dEp(x, E, E) * psi.value(x, omega, E);
}

double csda_apply(const TestField& psi, const Vec3& x, const Vec3& omega,
                  double E, double kappa, const CollisionContext& ctx) {
  if (!(kappa > 1.0)) throw std::invalid_argument("csda_apply: kappa > 1");
  const double Em = ctx.space.Em;
  const double d = cutoff(E, kappa, Em) - E;
  if (!(d > 0.0))
    throw std::domain_error("csda_apply: empty cut-off window (E at Em?)");
  const double L = std::log(d);
  const double s2 = ctx.xs.sigma2(x, E, E);
  const double s1 = ctx.xs.sigma1(x, E, E);

  const double S_k = kTwoPi * s2 * L;
  const double Q_k = L * s2 * laplace_block(psi, x, omega, E);
  const double Sigma_k = ctx.xs.Sigma(x, omega, E) + kTwoPi * s2 / d -
                         kTwoPi * L * ctx.xs.dsigma2_dEp(x, E, E) +
                         kTwoPi * L * s1;

  double Kr_k = coll::restricted_apply(psi, x, omega, E, ctx);
  const double Ec = E + d;
  if (Ec < Em) {
    Kr_k += split_K(psi, x, omega, E, 2, kappa, ctx).regular -
            split_K(psi, x, omega, E, 1, kappa, ctx).regular;
  }

  return -S_k * psi.dE(x, omega, E) - Q_k +
         omega.dot(psi.grad_x(x, omega, E)) +
         Sigma_k * psi.value(x, omega, E) - Kr_k;
}

double csda_adjoint_apply(const TestField& v, const Vec3& x, const Vec3& omega,
                          double E, double kappa,
                          const CollisionContext& ctx) {
  if (!(kappa > 1.0))
    throw std::invalid_argument("csda_adjoint_apply: kappa > 1");
  const double E0 = ctx.space.E0, Em = ctx.space.Em;
  const double Ec = cutoff(E, kappa, Em);
  const double d = Ec - E;
  if (!(d > 0.0))
    throw std::domain_error("csda_adjoint_apply: empty cut-off window");
  const double L = std::log(d);
  const double s2 = ctx.xs.sigma2(x, E, E);
  const double s1 = ctx.xs.sigma1(x, E, E);

  const double S_k = kTwoPi * s2 * L;
  const double dd = (kappa * E < Em) ? (kappa - 1.0) : -1.0;  // d'(E)
  const double dS_k =
      kTwoPi * (ctx.xs.dsigma2_dEp(x, E, E) + ctx.xs.dsigma2_dE(x, E, E)) * L +
      kTwoPi * s2 * dd / d;
  const double Q_k = L * s2 * laplace_block(v, x, omega, E);
  const double Sigma_k = ctx.xs.Sigma(x, omega, E) + kTwoPi * s2 / d -
                         kTwoPi * L * ctx.xs.dsigma2_dEp(x, E, E) +
                         kTwoPi * L * s1;

  // Adjoint of the regular truncated pieces: rows E' <= E/kappa.
  double Kr_k_star = coll::restricted_adjoint_apply(v, x, omega, E, ctx);
  const double Etail = E / kappa;
  if (Etail > E0) {
    auto tail = [&](int order) {
      return quad::sqrt_graded_gauss(
          [&](double Ep) {
            const double diff = E - Ep;
            const double pw = (order == 1) ? diff : diff * diff;
            const auto& sig = (order == 1) ? ctx.xs.sigma1 : ctx.xs.sigma2;
            return sig(x, E, Ep) *
                   coll::circle_average(v, x, omega, E, Ep, Ep, ctx) / pw;
          },
          E0, Etail, ctx.kr_energy_panels, ctx.kr_energy_nodes,
          ctx.pf.endpoint_grading, Etail);
    };
    Kr_k_star += tail(2) - tail(1);
  }

  return S_k * v.dE(x, omega, E) - Q_k - omega.dot(v.grad_x(x, omega, E)) +
         (dS_k + Sigma_k) * v.value(x, omega, E) - Kr_k_star;
}

double truncation_error(const TestField& psi, const Vec3& x, const Vec3& omega,
                        double E, double kappa, const CollisionContext& ctx) {
  const double k21 = split_K(psi, x, omega, E, 2, kappa, ctx).singular;
  const double k11 = split_K(psi, x, omega, E, 1, kappa, ctx).singular;
  return -(k21 - local_K21(psi, x, omega, E, kappa, ctx)) +
         (k11 - local_K11(psi, x, omega, E, kappa, ctx));
}

ConvergenceReport convergence_sweep(const TestField& psi,
                                    const CollisionContext& ctx,
                                    const KappaConfig& cfg, int grid_points,
                                    std::uint64_t seed) {
  cfg.validate();
  if (cfg.sweep.size() < 3)
    throw std::invalid_argument(
        "convergence_sweep: need at least 3 kappa values");
  const auto t0 = std::chrono::steady_clock::now();

  const double kmax = *std::max_element(cfg.sweep.begin(), cfg.sweep.end());
  const double E0 = ctx.space.E0, Em = ctx.space.Em;
  // Keep kappa * E <= Em on the grid so the fit sees the unclipped operator.
  const double E_hi = Em / kmax - 0.05 * (Em - E0);
  const double E_lo = E0 + 0.05 * (Em - E0);
  if (!(E_lo < E_hi))
    throw std::invalid_argument("convergence_sweep: empty safe energy band");
  const auto pointset = pts::halton_phase_points(
      grid_points, seed, ctx.space.radius * 0.95, E_lo, E_hi);

  ConvergenceReport report;
  for (double kappa : cfg.sweep) {
    double sup = 0.0;
    quad::KahanSum sq;
    for (const auto& p : pointset) {
      const double err =
          std::abs(truncation_error(psi, p.x, p.omega, p.E, kappa, ctx));
      sup = std::max(sup, err);
      sq.add(err * err);
    }
    const double rms = std::sqrt(sq.value() / pointset.size());
    report.rows.push_back({kappa, sup, rms});
  }

  // Least-squares slope of ln(sup) vs ln(kappa - 1).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& r : report.rows) {
    if (r.sup_error <= 0.0) continue;
    const double lx = std::log(r.kappa - 1.0), ly = std::log(r.sup_error);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  report.fitted_slope =
      (m >= 2) ? (m * sxy - sx * sy) / (m * sxx - sx * sx)
               : std::numeric_limits<double>::quiet_NaN();

  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

}  // namespace hsbte::csda
