#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hsbte::quad {

/// Kahan compensated accumulator. Summation order is the caller's
/// responsibility; with a fixed order the result is reproducible.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

struct GaussRule {
  std::vector<double> nodes;    // on [-1,1], ascending
  std::vector<double> weights;  // sum to 2
};

/// Gauss-Legendre rule with n points, cached per n. Thread-safe after the
/// first call for a given n only if that call has completed; callers that
/// share rules across threads should warm the cache up front.
const GaussRule& gauss_legendre(int n);

/// Panel endpoints for a geometric subdivision of [a,b]. grading >= 1;
/// panels shrink toward `toward` (which must equal a or b). grading == 1
/// gives a uniform mesh.
std::vector<double> graded_breakpoints(double a, double b, int panels,
                                       double grading, double toward);

/// Composite Gauss-Legendre over explicit breakpoints, compensated sum,
/// fixed left-to-right order.
double composite_gauss(const std::function<double(double)>& f,
                       std::span<const double> breakpoints, int nodes_per_panel);

/// Composite Gauss-Legendre on [a,b] with geometric grading toward one end.
double graded_gauss(const std::function<double(double)>& f, double a, double b,
                    int panels, int nodes_per_panel, double grading,
                    double toward);

/// Periodic trapezoid rule for f over [0,2*pi): nodes s_j = 2*pi*j/n.
/// Spectrally accurate for smooth periodic integrands.
double circle_trapezoid(const std::function<double(double)>& f, int n);

/// Integrate f over [a,b] where f may carry an integrable endpoint
/// singularity (log or power < 1) at `singular_end` (== a or b). Substitutes
/// distance = w^2 and grades the panel mesh toward w = 0.
double sqrt_graded_gauss(const std::function<double(double)>& f, double a,
                         double b, int panels, int nodes_per_panel,
                         double grading, double singular_end);

/// Integrate f over [E0, Em] tolerating log-type behaviour at both ends:
/// the interval is halved and each half handled by sqrt_graded_gauss toward
/// its outer endpoint. The workhorse outer rule for energy integrals.
double energy_interval(const std::function<double(double)>& f, double E0,
                       double Em, int panels_per_half, int nodes_per_panel,
                       double grading = 2.0);

struct WeightedNode {
  double t;
  double w;
};

/// Node/weight expansion of the energy_interval rule (same ordering).
std::vector<WeightedNode> energy_interval_nodes(double E0, double Em,
                                                int panels_per_half,
                                                int nodes_per_panel,
                                                double grading = 2.0);

}  // namespace hsbte::quad
