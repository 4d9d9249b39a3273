#include "hsbte/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace hsbte::quad {

namespace {

GaussRule compute_gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  // Newton iteration on P_n, Chebyshev-like initial guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      if (n == 1) p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = (n == 1) ? x : p1;
      const double pn1 = (n == 1) ? 1.0 : p0;
      pp = n * (x * pn - pn1) / (x * x - 1.0);
      const double dx = pn / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    // Middle node is exactly 0 for odd n.
    r.nodes[n / 2] = 0.0;
  }
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

std::vector<double> graded_breakpoints(double a, double b, int panels,
                                       double grading, double toward) {
  if (panels < 1) throw std::invalid_argument("graded_breakpoints: panels >= 1");
  if (grading < 1.0)
    throw std::invalid_argument("graded_breakpoints: grading >= 1");
  const double len = b - a;
  std::vector<double> bp(panels + 1);
  if (grading == 1.0) {
    for (int i = 0; i <= panels; ++i) bp[i] = a + len * i / panels;
    bp[panels] = b;
    return bp;
  }
  // Widths w0 * grading^i, smallest adjacent to the graded end.
  double denom = 0.0;
  for (int i = 0; i < panels; ++i) denom += std::pow(grading, i);
  const double w0 = len / denom;
  const bool toward_a = std::abs(toward - a) <= std::abs(toward - b);
  bp[0] = a;
  double acc = a;
  for (int i = 0; i < panels; ++i) {
    const int k = toward_a ? i : (panels - 1 - i);
    acc += w0 * std::pow(grading, k);
    bp[i + 1] = acc;
  }
  bp[panels] = b;
  return bp;
}

double composite_gauss(const std::function<double(double)>& f,
                       std::span<const double> breakpoints,
                       int nodes_per_panel) {
  const GaussRule& rule = gauss_legendre(nodes_per_panel);
  KahanSum sum;
  for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
    const double lo = breakpoints[p], hi = breakpoints[p + 1];
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < nodes_per_panel; ++i)
      sum.add(half * rule.weights[i] * f(mid + half * rule.nodes[i]));
  }
  return sum.value();
}

double graded_gauss(const std::function<double(double)>& f, double a, double b,
                    int panels, int nodes_per_panel, double grading,
                    double toward) {
  if (!(a < b)) {
    if (a == b) return 0.0;
    throw std::invalid_argument("graded_gauss: interval must satisfy a <= b");
  }
  const auto bp = graded_breakpoints(a, b, panels, grading, toward);
  return composite_gauss(f, bp, nodes_per_panel);
}

double circle_trapezoid(const std::function<double(double)>& f, int n) {
  if (n < 1) throw std::invalid_argument("circle_trapezoid: n >= 1");
  const double h = 2.0 * std::numbers::pi / n;
  KahanSum sum;
  for (int j = 0; j < n; ++j) sum.add(f(h * j));
  return h * sum.value();
}

double sqrt_graded_gauss(const std::function<double(double)>& f, double a,
                         double b, int panels, int nodes_per_panel,
                         double grading, double singular_end) {
  if (a == b) return 0.0;
  if (!(a < b)) throw std::invalid_argument("sqrt_graded_gauss: a < b");
  const double len = b - a;
  const double W = std::sqrt(len);
  const bool at_a = std::abs(singular_end - a) <= std::abs(singular_end - b);
  auto g = [&](double w) {
    const double t = at_a ? a + w * w : b - w * w;
    return 2.0 * w * f(t);
  };
  return graded_gauss(g, 0.0, W, panels, nodes_per_panel, grading, 0.0);
}

double energy_interval(const std::function<double(double)>& f, double E0,
                       double Em, int panels_per_half, int nodes_per_panel,
                       double grading) {
  if (E0 == Em) return 0.0;
  const double mid = 0.5 * (E0 + Em);
  const double left = sqrt_graded_gauss(f, E0, mid, panels_per_half,
                                        nodes_per_panel, grading, E0);
  const double right = sqrt_graded_gauss(f, mid, Em, panels_per_half,
                                         nodes_per_panel, grading, Em);
  return left + right;
}

namespace {
void append_sqrt_nodes(std::vector<WeightedNode>& out, double a, double b,
                       int panels, int nodes, double grading,
                       double singular_end) {
  const double W = std::sqrt(b - a);
  const bool at_a = std::abs(singular_end - a) <= std::abs(singular_end - b);
  const auto bp = graded_breakpoints(0.0, W, panels, grading, 0.0);
  const auto& rule = gauss_legendre(nodes);
  for (std::size_t p = 0; p + 1 < bp.size(); ++p) {
    const double mid = 0.5 * (bp[p] + bp[p + 1]);
    const double half = 0.5 * (bp[p + 1] - bp[p]);
    for (int i = 0; i < nodes; ++i) {
      const double w = mid + half * rule.nodes[i];
      const double t = at_a ? a + w * w : b - w * w;
      out.push_back({t, half * rule.weights[i] * 2.0 * w});
    }
  }
}
}  // namespace

std::vector<WeightedNode> energy_interval_nodes(double E0, double Em,
                                                int panels_per_half,
                                                int nodes_per_panel,
                                                double grading) {
  std::vector<WeightedNode> out;
  if (E0 == Em) return out;
  const double mid = 0.5 * (E0 + Em);
  append_sqrt_nodes(out, E0, mid, panels_per_half, nodes_per_panel, grading,
                    E0);
  append_sqrt_nodes(out, mid, Em, panels_per_half, nodes_per_panel, grading,
                    Em);
  return out;
}

}  // namespace hsbte::quad
