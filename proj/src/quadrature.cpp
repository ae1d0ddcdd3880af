#include "pseudopass/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace pseudopass {

namespace {

GaussRule compute_rule(int n) {
  // Legendre roots by Newton iteration from the Chebyshev-like initial guess.
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw ValidationError("gauss_legendre: order must be positive");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

std::vector<Complex> integrate_vec(
    const std::function<void(double, std::span<Complex>)>& f, size_t dim,
    double lo, double hi, const QuadratureSpec& q, int initial_panels) {
  if (!(lo <= hi)) throw ValidationError("integrate: lo > hi");
  if (q.panels < 1 || q.nodes_per_panel < 1 || !(q.abs_tol > 0.0))
    throw ValidationError("integrate: invalid quadrature spec");
  std::vector<Complex> prev(dim, Complex{});
  if (lo == hi) return prev;

  const GaussRule& rule = gauss_legendre(q.nodes_per_panel);
  std::vector<Complex> vals(dim);

  auto estimate = [&](int panels) {
    std::vector<Complex> acc(dim, Complex{});
    const double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      const double a = lo + p * h;
      const double mid = a + 0.5 * h;
      for (int i = 0; i < q.nodes_per_panel; ++i) {
        const double tau = mid + 0.5 * h * rule.nodes[i];
        f(tau, vals);
        const double wgt = 0.5 * h * rule.weights[i];
        for (size_t c = 0; c < dim; ++c) acc[c] += wgt * vals[c];
      }
    }
    return acc;
  };

  int panels = initial_panels > 0 ? initial_panels : q.panels;
  prev = estimate(panels);
  for (int round = 0; round < 12; ++round) {
    panels *= 2;
    std::vector<Complex> next = estimate(panels);
    double diff = 0.0;
    for (size_t c = 0; c < dim; ++c) diff = std::max(diff, std::abs(next[c] - prev[c]));
    prev = std::move(next);
    if (diff < q.abs_tol) return prev;
  }
  throw NumericError("quadrature did not converge within 12 refinement rounds",
                     dim == 1 ? prev[0] : Complex{});
}

Complex integrate(const std::function<Complex(double)>& f, double lo, double hi,
                  const QuadratureSpec& q) {
  auto wrapped = [&f](double tau, std::span<Complex> out) { out[0] = f(tau); };
  return integrate_vec(wrapped, 1, lo, hi, q)[0];
}

}  // namespace pseudopass
