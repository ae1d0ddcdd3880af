#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pseudopass/common.hpp"

namespace pseudopass {

struct QuadratureSpec {
  int panels = 64;
  int nodes_per_panel = 16;  // Gauss-Legendre order
  double abs_tol = 1e-10;
};

// Nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

// Composite Gauss-Legendre estimate of \int_lo^hi f, panel count doubled
// until two successive refinements agree to abs_tol. Throws NumericError
// carrying the last estimate after 12 refinement rounds.
Complex integrate(const std::function<Complex(double)>& f, double lo, double hi,
                  const QuadratureSpec& q);

// Same scheme for a vector-valued integrand (components share nodes);
// convergence is required per component. `f(tau, out)` fills out[0..dim).
// `initial_panels` lets internal callers start small on short segments;
// the public integrate() always starts at q.panels.
std::vector<Complex> integrate_vec(
    const std::function<void(double, std::span<Complex>)>& f, size_t dim,
    double lo, double hi, const QuadratureSpec& q, int initial_panels = 0);

}  // namespace pseudopass
