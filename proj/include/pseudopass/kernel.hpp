#pragma once

#include <span>
#include <vector>

#include "pseudopass/common.hpp"
#include "pseudopass/quadrature.hpp"
#include "pseudopass/testfn.hpp"

namespace pseudopass {

// coeff * delta_{location}^{(order)}
struct DiracTerm {
  Complex coeff;
  double location = 0.0;
  int order = 0;
};

// t -> p(t) e^{rate t} on [start, infty), zero before start.
// poly holds the coefficients of 1, t, t^2, ... (ascending).
struct ExpPolyTerm {
  std::vector<Complex> poly;
  Complex rate;
  double start = 0.0;

  Complex value_at(double t) const;  // pointwise value (0 for t < start)
  int degree() const { return static_cast<int>(poly.size()) - 1; }
};

// A defining distribution: a finite Dirac-derivative comb plus finitely many
// exponential-polynomial tails. The class is closed under addition, scaling,
// differentiation and (right-sided) convolution, and every member has a
// closed-form Laplace transform.
struct Kernel {
  std::vector<DiracTerm> dirac;
  std::vector<ExpPolyTerm> regular;

  int max_dirac_order() const;
  bool is_zero() const { return dirac.empty() && regular.empty(); }
  // False when some tail grows exponentially (Re rate > 0); such kernels are
  // outside the tempered class and their transforms only exist where the
  // integrals converge.
  bool is_tempered() const;
};

// Validates, merges duplicate Dirac terms (exact equality on location and
// order) and duplicate tails (exact equality on rate and start), drops
// vanished terms and sorts into canonical order.
Kernel make_kernel(std::vector<DiracTerm> diracs, std::vector<ExpPolyTerm> regs,
                   int max_order = kDefaultMaxDiracOrder);

Kernel add(const Kernel& a, const Kernel& b);
Kernel scale(const Kernel& k, Complex factor);

// Distributional derivative; jump discontinuities of the tails spawn Dirac
// terms at the support starts.
Kernel derivative(const Kernel& k);

// Closed-form convolution. Every representable kernel has support bounded
// below, so the convolution always exists within the class.
Kernel convolve(const Kernel& a, const Kernel& b);

// k - sum_j (-1)^j c_j delta_0^{(2j)}: absorbs the derivative-energy weights
// of an admittance bound into the kernel, so that a pseudo-passivity check
// with weights c becomes a weak-passivity check of the reduced kernel.
Kernel weak_passivity_reduction(const Kernel& k, std::span<const double> c);

// min over Dirac locations and tail starts; +infinity for the zero kernel.
// The operator is causal iff this is >= 0.
double support_lower_bound(const Kernel& k);

// True iff the operator maps real inputs to real inputs: all Dirac
// coefficients real, and tails either real (real rate, real coefficients)
// or matched into exact conjugate pairs.
bool is_real_kernel(const Kernel& k);

// psi^{(j)}(xi) for j = 0..jet_orders-1 where psi = k * phi. Dirac terms hit
// derivatives of phi directly; tail contributions are integrated against
// phi^{(j)} (the derivative falls on the test function, keeping exactness).
// Throws ValidationError when phi cannot supply the needed derivative order
// and NumericError when a tail grows faster than the probe decays.
std::vector<Complex> apply_jet(const Kernel& k, const TestFunction& phi, double xi,
                               int jet_orders, const QuadratureSpec& q = {});

// psi(xi) = <k, t' -> phi(xi - t')>.
Complex apply(const Kernel& k, const TestFunction& phi, double xi,
              const QuadratureSpec& q = {});

}  // namespace pseudopass
