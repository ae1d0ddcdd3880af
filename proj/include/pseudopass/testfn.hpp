#pragma once

#include <span>
#include <string>
#include <vector>

#include "pseudopass/common.hpp"
#include "pseudopass/quadrature.hpp"

namespace pseudopass {

// Smooth probe functions with exact derivatives of every order.
//
// Two families:
//   BumpPoly   p(xi) * bump(xi) on [left, right], identically zero outside,
//              flat (all derivatives vanish) at both endpoints.
//   ExpWindow  exactly e^{s xi} on (-infty, flat_end], zero on [cut_end, infty),
//              glued smoothly in between with the classical exp(-1/u) step.
//
// Derivatives come from truncated Taylor-jet arithmetic on the exact
// derivative recurrence of exp(-1/u), never from finite differences.
class TestFunction {
 public:
  enum class Kind { BumpPoly, ExpWindow };

  static TestFunction bump_poly(std::vector<Complex> poly, double left, double right,
                                int max_order = 32);
  static TestFunction exp_window(Complex s, double flat_end, double cut_end,
                                 int max_order = 32);

  Kind kind() const { return kind_; }
  int max_order() const { return max_order_; }

  // phi^(order)(xi); zero outside the support. Throws ValidationError when
  // order exceeds max_order().
  Complex eval(double xi, int order = 0) const;

  // Fills out[k] = phi^(k)(xi) for k in [0, out.size()); cheaper than
  // repeated eval when several orders are needed at one point.
  void eval_jet(double xi, std::span<Complex> out) const;

  bool compact_support() const { return kind_ == Kind::BumpPoly; }

  // Left end of the support; for ExpWindow, the point where the squared
  // envelope has decayed below envelope_tol (the support is unbounded below).
  double support_left(double envelope_tol = 1e-14) const;
  double support_right() const;

  // BumpPoly parameters (valid when kind() == BumpPoly).
  const std::vector<Complex>& poly() const { return poly_; }
  double left() const { return left_; }
  double right() const { return right_; }

  // ExpWindow parameters (valid when kind() == ExpWindow).
  Complex exponent() const { return s_; }
  double flat_end() const { return left_; }
  double cut_end() const { return right_; }

  // Same function translated by delta (support shifts right by delta).
  TestFunction shifted(double delta) const;

  std::string id() const;  // stable label used in witnesses and reports

 private:
  TestFunction() = default;
  Kind kind_ = Kind::BumpPoly;
  std::vector<Complex> poly_;
  Complex s_{};
  double left_ = 0.0, right_ = 0.0;  // support / window endpoints
  int max_order_ = 32;
};

// \int conj(phi(tau)) phi(tau - t) dtau by quadrature; BumpPoly only.
Complex autocorrelate(const TestFunction& phi, double t, const QuadratureSpec& q = {});

// \int |phi|^2 over the (effective) support.
double squared_norm(const TestFunction& phi, const QuadratureSpec& q = {});

// The default falsification corpus: 24 BumpPoly (degrees 0-3, four widths,
// plus shifted copies) and 8 ExpWindow probes on a fixed right-half-plane
// exponent grid.
std::vector<TestFunction> default_corpus();
std::vector<TestFunction> default_bump_corpus();

}  // namespace pseudopass
