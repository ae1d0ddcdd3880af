#include "pseudopass/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace pseudopass {

namespace {

// Binomial coefficients as doubles, C(n, k) = binom[n][k].
const std::vector<std::vector<double>>& binomials() {
  static const std::vector<std::vector<double>> table = [] {
    std::vector<std::vector<double>> b(kMaxJetOrder + 1);
    for (int n = 0; n <= kMaxJetOrder; ++n) {
      b[n].resize(n + 1);
      b[n][0] = b[n][n] = 1.0;
      for (int k = 1; k < n; ++k) b[n][k] = b[n - 1][k - 1] + b[n - 1][k];
    }
    return b;
  }();
  return table;
}

// Derivatives of g(x) = e^{-1/x} (x > 0): g^{(n)}(x) = p_n(1/x) g(x) with
// p_0 = 1 and p_{n+1}(y) = y^2 (p_n(y) - p_n'(y)).
const std::vector<std::vector<double>>& glue_polys() {
  static const std::vector<std::vector<double>> table = [] {
    std::vector<std::vector<double>> polys(kMaxJetOrder + 1);
    polys[0] = {1.0};
    for (int n = 0; n < kMaxJetOrder; ++n) {
      const auto& p = polys[n];
      std::vector<double> q(p.size() + 2, 0.0);
      for (size_t i = 0; i < p.size(); ++i) {
        q[i + 2] += p[i];                          // y^2 * p
        if (i >= 1) q[i + 1] -= p[i] * static_cast<double>(i);  // -y^2 * p'
      }
      polys[n + 1] = std::move(q);
    }
    return polys;
  }();
  return table;
}

double eval_poly_real(const std::vector<double>& coeffs, double y) {
  double acc = 0.0;
  for (size_t i = coeffs.size(); i-- > 0;) acc = acc * y + coeffs[i];
  return acc;
}

// out[k] = d^k/dx^k e^{-1/x}; identically zero for x <= 0.
void glue_jet(double x, std::span<double> out) {
  if (x <= 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const double g = std::exp(-1.0 / x);
  if (g == 0.0) {  // underflow: every derivative vanishes to double precision
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const double y = 1.0 / x;
  const auto& polys = glue_polys();
  for (size_t k = 0; k < out.size(); ++k) out[k] = eval_poly_real(polys[k], y) * g;
}

// Leibniz product of two jets into out (sizes equal).
void jet_mul(std::span<const Complex> a, std::span<const Complex> b,
             std::span<Complex> out) {
  const auto& binom = binomials();
  for (size_t n = 0; n < out.size(); ++n) {
    Complex acc{};
    for (size_t k = 0; k <= n; ++k) acc += binom[n][k] * a[k] * b[n - k];
    out[n] = acc;
  }
}

// q = u / v with v[0] != 0.
void jet_div(std::span<const Complex> u, std::span<const Complex> v,
             std::span<Complex> out) {
  const auto& binom = binomials();
  for (size_t n = 0; n < out.size(); ++n) {
    Complex acc = u[n];
    for (size_t k = 0; k < n; ++k) acc -= binom[n][k] * out[k] * v[n - k];
    out[n] = acc / v[0];
  }
}

// Jet of the polynomial sum_i poly[i] xi^i at xi.
void poly_jet(const std::vector<Complex>& poly, double xi, std::span<Complex> out) {
  std::vector<Complex> deriv(poly.begin(), poly.end());
  for (size_t n = 0; n < out.size(); ++n) {
    Complex acc{};
    for (size_t i = deriv.size(); i-- > 0;) acc = acc * xi + deriv[i];
    out[n] = acc;
    for (size_t i = 0; i + 1 < deriv.size(); ++i)
      deriv[i] = deriv[i + 1] * static_cast<double>(i + 1);
    if (!deriv.empty()) deriv.pop_back();
  }
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

TestFunction TestFunction::bump_poly(std::vector<Complex> poly, double left,
                                     double right, int max_order) {
  if (poly.empty()) throw ValidationError("bump_poly: empty polynomial");
  for (Complex c : poly)
    if (!finite(c)) throw ValidationError("bump_poly: non-finite coefficient");
  if (!(left < right)) throw ValidationError("bump_poly: need left < right");
  if (max_order < 0 || max_order > kMaxJetOrder)
    throw ValidationError("bump_poly: unsupported max derivative order");
  TestFunction f;
  f.kind_ = Kind::BumpPoly;
  f.poly_ = std::move(poly);
  f.left_ = left;
  f.right_ = right;
  f.max_order_ = max_order;
  return f;
}

TestFunction TestFunction::exp_window(Complex s, double flat_end, double cut_end,
                                      int max_order) {
  if (!finite(s) || !(s.real() > 0.0))
    throw ValidationError("exp_window: exponent must have positive real part");
  if (!(cut_end > flat_end)) throw ValidationError("exp_window: need cut_end > flat_end");
  if (max_order < 0 || max_order > kMaxJetOrder)
    throw ValidationError("exp_window: unsupported max derivative order");
  TestFunction f;
  f.kind_ = Kind::ExpWindow;
  f.s_ = s;
  f.left_ = flat_end;
  f.right_ = cut_end;
  f.max_order_ = max_order;
  return f;
}

void TestFunction::eval_jet(double xi, std::span<Complex> out) const {
  if (out.empty()) return;
  const int top = static_cast<int>(out.size()) - 1;
  if (top > max_order_)
    throw ValidationError("TestFunction: derivative order " + std::to_string(top) +
                          " exceeds configured maximum " + std::to_string(max_order_));

  if (kind_ == Kind::BumpPoly) {
    if (xi <= left_ || xi >= right_) {
      std::fill(out.begin(), out.end(), Complex{});
      return;
    }
    const size_t n = out.size();
    std::vector<double> gl(n), gr(n);
    glue_jet(xi - left_, gl);        // rises from the left endpoint
    glue_jet(right_ - xi, gr);       // falls toward the right endpoint
    std::vector<Complex> a(n), b(n), win(n), pj(n);
    for (size_t k = 0; k < n; ++k) {
      a[k] = gl[k];
      b[k] = (k % 2 ? -gr[k] : gr[k]);  // chain rule through r - xi
    }
    jet_mul(a, b, win);
    poly_jet(poly_, xi, pj);
    jet_mul(pj, win, out);
    return;
  }

  // ExpWindow
  if (xi >= right_) {
    std::fill(out.begin(), out.end(), Complex{});
    return;
  }
  if (xi <= left_) {
    Complex e = std::exp(s_ * xi);
    Complex pw{1.0, 0.0};
    for (size_t k = 0; k < out.size(); ++k) {
      out[k] = pw * e;
      pw *= s_;
    }
    return;
  }
  const size_t n = out.size();
  std::vector<double> gu(n), gv(n);
  glue_jet(right_ - xi, gu);  // numerator: 1 near flat_end, 0 at cut_end
  glue_jet(xi - left_, gv);
  std::vector<Complex> u(n), v(n), sigma(n), e(n);
  for (size_t k = 0; k < n; ++k) {
    u[k] = (k % 2 ? -gu[k] : gu[k]);
    v[k] = u[k] + gv[k];
  }
  jet_div(u, v, sigma);
  Complex ev = std::exp(s_ * xi);
  Complex pw{1.0, 0.0};
  for (size_t k = 0; k < n; ++k) {
    e[k] = pw * ev;
    pw *= s_;
  }
  jet_mul(e, sigma, out);
}

Complex TestFunction::eval(double xi, int order) const {
  if (order < 0) throw ValidationError("TestFunction: negative derivative order");
  std::vector<Complex> jet(order + 1);
  eval_jet(xi, jet);
  return jet[order];
}

double TestFunction::support_left(double envelope_tol) const {
  if (kind_ == Kind::BumpPoly) return left_;
  // |phi(xi)| = e^{Re[s] xi} left of the window.
  return std::min(left_, std::log(envelope_tol) / s_.real());
}

double TestFunction::support_right() const { return right_; }

TestFunction TestFunction::shifted(double delta) const {
  TestFunction f = *this;
  f.left_ += delta;
  f.right_ += delta;
  if (kind_ == Kind::BumpPoly && !poly_.empty()) {
    // p(xi) -> p(xi - delta), expanded back onto the monomial basis.
    const auto& binom = binomials();
    std::vector<Complex> shifted_poly(poly_.size(), Complex{});
    for (size_t i = 0; i < poly_.size(); ++i) {
      double pw = 1.0;
      for (size_t k = 0; k <= i; ++k) {
        shifted_poly[i - k] += poly_[i] * binom[i][k] * pw;
        pw *= -delta;
      }
    }
    f.poly_ = std::move(shifted_poly);
  }
  return f;
}

std::string TestFunction::id() const {
  if (kind_ == Kind::BumpPoly) {
    return "bump(deg=" + std::to_string(poly_.size() - 1) + ",support=[" +
           short_num(left_) + "," + short_num(right_) + "])";
  }
  return "expwindow(s=" + format_complex(s_) + ",flat=" + short_num(left_) +
         ",cut=" + short_num(right_) + ")";
}

Complex autocorrelate(const TestFunction& phi, double t, const QuadratureSpec& q) {
  if (!phi.compact_support())
    throw UnsupportedError("autocorrelate: requires a compactly supported function");
  const double lo = std::max(phi.left(), phi.left() + t);
  const double hi = std::min(phi.right(), phi.right() + t);
  if (lo >= hi) return Complex{};
  return integrate(
      [&](double tau) { return std::conj(phi.eval(tau)) * phi.eval(tau - t); }, lo, hi,
      q);
}

double squared_norm(const TestFunction& phi, const QuadratureSpec& q) {
  const double lo = phi.support_left();
  const double hi = phi.support_right();
  Complex v = integrate([&](double tau) { return Complex{std::norm(phi.eval(tau)), 0.0}; },
                        lo, hi, q);
  return v.real();
}

namespace {

// ((xi - center) * 2 / width)^degree expanded onto the monomial basis.
std::vector<Complex> centered_monomial(int degree, double center, double width) {
  const double a = 2.0 / width;
  std::vector<Complex> poly(degree + 1, Complex{});
  const auto& binom = binomials();
  for (int k = 0; k <= degree; ++k) {
    // (a xi - a c)^g = sum_k C(g,k) (a xi)^k (-a c)^{g-k}
    poly[k] = binom[degree][k] * std::pow(a, k) * std::pow(-a * center, degree - k);
  }
  return poly;
}

}  // namespace

std::vector<TestFunction> default_bump_corpus() {
  std::vector<TestFunction> corpus;
  const double widths[] = {1.0, 2.0, 4.0, 8.0};
  for (double w : widths)
    for (int deg = 0; deg <= 3; ++deg)
      corpus.push_back(TestFunction::bump_poly(centered_monomial(deg, 0.0, w),
                                               -0.5 * w, 0.5 * w));
  for (double center : {-2.0, 2.0})
    for (int deg = 0; deg <= 3; ++deg)
      corpus.push_back(TestFunction::bump_poly(centered_monomial(deg, center, 2.0),
                                               center - 1.0, center + 1.0));
  return corpus;
}

std::vector<TestFunction> default_corpus() {
  std::vector<TestFunction> corpus = default_bump_corpus();
  for (double re : {0.5, 2.0})
    for (double im : {-3.0, -1.0, 1.0, 3.0})
      corpus.push_back(TestFunction::exp_window(Complex{re, im}, 1.0, 2.0));
  return corpus;
}

}  // namespace pseudopass
