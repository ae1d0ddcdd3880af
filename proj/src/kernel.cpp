#include "pseudopass/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace pseudopass {

namespace {

using Poly = std::vector<Complex>;  // coefficients of 1, t, t^2, ... ascending

Poly trim(Poly p) {
  while (!p.empty() && p.back() == Complex{}) p.pop_back();
  return p;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Complex{});
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return trim(out);
}

Poly poly_scale(Poly p, Complex f) {
  for (auto& c : p) c *= f;
  return trim(std::move(p));
}

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly out(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * static_cast<double>(i);
  return out;
}

Complex poly_eval(const Poly& p, double t) {
  Complex acc{};
  for (size_t i = p.size(); i-- > 0;) acc = acc * t + p[i];
  return acc;
}

// p(t + a) expanded onto the monomial basis.
Poly poly_shift(const Poly& p, double a) {
  Poly out(p.size(), Complex{});
  for (size_t i = 0; i < p.size(); ++i) {
    double binom = 1.0;  // C(i, k) built incrementally
    double pw = 1.0;     // a^k
    for (size_t k = 0; k <= i; ++k) {
      out[i - k] += p[i] * binom * pw;
      binom = binom * static_cast<double>(i - k) / static_cast<double>(k + 1);
      pw *= a;
    }
  }
  return trim(out);
}

const std::vector<double>& factorials() {
  static const std::vector<double> table = [] {
    std::vector<double> f(kMaxJetOrder + 2, 1.0);
    for (size_t i = 1; i < f.size(); ++i) f[i] = f[i - 1] * static_cast<double>(i);
    return f;
  }();
  return table;
}

Kernel normalized(std::vector<DiracTerm> diracs, std::vector<ExpPolyTerm> regs) {
  for (auto& r : regs) r.poly = trim(std::move(r.poly));
  std::erase_if(regs, [](const ExpPolyTerm& r) { return r.poly.empty(); });
  std::erase_if(diracs, [](const DiracTerm& d) { return d.coeff == Complex{}; });

  std::sort(diracs.begin(), diracs.end(), [](const DiracTerm& a, const DiracTerm& b) {
    return a.location != b.location ? a.location < b.location : a.order < b.order;
  });
  std::vector<DiracTerm> merged;
  for (const auto& d : diracs) {
    if (!merged.empty() && merged.back().location == d.location &&
        merged.back().order == d.order) {
      merged.back().coeff += d.coeff;
    } else {
      merged.push_back(d);
    }
  }
  std::erase_if(merged, [](const DiracTerm& d) { return d.coeff == Complex{}; });

  std::sort(regs.begin(), regs.end(), [](const ExpPolyTerm& a, const ExpPolyTerm& b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.rate.real() != b.rate.real()) return a.rate.real() < b.rate.real();
    return a.rate.imag() < b.rate.imag();
  });
  std::vector<ExpPolyTerm> merged_regs;
  for (auto& r : regs) {
    if (!merged_regs.empty() && merged_regs.back().start == r.start &&
        merged_regs.back().rate == r.rate) {
      merged_regs.back().poly = poly_add(merged_regs.back().poly, r.poly);
    } else {
      merged_regs.push_back(std::move(r));
    }
  }
  std::erase_if(merged_regs, [](const ExpPolyTerm& r) { return r.poly.empty(); });

  return Kernel{std::move(merged), std::move(merged_regs)};
}

void check_order(int order) {
  if (order > kMaxJetOrder)
    throw UnsupportedError("kernel: Dirac order " + std::to_string(order) +
                           " exceeds the representable maximum " +
                           std::to_string(kMaxJetOrder));
}

}  // namespace

Complex ExpPolyTerm::value_at(double t) const {
  if (t < start) return Complex{};
  return poly_eval(poly, t) * std::exp(rate * t);
}

int Kernel::max_dirac_order() const {
  int m = 0;
  for (const auto& d : dirac) m = std::max(m, d.order);
  return m;
}

bool Kernel::is_tempered() const {
  for (const auto& r : regular)
    if (r.rate.real() > 0.0) return false;
  return true;
}

Kernel make_kernel(std::vector<DiracTerm> diracs, std::vector<ExpPolyTerm> regs,
                   int max_order) {
  for (const auto& d : diracs) {
    if (!finite(d.coeff)) throw ValidationError("kernel: non-finite Dirac coefficient");
    if (!std::isfinite(d.location)) throw ValidationError("kernel: non-finite location");
    if (d.order < 0) throw ValidationError("kernel: negative Dirac order");
    if (d.order > max_order)
      throw ValidationError("kernel: Dirac order " + std::to_string(d.order) +
                            " exceeds maximum " + std::to_string(max_order));
  }
  for (const auto& r : regs) {
    if (r.poly.empty()) throw ValidationError("kernel: empty tail polynomial");
    for (Complex c : r.poly)
      if (!finite(c)) throw ValidationError("kernel: non-finite tail coefficient");
    if (!finite(r.rate)) throw ValidationError("kernel: non-finite tail rate");
    if (!std::isfinite(r.start)) throw ValidationError("kernel: non-finite tail start");
  }
  return normalized(std::move(diracs), std::move(regs));
}

Kernel add(const Kernel& a, const Kernel& b) {
  std::vector<DiracTerm> diracs = a.dirac;
  diracs.insert(diracs.end(), b.dirac.begin(), b.dirac.end());
  std::vector<ExpPolyTerm> regs = a.regular;
  regs.insert(regs.end(), b.regular.begin(), b.regular.end());
  return normalized(std::move(diracs), std::move(regs));
}

Kernel scale(const Kernel& k, Complex factor) {
  std::vector<DiracTerm> diracs = k.dirac;
  for (auto& d : diracs) d.coeff *= factor;
  std::vector<ExpPolyTerm> regs = k.regular;
  for (auto& r : regs) r.poly = poly_scale(std::move(r.poly), factor);
  return normalized(std::move(diracs), std::move(regs));
}

Kernel derivative(const Kernel& k) {
  std::vector<DiracTerm> diracs;
  std::vector<ExpPolyTerm> regs;
  for (const auto& d : k.dirac) {
    check_order(d.order + 1);
    diracs.push_back({d.coeff, d.location, d.order + 1});
  }
  for (const auto& r : k.regular) {
    // (p e^{rate t})' classically, plus the jump at the support start.
    Poly classical = poly_add(poly_derivative(r.poly), poly_scale(r.poly, r.rate));
    if (!classical.empty()) regs.push_back({classical, r.rate, r.start});
    Complex jump = poly_eval(r.poly, r.start) * std::exp(r.rate * r.start);
    if (jump != Complex{}) diracs.push_back({jump, r.start, 0});
  }
  return normalized(std::move(diracs), std::move(regs));
}

namespace {

Kernel shift_kernel(const Kernel& k, double t0) {
  if (t0 == 0.0) return k;
  std::vector<DiracTerm> diracs = k.dirac;
  for (auto& d : diracs) d.location += t0;
  std::vector<ExpPolyTerm> regs;
  for (const auto& r : k.regular) {
    // p(t) e^{rate t} 1[t>=a] delayed by t0 is p(t-t0) e^{rate(t-t0)} 1[t>=a+t0].
    Poly p = poly_scale(poly_shift(r.poly, -t0), std::exp(-r.rate * t0));
    regs.push_back({std::move(p), r.rate, r.start + t0});
  }
  return normalized(std::move(diracs), std::move(regs));
}

// Convolution of u^m e^{l1 u} and u^n e^{l2 u}, both on [0, infty). The result
// is one exp-poly piece (equal rates) or two (distinct rates), still on
// [0, infty), returned as (poly, rate) pairs in the convolution variable.
std::vector<std::pair<Poly, Complex>> monomial_conv(int m, Complex l1, int n,
                                                    Complex l2) {
  const auto& fact = factorials();
  if (l1 == l2) {
    Poly p(static_cast<size_t>(m + n + 2), Complex{});
    p[m + n + 1] = fact[m] * fact[n] / fact[m + n + 1];
    return {{std::move(p), l1}};
  }
  const Complex mu = l1 - l2;
  // S_q(v) = sum_{i=0}^q (-1)^i q!/(q-i)! mu^{-(i+1)} v^{q-i} is an
  // antiderivative factor: int_0^v t^q e^{mu t} dt = e^{mu v} S_q(v) - S_q(0).
  auto S = [&](int q) {
    Poly p(static_cast<size_t>(q + 1), Complex{});
    Complex mu_pow = 1.0 / mu;
    double sign = 1.0;
    for (int i = 0; i <= q; ++i) {
      p[q - i] = sign * fact[q] / fact[q - i] * mu_pow;
      mu_pow /= mu;
      sign = -sign;
    }
    return p;
  };
  Poly with_l1, with_l2;  // coefficients of e^{l1 v} and e^{l2 v} parts
  double binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    const double sign = (k % 2 ? -1.0 : 1.0);
    Poly sq = S(m + k);
    // v^{n-k} * S_{m+k}(v) contributes to the e^{l1 v} part.
    Poly term1(static_cast<size_t>(n - k) + sq.size(), Complex{});
    for (size_t i = 0; i < sq.size(); ++i) term1[i + (n - k)] = sq[i] * (binom * sign);
    with_l1 = poly_add(with_l1, term1);
    // -S_{m+k}(0) v^{n-k} contributes to the e^{l2 v} part.
    const Complex s_at_0 = sq[0];
    Poly term2(static_cast<size_t>(n - k) + 1, Complex{});
    term2[n - k] = -s_at_0 * (binom * sign);
    with_l2 = poly_add(with_l2, term2);
    binom = binom * static_cast<double>(n - k) / static_cast<double>(k + 1);
  }
  std::vector<std::pair<Poly, Complex>> out;
  with_l1 = trim(std::move(with_l1));
  with_l2 = trim(std::move(with_l2));
  if (!with_l1.empty()) out.emplace_back(std::move(with_l1), l1);
  if (!with_l2.empty()) out.emplace_back(std::move(with_l2), l2);
  return out;
}

std::vector<ExpPolyTerm> conv_reg_reg(const ExpPolyTerm& g1, const ExpPolyTerm& g2) {
  // Recenter both tails at their support starts so the convolution reduces to
  // monomials on [0, infty).
  const Poly q1 = poly_shift(g1.poly, g1.start);
  const Poly q2 = poly_shift(g2.poly, g2.start);
  const double A = g1.start + g2.start;

  // Accumulate per-rate polynomials in the centered variable v = t - A.
  std::vector<std::pair<Poly, Complex>> pieces;
  auto accumulate = [&](Poly p, Complex rate) {
    for (auto& piece : pieces) {
      if (piece.second == rate) {
        piece.first = poly_add(piece.first, p);
        return;
      }
    }
    pieces.emplace_back(std::move(p), rate);
  };
  for (size_t m = 0; m < q1.size(); ++m) {
    if (q1[m] == Complex{}) continue;
    for (size_t n = 0; n < q2.size(); ++n) {
      if (q2[n] == Complex{}) continue;
      const Complex f = q1[m] * q2[n];
      for (auto& [poly, rate] :
           monomial_conv(static_cast<int>(m), g1.rate, static_cast<int>(n), g2.rate))
        accumulate(poly_scale(std::move(poly), f), rate);
    }
  }

  std::vector<ExpPolyTerm> out;
  for (auto& [poly, rate] : pieces) {
    // Back to the absolute variable: r(v) e^{rate v} with v = t - A becomes
    // r(t - A) e^{-rate A} e^{rate t} on [A, infty). The exponential factors
    // are combined into a single exp to avoid intermediate over/underflow.
    const Complex scale =
        std::exp(g1.rate * g1.start + g2.rate * g2.start - rate * A);
    Poly p = poly_scale(poly_shift(poly, -A), scale);
    if (!p.empty()) out.push_back({std::move(p), rate, A});
  }
  return out;
}

}  // namespace

Kernel convolve(const Kernel& a, const Kernel& b) {
  // Every representable kernel has support bounded below, so the convolution
  // exists termwise within the class.
  std::vector<DiracTerm> diracs;
  std::vector<ExpPolyTerm> regs;

  for (const auto& da : a.dirac)
    for (const auto& db : b.dirac) {
      check_order(da.order + db.order);
      diracs.push_back({da.coeff * db.coeff, da.location + db.location,
                        da.order + db.order});
    }

  auto dirac_with_reg = [&](const DiracTerm& d, const ExpPolyTerm& r) {
    Kernel k = normalized({}, {r});
    for (int i = 0; i < d.order; ++i) k = derivative(k);
    k = shift_kernel(k, d.location);
    k = scale(k, d.coeff);
    diracs.insert(diracs.end(), k.dirac.begin(), k.dirac.end());
    regs.insert(regs.end(), k.regular.begin(), k.regular.end());
  };
  for (const auto& da : a.dirac)
    for (const auto& rb : b.regular) dirac_with_reg(da, rb);
  for (const auto& db : b.dirac)
    for (const auto& ra : a.regular) dirac_with_reg(db, ra);

  for (const auto& ra : a.regular)
    for (const auto& rb : b.regular) {
      auto terms = conv_reg_reg(ra, rb);
      regs.insert(regs.end(), terms.begin(), terms.end());
    }

  return normalized(std::move(diracs), std::move(regs));
}

Kernel weak_passivity_reduction(const Kernel& k, std::span<const double> c) {
  std::vector<DiracTerm> diracs = k.dirac;
  for (size_t j = 0; j < c.size(); ++j) {
    if (c[j] == 0.0) continue;
    if (!std::isfinite(c[j])) throw ValidationError("reduction: non-finite weight");
    check_order(static_cast<int>(2 * j));
    const double sign = (j % 2 ? 1.0 : -1.0);  // -(-1)^j
    diracs.push_back({Complex{sign * c[j], 0.0}, 0.0, static_cast<int>(2 * j)});
  }
  return normalized(std::move(diracs), k.regular);
}

double support_lower_bound(const Kernel& k) {
  double lo = inf();
  for (const auto& d : k.dirac) lo = std::min(lo, d.location);
  for (const auto& r : k.regular) lo = std::min(lo, r.start);
  return lo;
}

bool is_real_kernel(const Kernel& k) {
  for (const auto& d : k.dirac)
    if (d.coeff.imag() != 0.0) return false;

  auto self_real = [](const ExpPolyTerm& r) {
    if (r.rate.imag() != 0.0) return false;
    for (Complex c : r.poly)
      if (c.imag() != 0.0) return false;
    return true;
  };
  std::vector<bool> used(k.regular.size(), false);
  for (size_t i = 0; i < k.regular.size(); ++i) {
    if (used[i]) continue;
    const auto& r = k.regular[i];
    if (self_real(r)) {
      used[i] = true;
      continue;
    }
    bool paired = false;
    for (size_t j = i + 1; j < k.regular.size(); ++j) {
      if (used[j]) continue;
      const auto& o = k.regular[j];
      if (o.start == r.start && o.rate == std::conj(r.rate) &&
          o.poly.size() == r.poly.size()) {
        bool conj_match = true;
        for (size_t m = 0; m < r.poly.size(); ++m)
          if (o.poly[m] != std::conj(r.poly[m])) conj_match = false;
        if (conj_match) {
          used[i] = used[j] = true;
          paired = true;
          break;
        }
      }
    }
    if (!paired) return false;
  }
  return true;
}

namespace {

// Truncation point for int g(u) phi(xi - u) du when phi is an ExpWindow: the
// integrand envelope is |p(u)| e^{(Re rate - Re s) u} up to a fixed scale.
double tail_cutoff(const ExpPolyTerm& g, double probe_decay) {
  const double rate = g.rate.real() - probe_decay;
  if (rate >= 0.0)
    throw NumericError("apply: tail grows at least as fast as the probe decays; "
                       "the response integral diverges");
  return g.start + (42.0 + 6.0 * g.degree()) / (-rate);
}

int oscillation_panels(double width, double max_freq) {
  const double panels = width * std::max(0.5, max_freq / 6.0);
  return std::clamp(static_cast<int>(panels) + 2, 2, 512);
}

}  // namespace

std::vector<Complex> apply_jet(const Kernel& k, const TestFunction& phi, double xi,
                               int jet_orders, const QuadratureSpec& q) {
  if (jet_orders < 1) throw ValidationError("apply_jet: need at least one order");
  const int needed = k.max_dirac_order() + jet_orders - 1;
  if (needed > phi.max_order())
    throw ValidationError("apply: kernel needs derivative order " +
                          std::to_string(needed) + " but the test function caps at " +
                          std::to_string(phi.max_order()));

  std::vector<Complex> out(jet_orders, Complex{});
  std::vector<Complex> jet;
  for (const auto& d : k.dirac) {
    jet.assign(static_cast<size_t>(d.order) + jet_orders, Complex{});
    phi.eval_jet(xi - d.location, jet);
    for (int j = 0; j < jet_orders; ++j) out[j] += d.coeff * jet[d.order + j];
  }

  for (const auto& g : k.regular) {
    double u_hi;
    if (phi.compact_support()) {
      u_hi = xi - phi.left();
    } else {
      u_hi = tail_cutoff(g, phi.exponent().real());
    }
    const double u_lo = std::max(g.start, xi - phi.support_right());
    if (u_lo >= u_hi) continue;
    const double osc =
        std::abs(g.rate.imag()) +
        (phi.compact_support() ? 0.0 : std::abs(phi.exponent().imag()));
    const int panels0 = oscillation_panels(u_hi - u_lo, osc);
    std::vector<Complex> pj(jet_orders);
    auto f = [&](double u, std::span<Complex> vals) {
      const Complex gv = g.value_at(u);
      phi.eval_jet(xi - u, pj);
      for (int j = 0; j < jet_orders; ++j) vals[j] = gv * pj[j];
    };
    auto part = integrate_vec(f, jet_orders, u_lo, u_hi, q, panels0);
    for (int j = 0; j < jet_orders; ++j) out[j] += part[j];
  }
  return out;
}

Complex apply(const Kernel& k, const TestFunction& phi, double xi,
              const QuadratureSpec& q) {
  return apply_jet(k, phi, xi, 1, q)[0];
}

}  // namespace pseudopass
