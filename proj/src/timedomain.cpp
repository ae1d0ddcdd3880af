#include "pseudopass/timedomain.hpp"

#include <algorithm>
#include <cmath>

namespace pseudopass {

namespace {

void check_weights(const std::vector<double>& a, const std::vector<double>& b,
                   const char* what) {
  if (a.empty() || a.size() != b.size())
    throw ValidationError(std::string(what) + ": weight vectors must both have length N+1");
  for (double v : a)
    if (!std::isfinite(v)) throw ValidationError(std::string(what) + ": non-finite weight");
  for (double v : b)
    if (!std::isfinite(v)) throw ValidationError(std::string(what) + ": non-finite weight");
}

int params_order(const Params& p) {
  return std::visit([](const auto& v) { return v.order(); }, p);
}

int segment_panels(double width, double osc, const QuadratureSpec& q) {
  const double per_unit = std::max(1.0, osc / 6.0);
  const int panels = static_cast<int>(width * per_unit) + 2;
  return std::clamp(panels, 2, q.panels);
}

}  // namespace

AdmittanceParams AdmittanceParams::zero(int n) {
  return {std::vector<double>(n + 1, 0.0), std::vector<double>(n + 1, 0.0)};
}

ScatteringParams ScatteringParams::zero(int n) {
  return {std::vector<double>(n + 1, 0.0), std::vector<double>(n + 1, 0.0)};
}

void validate(const AdmittanceParams& p) { check_weights(p.c, p.d, "admittance params"); }
void validate(const ScatteringParams& p) { check_weights(p.F, p.G, "scattering params"); }

EnergyProfile energy_profile(const Kernel& k, const TestFunction& phi,
                             std::span<const double> horizons, int orders,
                             const QuadratureSpec& q) {
  if (orders < 1) throw ValidationError("energy_profile: need at least one order");
  EnergyProfile ep;
  ep.horizons.assign(horizons.begin(), horizons.end());
  std::sort(ep.horizons.begin(), ep.horizons.end());
  ep.orders = orders;
  const size_t H = ep.horizons.size();
  ep.cross.assign(H, std::vector<Complex>(orders, Complex{}));
  ep.phi2.assign(H, std::vector<double>(orders, 0.0));
  ep.psi2.assign(H, std::vector<double>(orders, 0.0));
  if (H == 0) return ep;

  // Everything vanishes left of both the probe and the response support.
  const double k_lo = support_lower_bound(k);
  double lo = phi.support_left(1e-15) + std::min(0.0, std::isfinite(k_lo) ? k_lo : 0.0);
  lo -= 1.0;

  const double osc =
      (phi.compact_support() ? 0.0 : std::abs(phi.exponent().imag()));
  const size_t dim = 3 * static_cast<size_t>(orders);
  std::vector<Complex> phi_jet(orders), psi_jet(orders);
  auto integrand = [&](double tau, std::span<Complex> out) {
    phi.eval_jet(tau, phi_jet);
    psi_jet = apply_jet(k, phi, tau, orders, q);
    for (int j = 0; j < orders; ++j) {
      out[j] = std::conj(phi_jet[j]) * psi_jet[j];
      out[orders + j] = Complex{std::norm(phi_jet[j]), 0.0};
      out[2 * orders + j] = Complex{std::norm(psi_jet[j]), 0.0};
    }
  };

  std::vector<Complex> cum(dim, Complex{});
  double seg_lo = lo;
  for (size_t h = 0; h < H; ++h) {
    const double seg_hi = ep.horizons[h];
    if (seg_hi > seg_lo) {
      const int panels0 = segment_panels(seg_hi - seg_lo, osc, q);
      auto part = integrate_vec(integrand, dim, seg_lo, seg_hi, q, panels0);
      for (size_t c = 0; c < dim; ++c) cum[c] += part[c];
      seg_lo = seg_hi;
    }
    for (int j = 0; j < orders; ++j) {
      ep.cross[h][j] = cum[j];
      ep.phi2[h][j] = cum[orders + j].real();
      ep.psi2[h][j] = cum[2 * orders + j].real();
    }
  }
  return ep;
}

double admittance_residual_at(const EnergyProfile& ep, size_t h,
                              const AdmittanceParams& p) {
  validate(p);
  if (p.order() + 1 > ep.orders)
    throw ValidationError("energy profile holds fewer orders than the params need");
  double rhs = 0.0;
  for (int j = 0; j <= p.order(); ++j)
    rhs += p.c[j] * ep.phi2[h][j] + p.d[j] * ep.psi2[h][j];
  return ep.cross[h][0].real() - rhs;
}

double scattering_residual_at(const EnergyProfile& ep, size_t h,
                              const ScatteringParams& p) {
  validate(p);
  if (p.order() + 1 > ep.orders)
    throw ValidationError("energy profile holds fewer orders than the params need");
  double lhs = 0.0, rhs = 0.0;
  for (int j = 0; j <= p.order(); ++j) {
    const double kron = (j == 0 ? 1.0 : 0.0);
    lhs += (kron - p.F[j]) * ep.phi2[h][j] - (kron + p.F[j]) * ep.psi2[h][j];
    rhs += p.G[j] * ep.cross[h][j].real();
  }
  return lhs - 2.0 * rhs;
}

double admittance_residual(const Kernel& k, const TestFunction& phi, double t,
                           const AdmittanceParams& p, const QuadratureSpec& q) {
  validate(p);
  const double horizon[] = {t};
  EnergyProfile ep = energy_profile(k, phi, horizon, p.order() + 1, q);
  return admittance_residual_at(ep, 0, p);
}

double scattering_residual(const Kernel& k, const TestFunction& zeta, double t,
                           const ScatteringParams& p, const QuadratureSpec& q) {
  validate(p);
  const double horizon[] = {t};
  EnergyProfile ep = energy_profile(k, zeta, horizon, p.order() + 1, q);
  return scattering_residual_at(ep, 0, p);
}

double weak_passivity_residual(const Kernel& k, const TestFunction& phi,
                               const QuadratureSpec& q) {
  if (!phi.compact_support())
    throw UnsupportedError("weak passivity residual requires compact support");
  // The integrand carries a conj(phi) factor, so "+infinity" is any point
  // past the support.
  const double horizon[] = {phi.support_right() + 1.0};
  EnergyProfile ep = energy_profile(k, phi, horizon, 1, q);
  return ep.cross[0][0].real();
}

PairingResidual nonneg_definite_residual(const Kernel& k, const TestFunction& phi,
                                         const QuadratureSpec& q) {
  if (!phi.compact_support())
    throw UnsupportedError("non-negative-definiteness pairing requires compact support");
  const double l = phi.left(), r = phi.right();
  Complex total{};

  // <delta_{a}^{(m)}, ac> = int conj(phi(tau)) phi^{(m)}(tau - a) dtau.
  for (const auto& d : k.dirac) {
    const double lo = std::max(l, l + d.location);
    const double hi = std::min(r, r + d.location);
    if (lo >= hi) continue;
    total += d.coeff * integrate(
                           [&](double tau) {
                             return std::conj(phi.eval(tau)) *
                                    phi.eval(tau - d.location, d.order);
                           },
                           lo, hi, q);
  }

  // Tails pair against the autocorrelation directly; ac lives on [l-r, r-l].
  for (const auto& g : k.regular) {
    const double lo = std::max(g.start, l - r);
    const double hi = r - l;
    if (lo >= hi) continue;
    total += integrate(
        [&](double t) { return g.value_at(t) * autocorrelate(phi, t, q); }, lo, hi, q);
  }
  return {total.real(), total.imag()};
}

std::vector<double> default_horizons(const TestFunction& phi, int count) {
  if (count < 1) throw ValidationError("default_horizons: count must be positive");
  const double lo = phi.support_left(1e-14) - 1.0;
  const double hi = phi.support_right() + 1.0;
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = hi;
    return grid;
  }
  for (int i = 0; i < count; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  return grid;
}

Verdict falsify(const Kernel& k, const Params& p,
                std::span<const TestFunction> corpus,
                std::span<const double> horizons, double tol,
                const QuadratureSpec& q) {
  if (!(tol > 0.0)) throw ValidationError("falsify: tolerance must be positive");
  const int orders = params_order(p) + 1;
  std::visit([](const auto& v) { validate(v); }, p);

  struct PerProbe {
    bool ok = false;
    double min_residual = inf();
    double horizon = 0.0;
    int evaluations = 0;
    std::string failure;
  };
  std::vector<PerProbe> results(corpus.size());

  parallel_for(corpus.size(), [&](size_t i) {
    PerProbe& r = results[i];
    const TestFunction& phi = corpus[i];
    try {
      std::vector<double> grid;
      if (horizons.empty())
        grid = default_horizons(phi);
      else
        grid.assign(horizons.begin(), horizons.end());
      const double norm = squared_norm(phi, q);
      EnergyProfile ep = energy_profile(k, phi, grid, orders, q);
      for (size_t h = 0; h < ep.horizons.size(); ++h) {
        const double res =
            std::holds_alternative<AdmittanceParams>(p)
                ? admittance_residual_at(ep, h, std::get<AdmittanceParams>(p))
                : scattering_residual_at(ep, h, std::get<ScatteringParams>(p));
        const double normalized = res / norm;
        ++r.evaluations;
        if (normalized < r.min_residual) {
          r.min_residual = normalized;
          r.horizon = ep.horizons[h];
        }
      }
      r.ok = true;
    } catch (const NumericError& e) {
      r.failure = phi.id() + ": " + e.what();
    }
  });

  Verdict v;
  v.min_residual = inf();
  for (size_t i = 0; i < results.size(); ++i) {
    const PerProbe& r = results[i];
    if (!r.ok) {
      if (!r.failure.empty()) v.numeric_failures.push_back(r.failure);
      continue;
    }
    v.evaluations += r.evaluations;
    if (r.min_residual < v.min_residual) {
      v.min_residual = r.min_residual;
      v.witness = Witness{corpus[i].id(), r.horizon, r.min_residual};
    }
  }
  if (v.evaluations == 0) {
    v.min_residual = 0.0;
    v.witness.reset();
  }
  v.falsified = v.min_residual < -tol;
  return v;
}

CausalityResult causality_check(const Kernel& k, double t0,
                                std::span<const TestFunction> corpus,
                                double tol, const QuadratureSpec& q) {
  if (!(tol > 0.0)) throw ValidationError("causality_check: tolerance must be positive");
  CausalityResult out;
  const double k_lo = support_lower_bound(k);
  const double reach = std::isfinite(k_lo) ? std::max(0.0, -k_lo) : 0.0;

  for (const auto& phi : corpus) {
    if (!phi.compact_support() || phi.support_left() < t0 - 1e-12)
      throw ValidationError(
          "causality_check: probe does not vanish left of the horizon: " + phi.id());
    const double span = (phi.support_right() - phi.support_left()) + reach + 1.0;
    constexpr int kSamples = 40;
    for (int i = 0; i < kSamples; ++i) {
      const double xi = t0 - span * static_cast<double>(kSamples - i) / kSamples;
      const Complex psi = apply(k, phi, xi, q);
      if (std::abs(psi) >= tol) out.violations.push_back({phi.id(), xi, psi});
    }
  }
  out.causal = out.violations.empty();
  return out;
}

}  // namespace pseudopass
