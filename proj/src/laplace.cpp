#include "pseudopass/laplace.hpp"

#include <algorithm>
#include <cmath>

namespace pseudopass {

namespace {

double pow_int(double base, int n) {
  double acc = 1.0;
  for (int i = 0; i < n; ++i) acc *= base;
  return acc;
}

Complex cpow_int(Complex base, int n) {
  Complex acc{1.0, 0.0};
  for (int i = 0; i < n; ++i) acc *= base;
  return acc;
}

const std::vector<double>& factorials() {
  static const std::vector<double> table = [] {
    std::vector<double> f(kMaxJetOrder + 2, 1.0);
    for (size_t i = 1; i < f.size(); ++i) f[i] = f[i - 1] * static_cast<double>(i);
    return f;
  }();
  return table;
}

}  // namespace

std::vector<Complex> HalfPlaneGrid::points() const {
  if (!(re_min > 0.0)) throw ValidationError("grid: Re[s] range must start above 0");
  if (!(re_max >= re_min) || !(im_max >= im_min))
    throw ValidationError("grid: empty range");
  if (n_re < 1 || n_im < 1) throw ValidationError("grid: need at least one point per axis");

  std::vector<double> res(n_re), ims(n_im);
  for (int i = 0; i < n_re; ++i) {
    if (n_re == 1) {
      res[i] = re_min;
    } else if (spacing == Spacing::LogRe) {
      res[i] = re_min * std::pow(re_max / re_min, static_cast<double>(i) / (n_re - 1));
    } else {
      res[i] = re_min + (re_max - re_min) * static_cast<double>(i) / (n_re - 1);
    }
  }
  for (int j = 0; j < n_im; ++j)
    ims[j] = n_im == 1 ? im_min
                       : im_min + (im_max - im_min) * static_cast<double>(j) / (n_im - 1);

  std::vector<Complex> pts;
  pts.reserve(static_cast<size_t>(n_re) * n_im);
  for (double re : res)
    for (double im : ims) pts.emplace_back(re, im);
  return pts;
}

Complex laplace_eval(const Kernel& k, Complex s) {
  if (!finite(s)) throw ValidationError("laplace_eval: non-finite s");
  Complex acc{};
  for (const auto& d : k.dirac)
    acc += d.coeff * cpow_int(s, d.order) * std::exp(-s * d.location);

  const auto& fact = factorials();
  for (const auto& g : k.regular) {
    const Complex z = s - g.rate;
    if (!(z.real() > 0.0))
      throw DomainError("laplace_eval: transform diverges at Re[s] = " +
                        format_double(s.real()) + " for a tail with Re[rate] = " +
                        format_double(g.rate.real()));
    // int_a^inf t^n e^{-z t} dt = e^{-z a} sum_{k<=n} (n!/k!) a^k / z^{n-k+1}
    Complex tail{};
    for (size_t n = 0; n < g.poly.size(); ++n) {
      if (g.poly[n] == Complex{}) continue;
      Complex inner{};
      for (size_t kk = 0; kk <= n; ++kk)
        inner += fact[n] / fact[kk] * pow_int(g.start, static_cast<int>(kk)) /
                 cpow_int(z, static_cast<int>(n - kk + 1));
      tail += g.poly[n] * inner;
    }
    acc += std::exp(-z * g.start) * tail;
  }
  return acc;
}

double admittance_range_residual(Complex w, Complex s, const AdmittanceParams& p) {
  validate(p);
  const double s2 = std::norm(s);
  const double w2 = std::norm(w);
  double rhs = 0.0;
  double s_pow = 1.0;
  for (int j = 0; j <= p.order(); ++j) {
    rhs += s_pow * (p.c[j] + w2 * p.d[j]);
    s_pow *= s2;
  }
  return w.real() - rhs;
}

double scattering_range_residual(Complex w, Complex s, const ScatteringParams& p) {
  validate(p);
  const double s2 = std::norm(s);
  const double w2 = std::norm(w);
  double lhs = 0.0, g_side = 0.0;
  double s_pow = 1.0;
  for (int j = 0; j <= p.order(); ++j) {
    const double kron = (j == 0 ? 1.0 : 0.0);
    lhs += s_pow * ((kron - p.F[j]) - (kron + p.F[j]) * w2);
    g_side += p.G[j] * s_pow;
    s_pow *= s2;
  }
  return lhs - 2.0 * g_side * w.real();
}

double range_residual(Complex w, Complex s, const Params& p) {
  if (std::holds_alternative<AdmittanceParams>(p))
    return admittance_range_residual(w, s, std::get<AdmittanceParams>(p));
  return scattering_range_residual(w, s, std::get<ScatteringParams>(p));
}

SweepResult sweep(const Kernel& k, const HalfPlaneGrid& grid, const Params& p) {
  std::visit([](const auto& v) { validate(v); }, p);
  const std::vector<Complex> pts = grid.points();
  SweepResult out;
  out.points.resize(pts.size());

  parallel_for(pts.size(), [&](size_t i) {
    SweepPoint& pt = out.points[i];
    pt.s = pts[i];
    try {
      pt.w = laplace_eval(k, pts[i]);
      pt.residual = range_residual(pt.w, pt.s, p);
    } catch (const DomainError& e) {
      pt.ok = false;
      pt.error = e.what();
    }
  });

  out.min_residual = inf();
  for (size_t i = 0; i < out.points.size(); ++i) {
    if (!out.points[i].ok) {
      ++out.skipped;
      continue;
    }
    if (out.points[i].residual < out.min_residual) {
      out.min_residual = out.points[i].residual;
      out.argmin = static_cast<int>(i);
    }
  }
  if (out.argmin < 0) out.min_residual = 0.0;
  return out;
}

}  // namespace pseudopass
