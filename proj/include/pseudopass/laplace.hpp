#pragma once

#include <string>
#include <vector>

#include "pseudopass/kernel.hpp"
#include "pseudopass/timedomain.hpp"

namespace pseudopass {

struct TransferSample {
  Complex s;  // Re[s] > 0
  Complex w;  // W(s)
};

struct HalfPlaneGrid {
  enum class Spacing { LogRe, Linear };

  double re_min = 1e-2, re_max = 1e2;
  double im_min = -100.0, im_max = 100.0;
  int n_re = 25, n_im = 41;
  Spacing spacing = Spacing::LogRe;

  std::vector<Complex> points() const;  // throws ValidationError if re_min <= 0
};

// Closed-form Laplace transform:
//   delta_{a}^{(m)}        ->  s^m e^{-s a}
//   p(t) e^{rate t} 1[t>=a] ->  e^{(rate-s)a} sum_n p_n sum_{k<=n} (n!/k!) a^k (s-rate)^{k-n-1}
// Throws DomainError when Re[s] <= Re[rate] for some tail (the integral diverges).
Complex laplace_eval(const Kernel& k, Complex s);

// Re[w] - sum_j |s|^{2j} (c_j + |w|^2 d_j); >= 0 is the admittance range constraint.
double admittance_range_residual(Complex w, Complex s, const AdmittanceParams& p);

// sum_j |s|^{2j} ((1{j=0}-F_j) - (1{j=0}+F_j)|w|^2) - 2 sum_j G_j |s|^{2j} Re[w].
double scattering_range_residual(Complex w, Complex s, const ScatteringParams& p);

double range_residual(Complex w, Complex s, const Params& p);

struct SweepPoint {
  Complex s;
  Complex w;
  double residual = 0.0;
  bool ok = true;
  std::string error;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  double min_residual = 0.0;
  int argmin = -1;  // index into points; -1 when every point failed
  int skipped = 0;
};

// Evaluates W and the matching range residual at every grid point. Domain
// errors at individual points are recorded and skipped.
SweepResult sweep(const Kernel& k, const HalfPlaneGrid& grid, const Params& p);

}  // namespace pseudopass
