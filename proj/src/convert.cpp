#include "pseudopass/convert.hpp"

#include <cmath>

namespace pseudopass {

ScatteringParams params_adm_to_scat(const AdmittanceParams& p) {
  validate(p);
  ScatteringParams out;
  out.F.resize(p.c.size());
  out.G.resize(p.c.size());
  for (size_t j = 0; j < p.c.size(); ++j) {
    out.F[j] = p.c[j] + p.d[j];
    out.G[j] = p.c[j] - p.d[j];
  }
  return out;
}

AdmittanceParams params_scat_to_adm(const ScatteringParams& p) {
  validate(p);
  AdmittanceParams out;
  out.c.resize(p.F.size());
  out.d.resize(p.F.size());
  for (size_t j = 0; j < p.F.size(); ++j) {
    out.c[j] = 0.5 * (p.F[j] + p.G[j]);
    out.d[j] = 0.5 * (p.F[j] - p.G[j]);
  }
  return out;
}

Complex cayley(Complex w, double tol) {
  if (!finite(w)) throw ValidationError("cayley: non-finite value");
  if (std::abs(Complex{1.0, 0.0} + w) < tol)
    throw DomainError("cayley: value within " + format_double(tol) +
                      " of the pole at -1; the convolution inverse fails here");
  return (Complex{1.0, 0.0} - w) / (Complex{1.0, 0.0} + w);
}

ConversionReport convert_samples(std::span<const TransferSample> samples,
                                 ConvertDirection direction, double tol) {
  ConversionReport report;
  report.direction = direction;
  report.samples.reserve(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    const TransferSample& smp = samples[i];
    if (std::abs(Complex{1.0, 0.0} + smp.w) < tol) {
      report.pole_warnings.push_back({i, smp.s, smp.w});
      continue;
    }
    report.samples.push_back({smp.s, cayley(smp.w, tol)});
  }
  return report;
}

}  // namespace pseudopass
