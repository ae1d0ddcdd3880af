#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pseudopass/kernel.hpp"
#include "pseudopass/testfn.hpp"

namespace pseudopass {

// Admittance-side weight vectors (c, d), both of length N+1.
struct AdmittanceParams {
  std::vector<double> c;
  std::vector<double> d;

  int order() const { return static_cast<int>(c.size()) - 1; }
  static AdmittanceParams zero(int n = 0);
};

// Scattering-side weight vectors (F, G), both of length N+1.
struct ScatteringParams {
  std::vector<double> F;
  std::vector<double> G;

  int order() const { return static_cast<int>(F.size()) - 1; }
  static ScatteringParams zero(int n = 0);
};

using Params = std::variant<AdmittanceParams, ScatteringParams>;

void validate(const AdmittanceParams& p);
void validate(const ScatteringParams& p);

struct Witness {
  std::string testfn_id;
  double horizon = 0.0;
  double residual = 0.0;  // normalized by ||phi||^2
};

struct Verdict {
  bool falsified = false;
  double min_residual = 0.0;  // normalized; most negative residual seen
  std::optional<Witness> witness;
  int evaluations = 0;
  std::vector<std::string> numeric_failures;
};

// Cumulative energy integrals of one (kernel, probe) pair at a horizon grid:
//   cross[h][j] = int_{-inf}^{t_h} conj(phi^{(j)}) psi^{(j)}
//   phi2[h][j]  = int_{-inf}^{t_h} |phi^{(j)}|^2
//   psi2[h][j]  = int_{-inf}^{t_h} |psi^{(j)}|^2
// Every residual below is a fixed linear combination of these, so one profile
// serves any weight vector of order <= orders-1.
struct EnergyProfile {
  std::vector<double> horizons;
  int orders = 1;
  std::vector<std::vector<Complex>> cross;
  std::vector<std::vector<double>> phi2;
  std::vector<std::vector<double>> psi2;
};

EnergyProfile energy_profile(const Kernel& k, const TestFunction& phi,
                             std::span<const double> horizons, int orders,
                             const QuadratureSpec& q = {});

double admittance_residual_at(const EnergyProfile& ep, size_t h,
                              const AdmittanceParams& p);
double scattering_residual_at(const EnergyProfile& ep, size_t h,
                              const ScatteringParams& p);

// Re int_{-inf}^t conj(phi) psi - sum_j int_{-inf}^t (c_j |phi^{(j)}|^2 + d_j |psi^{(j)}|^2)
double admittance_residual(const Kernel& k, const TestFunction& phi, double t,
                           const AdmittanceParams& p, const QuadratureSpec& q = {});

// sum_j int_{-inf}^t ((1{j=0}-F_j)|zeta^{(j)}|^2 - (1{j=0}+F_j)|eta^{(j)}|^2)
//   - 2 sum_j G_j Re int_{-inf}^t conj(zeta^{(j)}) eta^{(j)}
double scattering_residual(const Kernel& k, const TestFunction& zeta, double t,
                           const ScatteringParams& p, const QuadratureSpec& q = {});

// Residual of the full-line inequality (horizon at +infinity).
double weak_passivity_residual(const Kernel& k, const TestFunction& phi,
                               const QuadratureSpec& q = {});

struct PairingResidual {
  double re = 0.0;
  double im = 0.0;  // diagnostic; nonzero means the pairing was not real
};

// Re <k, t -> autocorrelation of phi at t>; phi must be compactly supported.
PairingResidual nonneg_definite_residual(const Kernel& k, const TestFunction& phi,
                                         const QuadratureSpec& q = {});

// The default 17-point horizon grid spanning [support start - 1, support end + 1].
std::vector<double> default_horizons(const TestFunction& phi, int count = 17);

// Scans corpus x horizons for a residual below -tol (residuals normalized by
// ||phi||^2). Numeric failures are recorded per probe and skipped.
Verdict falsify(const Kernel& k, const Params& p,
                std::span<const TestFunction> corpus,
                std::span<const double> horizons = {},
                double tol = kDefaultFalsifyTol, const QuadratureSpec& q = {});

struct CausalityViolation {
  std::string testfn_id;
  double xi = 0.0;
  Complex psi;
};

struct CausalityResult {
  bool causal = true;
  std::vector<CausalityViolation> violations;
};

// Empirical causality test: probes vanishing on (-inf, t0) must map to
// responses vanishing there. Probes are required to vanish below t0.
CausalityResult causality_check(const Kernel& k, double t0,
                                std::span<const TestFunction> corpus,
                                double tol = kDefaultFalsifyTol,
                                const QuadratureSpec& q = {});

}  // namespace pseudopass
