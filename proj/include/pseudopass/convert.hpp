#pragma once

#include <span>
#include <vector>

#include "pseudopass/laplace.hpp"

namespace pseudopass {

// F_j = c_j + d_j, G_j = c_j - d_j (and its inverse): the parameter halves of
// the admittance <-> scattering transition.
ScatteringParams params_adm_to_scat(const AdmittanceParams& p);
AdmittanceParams params_scat_to_adm(const ScatteringParams& p);

// w -> (1 - w)/(1 + w); its own inverse. Throws DomainError within tol of the
// pole at w = -1, where the underlying convolution inverse fails to exist.
Complex cayley(Complex w, double tol = kDefaultPoleTol);

enum class ConvertDirection { AdmToScat, ScatToAdm };

struct PoleWarning {
  size_t index = 0;
  Complex s;
  Complex w;
};

struct ConversionReport {
  ConvertDirection direction = ConvertDirection::AdmToScat;
  std::vector<TransferSample> samples;      // converted; pole hits excluded
  std::vector<PoleWarning> pole_warnings;
};

// Applies the Cayley map pointwise (both directions use the same involution);
// samples within tol of the pole are excluded and listed.
ConversionReport convert_samples(std::span<const TransferSample> samples,
                                 ConvertDirection direction,
                                 double tol = kDefaultPoleTol);

}  // namespace pseudopass
