#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pseudopass/kernel.hpp"
#include "pseudopass/laplace.hpp"

namespace pseudopass {

// Malformed input text (JSON or CSV that does not parse).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Kernel files:
// {"dirac":  [{"coeff": [re,im], "loc": x, "order": m}, ...],
//  "regular":[{"poly": [[re,im],...], "rate": [re,im], "start": a}, ...]}
Kernel kernel_from_json(const std::string& text);
nlohmann::json kernel_to_json(const Kernel& k);
std::string kernel_digest(const Kernel& k);

// Parameter files:
// {"kind": "admittance", "N": 0, "c": [...], "d": [...]}
// {"kind": "scattering", "N": 0, "F": [...], "G": [...]}
Params params_from_json(const std::string& text);
nlohmann::json params_to_json(const Params& p);

// Transfer-sample CSV, header exactly `s_re,s_im,w_re,w_im`.
std::vector<TransferSample> samples_from_csv(const std::string& text);
std::string samples_to_csv(std::span<const TransferSample> samples);

// Sweep export: the same table with a `residual` column appended; points
// where the transform failed to converge are omitted.
std::string sweep_to_csv(const SweepResult& sr);

// Fixed report shell shared by every subcommand.
nlohmann::json report_envelope(const std::string& subcommand, nlohmann::json inputs,
                               nlohmann::json results, nlohmann::json warnings);
std::string dump_report(const nlohmann::json& j);

nlohmann::json complex_to_json(Complex z);

}  // namespace pseudopass
