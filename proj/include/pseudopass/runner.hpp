#pragma once

#include <string>

#include "json.hpp"

namespace pseudopass {

// Subcommand drivers: inputs and options in, serialized artifacts out.
// `options` is a JSON object; unknown keys are ignored, an optional "inputs"
// object is echoed into the report for provenance.

std::string run_verify(const std::string& kernel_json, const std::string& params_json,
                       const nlohmann::json& options);

struct SweepOutput {
  std::string csv;
  std::string report;
};
SweepOutput run_sweep(const std::string& kernel_json, const std::string& params_json,
                      const nlohmann::json& options);

struct ClassifyOutput {
  std::string text;    // one human-readable line
  std::string report;
  std::string svg;     // empty unless options.svg is true
};
ClassifyOutput run_classify(const nlohmann::json& options);

std::string run_fit(const std::string& samples_csv, const nlohmann::json& options);

struct ConvertOutput {
  std::string csv;
  std::string report;
};
ConvertOutput run_convert(const std::string& samples_csv, const nlohmann::json& options);

std::string run_plot(const nlohmann::json& options);  // returns the SVG

}  // namespace pseudopass
