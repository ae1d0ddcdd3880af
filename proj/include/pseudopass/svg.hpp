#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pseudopass/geometry.hpp"

namespace pseudopass {

// Single region over the [-3,3]^2 viewport.
std::string region_svg(const Region& r, const std::string& title);

// 3x3 grid of admittance regions, one (c, d) pair per panel in row-major
// order; used for the standard nine-panel taxonomy plot.
std::string admittance_grid_svg(const std::vector<std::pair<double, double>>& panels);

// The nine default (c, d) panels of the taxonomy plot, row-major.
const std::vector<std::pair<double, double>>& default_taxonomy_panels();

}  // namespace pseudopass
