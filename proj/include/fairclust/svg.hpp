#pragma once

#include <string>
#include <vector>

#include "fairclust/fairness.hpp"

namespace fairclust {

// Grouped bar chart of per-group average utilities, one bar cluster per
// comparison row. Output is plain SVG text with fixed-precision numbers so
// repeated runs produce identical bytes.
std::string welfare_bar_chart(const std::vector<ComparisonRow>& rows,
                              const std::vector<std::string>& color_names);

}  // namespace fairclust
