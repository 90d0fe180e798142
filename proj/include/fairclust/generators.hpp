#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairclust/instance.hpp"

namespace fairclust {

// Built-in constructed instances.  Each generator exposes a few scale
// parameters with validated windows; defaults reproduce the contrasts the
// acceptance suite checks.
enum class FigureId {
  fig1_cm,
  fig2_eq,
  fig3_sf,
  fig4_degradation,
  fig5_outlier_cm,
  fig6_outlier_eq,
  fig7_classifier,
  thm1,
};

std::string figure_name(FigureId id);
std::optional<FigureId> figure_from_name(const std::string& name);
const std::vector<FigureId>& all_figures();

// name -> value; unknown names are rejected with InvalidParams.
using GenParams = std::map<std::string, double>;

// Raw data (coords/matrix, colors, side information, metadata).  Metadata
// records the figure name, parameter values and suggested solve settings.
InstanceData generate_figure_data(FigureId id, const GenParams& params = {});

// generate_figure_data passed through build_instance.
Instance generate_figure(FigureId id, const GenParams& params = {});

}  // namespace fairclust
