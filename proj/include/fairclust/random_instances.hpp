#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fairclust/instance.hpp"
#include "fairclust/notions.hpp"
#include "fairclust/welfare.hpp"

namespace fairclust {

// One generated property-suite case.  `family` picks which solver is under
// test; `notion` carries the cm/eq/sf parameters and `model` the wc model.
struct RandomCase {
  std::string name;
  Instance inst;
  int k = 1;
  Objective objective = Objective::k_median;
  NotionKind family = NotionKind::cm;
  Notion notion;
  UtilityModel model;
};

// Deterministic small-instance battery: two colors, n in 4..8, k in 1..3,
// coordinates on a quarter-unit grid with a fifth of the points snapped onto
// earlier ones so exact ties and co-located candidate centers show up.  The
// family and objective rotate per index; the same seed always reproduces the
// same battery.
std::vector<RandomCase> random_cases(std::uint64_t seed, int count = 200);

}  // namespace fairclust
