#include "fairclust/notions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fairclust/errors.hpp"

namespace fairclust {

CmBounds CmBounds::uniform(const Instance& inst, double f) {
  return uniform(inst, f, f);
}

CmBounds CmBounds::uniform(const Instance& inst, double lower, double upper) {
  CmBounds b;
  for (const auto& name : inst.color_names) b.by_color[name] = {lower, upper};
  return b;
}

std::vector<std::pair<double, double>> CmBounds::aligned(
    const Instance& inst) const {
  std::vector<std::pair<double, double>> out;
  out.reserve(inst.color_names.size());
  for (const auto& name : inst.color_names) {
    const auto it = by_color.find(name);
    const auto lu = it == by_color.end() ? std::pair<double, double>{0.0, 1.0}
                                         : it->second;
    if (lu.first < 0.0 || lu.second > 1.0 || lu.first > lu.second)
      throw InvalidParams("cm bounds for color '" + name +
                          "' must satisfy 0 <= l <= u <= 1");
    out.push_back(lu);
  }
  for (const auto& [name, lu] : by_color) {
    (void)lu;
    if (!std::binary_search(inst.color_names.begin(), inst.color_names.end(),
                            name))
      throw InvalidParams("cm bounds name a color absent from the instance: " +
                          name);
  }
  return out;
}

std::string notion_name(NotionKind kind) {
  switch (kind) {
    case NotionKind::agnostic: return "agnostic";
    case NotionKind::cm: return "cm";
    case NotionKind::sf: return "sf";
    case NotionKind::eq: return "eq";
    case NotionKind::wc: return "wc";
  }
  return "agnostic";
}

NotionKind notion_from_name(const std::string& name) {
  if (name == "agnostic") return NotionKind::agnostic;
  if (name == "cm") return NotionKind::cm;
  if (name == "sf") return NotionKind::sf;
  if (name == "eq") return NotionKind::eq;
  if (name == "wc") return NotionKind::wc;
  throw InvalidParams("unknown notion: " + name);
}

std::vector<CmViolation> check_cm(const Instance& inst, const Clustering& c,
                                  const CmBounds& bounds) {
  validate_clustering(inst, c);
  const auto aligned = bounds.aligned(inst);
  const auto counts = cluster_color_counts(inst, c);
  std::vector<CmViolation> violations;
  for (size_t i = 0; i < c.centers.size(); ++i) {
    int size = 0;
    for (int h = 0; h < inst.num_colors(); ++h) size += counts[i][h];
    if (size == 0) continue;  // empty cluster: vacuously fine
    for (int h = 0; h < inst.num_colors(); ++h) {
      const auto [l, u] = aligned[h];
      const double cnt = counts[i][h];
      if (l * size <= cnt && cnt <= u * size) continue;
      CmViolation v;
      v.center = c.centers[i];
      v.color = inst.color_names[h];
      v.count = counts[i][h];
      v.cluster_size = size;
      v.lower = l;
      v.upper = u;
      violations.push_back(v);
    }
  }
  return violations;
}

std::vector<EqViolation> check_eq(const Instance& inst, const Clustering& c,
                                  const EqSpec& eq) {
  validate_clustering(inst, c);
  if (!inst.has_similarity())
    throw MissingSimilaritySets("equitability needs similarity sets");
  if (eq.alpha < 1.0)
    throw InvalidParams("equitability requires alpha >= 1");
  std::vector<EqViolation> violations;
  for (int j = 0; j < inst.n; ++j) {
    double ref = std::numeric_limits<double>::infinity();
    for (int other : inst.similarity[j])
      ref = std::min(ref, inst.d(other, c.assignment[other]));
    const double bound = eq.alpha * ref;
    const double dj = inst.d(j, c.assignment[j]);
    if (dj > bound + 1e-12) {
      EqViolation v;
      v.point = j;
      v.distance = dj;
      v.bound = bound;
      violations.push_back(v);
    }
  }
  return violations;
}

double sf_objective(const Instance& inst, const Clustering& c, const SfSpec& sf) {
  validate_clustering(inst, c);
  if (sf.p != 1 && sf.p != 2)
    throw InvalidParams("socially fair power must be 1 or 2");
  const auto costs = group_costs(inst, c, sf.p);
  double worst = 0.0;
  for (int h = 0; h < inst.num_colors(); ++h) {
    int size = 0;
    for (int j = 0; j < inst.n; ++j)
      if (inst.color[j] == h) ++size;
    if (size > 0) worst = std::max(worst, costs[h] / size);
  }
  return worst;
}

}  // namespace fairclust
