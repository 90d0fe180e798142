#include "fairclust/random_instances.hpp"

#include <cstdio>
#include <random>

namespace fairclust {

namespace {

// Bounded draw that stays reproducible across standard libraries (the
// distribution classes make no such promise).
int draw(std::mt19937_64& rng, int bound) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(bound));
}

Notion make_cm(std::mt19937_64& rng, const std::vector<std::string>& colors) {
  Notion n;
  n.kind = NotionKind::cm;
  switch (draw(rng, 4)) {
    case 0:
      for (const auto& c : colors) n.cm.by_color[c] = {0.3, 0.7};
      break;
    case 1:
      for (const auto& c : colors) n.cm.by_color[c] = {0.5, 0.5};
      break;
    case 2:
      for (const auto& c : colors) n.cm.by_color[c] = {0.2, 0.8};
      break;
    default:
      // Asymmetric: first color capped, the rest floored.
      for (std::size_t i = 0; i < colors.size(); ++i)
        n.cm.by_color[colors[i]] =
            i == 0 ? std::make_pair(0.0, 0.6) : std::make_pair(0.25, 1.0);
      break;
  }
  return n;
}

UtilityModel make_model(int which) {
  if (which == 0) return theorem1_model(1.0);
  UtilityModel m;
  if (which == 1) {
    m.base.distance = DistanceKind::linear;
    m.base.offset = 5.0;
    m.base.outcome = OutcomeKind::center_label;
    m.base.w_distance = 1.0;
    m.base.w_outcome = 2.0;
  } else {
    m.base.distance = DistanceKind::neg_identity;
    m.base.outcome = OutcomeKind::constant;
    m.base.constant = 1.0;
    // One point that only cares about distance.
    PointModel pm;
    pm.distance = DistanceKind::neg_identity;
    pm.outcome = OutcomeKind::constant;
    pm.constant = 0.0;
    pm.w_distance = 2.0;
    m.overrides[0] = pm;
  }
  return m;
}

}  // namespace

std::vector<RandomCase> random_cases(std::uint64_t seed, int count) {
  static const NotionKind kFamilies[] = {NotionKind::cm, NotionKind::eq,
                                         NotionKind::sf, NotionKind::wc};
  static const Objective kObjectives[] = {
      Objective::k_center, Objective::k_median, Objective::k_means};
  static const double kAlphas[] = {1.0, 1.5, 2.0, 3.0};

  std::vector<RandomCase> cases;
  cases.reserve(count);
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + i + 1);
    RandomCase rc;
    rc.objective = kObjectives[i % 3];
    rc.family = kFamilies[i % 4];
    const int n = 4 + draw(rng, 5);
    rc.k = 1 + draw(rng, 3);

    InstanceData data;
    const int dim = (i % 2) + 1;
    for (int j = 0; j < n; ++j) {
      if (j >= 1 && draw(rng, 5) == 0) {
        data.coords.push_back(data.coords[draw(rng, j)]);
      } else {
        std::vector<double> x(dim);
        for (int t = 0; t < dim; ++t) x[t] = draw(rng, 41) / 4.0;
        data.coords.push_back(std::move(x));
      }
      // Both colors always present: point 0 red, point 1 blue.
      data.colors.push_back(j == 0   ? "red"
                            : j == 1 ? "blue"
                            : draw(rng, 2) ? "blue"
                                           : "red");
    }

    if (rc.family == NotionKind::eq) {
      rc.notion.kind = NotionKind::eq;
      rc.notion.eq.alpha = kAlphas[draw(rng, 4)];
      data.similarity_sets.assign(n, {});
      for (int j = 0; j < n; ++j) {
        const int style = draw(rng, 4);
        if (style == 0) {
          // Self-only set: the ratio bound is vacuously satisfied.
          data.similarity_sets[j].push_back(j);
          continue;
        }
        if (style == 3) {
          // Everyone, self included.
          for (int t = 0; t < n; ++t) data.similarity_sets[j].push_back(t);
          continue;
        }
        const int peers = 1 + draw(rng, 2);
        for (int t = 0; t < peers; ++t) {
          const int p = draw(rng, n);
          bool dup = false;
          for (const int q : data.similarity_sets[j]) dup |= (q == p);
          if (!dup) data.similarity_sets[j].push_back(p);
        }
      }
    } else if (rc.family == NotionKind::cm) {
      // Bounds drawn after colors so the rng stream stays aligned.
    } else if (rc.family == NotionKind::wc) {
      rc.model = make_model((i / 4) % 3);
      if ((i / 4) % 3 == 1) {
        // Partial labelling exercises the labeled-centers restriction.
        for (int j = 0; j < n; ++j)
          if (draw(rng, 10) < 7) data.outcome_labels[j] = draw(rng, 5) / 2.0;
      }
    }

    rc.inst = build_instance(data);
    if (rc.family == NotionKind::cm) {
      rc.notion = make_cm(rng, rc.inst.color_names);
    } else if (rc.family == NotionKind::sf) {
      rc.notion.kind = NotionKind::sf;
      rc.notion.sf.p = 1 + draw(rng, 2);
    }

    char name[64];
    std::snprintf(name, sizeof(name), "case_%03d_%s_%s", i,
                  notion_name(rc.family).c_str(),
                  objective_name(rc.objective).c_str());
    rc.name = name;
    cases.push_back(std::move(rc));
  }
  return cases;
}

}  // namespace fairclust
