#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fairclust/clustering.hpp"
#include "fairclust/instance.hpp"

namespace fairclust {

// Per-color representation bounds l_h, u_h.  A cluster C satisfies them when
// l_h * |C| <= |C intersect color h| <= u_h * |C| for every color, compared
// exactly on the integer counts (no rounding, no tolerance).  Empty clusters
// satisfy everything vacuously.
struct CmBounds {
  std::map<std::string, std::pair<double, double>> by_color;

  // l = u = f for every color of the instance.
  static CmBounds uniform(const Instance& inst, double f);
  static CmBounds uniform(const Instance& inst, double lower, double upper);

  // Bounds aligned with inst.color_names; colors absent from the map get
  // [0, 1].  Throws InvalidParams on l > u or values outside [0, 1].
  std::vector<std::pair<double, double>> aligned(const Instance& inst) const;
};

struct EqSpec {
  double alpha = 1.0;  // must be >= 1
};

struct SfSpec {
  int p = 1;  // distance power, 1 or 2
};

enum class NotionKind { agnostic, cm, sf, eq, wc };

std::string notion_name(NotionKind kind);
NotionKind notion_from_name(const std::string& name);

struct Notion {
  NotionKind kind = NotionKind::agnostic;
  CmBounds cm;
  EqSpec eq;
  SfSpec sf;
};

struct CmViolation {
  int center = -1;       // cluster's center point
  std::string color;
  int count = 0;         // points of this color in the cluster
  int cluster_size = 0;
  double lower = 0.0, upper = 1.0;
};

struct EqViolation {
  int point = -1;
  double distance = 0.0;  // d(point, its center)
  double bound = 0.0;     // alpha * min over the point's similarity set
};

// Empty result means the clustering satisfies the bounds.
std::vector<CmViolation> check_cm(const Instance& inst, const Clustering& c,
                                  const CmBounds& bounds);

// Throws MissingSimilaritySets when the instance has none, InvalidParams when
// alpha < 1.
std::vector<EqViolation> check_eq(const Instance& inst, const Clustering& c,
                                  const EqSpec& eq);

// max over colors of the average p-th power distance within the color.
double sf_objective(const Instance& inst, const Clustering& c, const SfSpec& sf);

}  // namespace fairclust
