#pragma once

#include <map>
#include <string>
#include <vector>

namespace fairclust {

// A finite metric instance.  Distances are always materialized as a full
// matrix; coords are kept alongside when the instance came from point
// coordinates (some features, e.g. separability audits, need them).
struct Instance {
  int n = 0;
  std::vector<std::vector<double>> dist;    // n x n, symmetric, zero diagonal
  std::vector<std::vector<double>> coords;  // empty when matrix-given
  std::vector<std::string> color_names;     // sorted unique color labels
  std::vector<int> color;                   // per point, index into color_names
  std::vector<std::vector<int>> similarity; // optional, per point, sorted
  std::map<int, double> outcome_labels;     // optional, point -> label
  std::vector<int> class_labels;            // optional, per point, +1 / -1
  std::map<std::string, std::string> metadata;

  double d(int i, int j) const { return dist[i][j]; }
  int num_colors() const { return static_cast<int>(color_names.size()); }
  bool has_coords() const { return !coords.empty(); }
  bool has_similarity() const { return !similarity.empty(); }
  bool has_class_labels() const { return !class_labels.empty(); }

  // Point ids grouped by color, each list ascending.
  std::vector<std::vector<int>> points_by_color() const;
};

// Raw, unvalidated inputs for build_instance.  Exactly one of coords/matrix
// must be present.
struct InstanceData {
  std::vector<std::vector<double>> coords;
  std::vector<std::vector<double>> matrix;
  std::vector<std::string> colors;  // one label per point
  std::vector<std::vector<int>> similarity_sets;
  std::map<int, double> outcome_labels;
  std::vector<int> class_labels;
  std::map<std::string, std::string> metadata;
};

struct BuildOptions {
  bool check_triangle = true;
  double tol = 1e-9;
};

// Validates and normalizes.  Throws InvalidParams (or a subtype: MetricViolation,
// ColorMissing) on bad input.  Similarity sets are sorted and deduped but
// otherwise stored exactly as given; membership of the point itself is the
// caller's choice.
Instance build_instance(const InstanceData& data, const BuildOptions& opts = {});

// A stack of `count` coincident points sharing one color, used by the figure
// generators and handy for tests.
struct StackSpec {
  std::vector<double> location;
  int count = 1;
  std::string color;
};

// Expands stacks (in order) into an InstanceData with coords and colors filled.
InstanceData from_stacks(const std::vector<StackSpec>& stacks);

// Zero-distance classes: points i, j share a location iff d(i,j) == 0.
// Returned groups are sorted by their lowest member id; each group ascending.
std::vector<std::vector<int>> locations(const Instance& inst);

// location_of[i] = index of i's group in locations(inst).
std::vector<int> location_of(const Instance& inst);

}  // namespace fairclust
