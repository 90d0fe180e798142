#include "fairclust/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fairclust/errors.hpp"

namespace fairclust {

using nlohmann::json;

json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json instance_to_json(const Instance& inst) {
  json j;
  j["points"] = inst.n;
  if (inst.has_coords()) {
    j["coords"] = inst.coords;
  } else {
    j["matrix"] = inst.dist;
  }
  json colors = json::array();
  for (int c : inst.color) colors.push_back(inst.color_names[c]);
  j["colors"] = colors;
  if (inst.has_similarity()) j["similarity_sets"] = inst.similarity;
  if (!inst.outcome_labels.empty()) {
    json labels = json::object();
    for (const auto& [point, value] : inst.outcome_labels)
      labels[std::to_string(point)] = value;
    j["outcome_labels"] = labels;
  }
  if (inst.has_class_labels()) j["class_labels"] = inst.class_labels;
  if (!inst.metadata.empty()) j["metadata"] = inst.metadata;
  return j;
}

InstanceData instance_data_from_json(const json& j) {
  try {
    InstanceData data;
    if (j.contains("coords"))
      data.coords = j.at("coords").get<std::vector<std::vector<double>>>();
    if (j.contains("matrix"))
      data.matrix = j.at("matrix").get<std::vector<std::vector<double>>>();
    data.colors = j.at("colors").get<std::vector<std::string>>();
    if (j.contains("points") &&
        j.at("points").get<int>() != static_cast<int>(data.colors.size()))
      throw InvalidParams("declared point count does not match the data");
    if (j.contains("similarity_sets"))
      data.similarity_sets =
          j.at("similarity_sets").get<std::vector<std::vector<int>>>();
    if (j.contains("outcome_labels"))
      for (const auto& [key, value] : j.at("outcome_labels").items())
        data.outcome_labels[std::stoi(key)] = value.get<double>();
    if (j.contains("class_labels"))
      data.class_labels = j.at("class_labels").get<std::vector<int>>();
    if (j.contains("metadata"))
      data.metadata =
          j.at("metadata").get<std::map<std::string, std::string>>();
    return data;
  } catch (const json::exception& e) {
    throw InvalidParams(std::string("malformed instance JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw InvalidParams("malformed instance JSON: bad outcome label key");
  }
}

Instance instance_from_json(const json& j) {
  return build_instance(instance_data_from_json(j));
}

json clustering_to_json(const Clustering& c) {
  return json{{"centers", c.centers}, {"assignment", c.assignment}};
}

Clustering clustering_from_json(const json& j) {
  try {
    Clustering c;
    c.centers = j.at("centers").get<std::vector<int>>();
    c.assignment = j.at("assignment").get<std::vector<int>>();
    return c;
  } catch (const json::exception& e) {
    throw InvalidParams(std::string("malformed clustering JSON: ") + e.what());
  }
}

json solve_report_to_json(const SolveReport& rep) {
  json j;
  j["clustering"] = clustering_to_json(rep.clustering);
  j["value"] = json_number(rep.value);
  j["optimal"] = rep.optimal;
  j["achieved_ratio"] = json_number(rep.achieved_ratio);
  return j;
}

json welfare_to_json(const WelfareReport& rep) {
  json utilities = json::array();
  for (double u : rep.utility) utilities.push_back(json_number(u));
  json groups = json::object();
  for (const auto& [name, value] : rep.group_average)
    groups[name] = json_number(value);
  return json{{"utilities", utilities},
              {"total", json_number(rep.total)},
              {"group_average", groups},
              {"min_group", json_number(rep.min_group)}};
}

json pof_to_json(const PofReport& rep) {
  json groups = json::object();
  for (const auto& [name, g] : rep.groups)
    groups[name] = json{{"agnostic_cost", json_number(g.agnostic_cost)},
                        {"fair_cost", json_number(g.fair_cost)},
                        {"ratio", json_number(g.ratio)}};
  json j{{"objective", objective_name(rep.objective)},
         {"notion", notion_name(rep.notion)},
         {"agnostic_value", json_number(rep.agnostic_value)},
         {"fair_value", json_number(rep.fair_value)},
         {"pof", json_number(rep.pof)},
         {"groups", groups},
         {"agnostic_clustering", clustering_to_json(rep.agnostic_clustering)},
         {"fair_clustering", clustering_to_json(rep.fair_clustering)}};
  if (rep.sf_value_ratio) j["sf_value_ratio"] = json_number(*rep.sf_value_ratio);
  return j;
}

json comparison_to_json(const std::vector<ComparisonRow>& rows) {
  json arr = json::array();
  for (const auto& row : rows) {
    arr.push_back(json{{"notion", row.notion},
                       {"objective_value", json_number(row.objective_value)},
                       {"sf_value", json_number(row.sf_value)},
                       {"pof", json_number(row.pof)},
                       {"welfare", welfare_to_json(row.welfare)},
                       {"degraded_groups", row.degraded_groups},
                       {"clustering", clustering_to_json(row.clustering)}});
  }
  return arr;
}

namespace {

// CSV cells reuse the JSON number layout so both artifacts agree bytewise.
std::string csv_number(double v) {
  const json n = json_number(v);
  return n.is_string() ? n.get<std::string>() : n.dump();
}

}  // namespace

std::string comparison_to_csv(const std::vector<ComparisonRow>& rows,
                              const std::vector<std::string>& color_names) {
  std::ostringstream out;
  out << "notion,objective_value,sf_value,pof,total_welfare";
  for (const auto& name : color_names) out << ",U_" << name;
  out << ",min_group_welfare,degraded_groups\n";
  for (const auto& row : rows) {
    out << row.notion << ',' << csv_number(row.objective_value) << ','
        << csv_number(row.sf_value) << ',' << csv_number(row.pof) << ','
        << csv_number(row.welfare.total);
    for (const auto& name : color_names) {
      const auto it = row.welfare.group_average.find(name);
      out << ',';
      if (it != row.welfare.group_average.end()) out << csv_number(it->second);
    }
    out << ',' << csv_number(row.welfare.min_group) << ',';
    for (size_t i = 0; i < row.degraded_groups.size(); ++i) {
      if (i > 0) out << ';';
      out << row.degraded_groups[i];
    }
    out << '\n';
  }
  return out.str();
}

namespace {

json group_confusion_to_json(const GroupConfusion& g) {
  return json{{"fair_flagged", g.fair_flagged},
              {"agnostic_flagged", g.agnostic_flagged},
              {"false_positives", g.false_positives},
              {"false_negatives", g.false_negatives}};
}

}  // namespace

json confusion_to_json(const OutlierConfusion& conf) {
  json by_group = json::object();
  for (const auto& [name, g] : conf.by_group)
    by_group[name] = group_confusion_to_json(g);
  return json{{"rule",
               json{{"kind", outlier_kind_name(conf.rule.kind)},
                    {"value", json_number(conf.rule.value)}}},
              {"overall", group_confusion_to_json(conf.overall)},
              {"by_group", by_group}};
}

json separability_to_json(const std::vector<SeparabilityResult>& results) {
  json arr = json::array();
  for (const auto& r : results) {
    json j{{"center", r.center},
           {"members", r.members},
           {"positives", r.positives},
           {"negatives", r.negatives},
           {"separable", r.separable},
           {"margin", json_number(r.margin)}};
    if (r.separable) {
      json weights = json::array();
      for (double w : r.weights) weights.push_back(json_number(w));
      j["weights"] = weights;
      j["bias"] = json_number(r.bias);
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidParams("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidParams("cannot write file: " + path);
  out << content;
  if (!out) throw InvalidParams("write failed: " + path);
}

void write_json_file(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InvalidParams("malformed JSON");
  return j;
}

json load_json_file(const std::string& path) {
  return parse_json(read_text_file(path));
}

Instance load_instance(const std::string& path) {
  return instance_from_json(load_json_file(path));
}

void save_instance(const std::string& path, const Instance& inst) {
  write_json_file(path, instance_to_json(inst));
}

}  // namespace fairclust
