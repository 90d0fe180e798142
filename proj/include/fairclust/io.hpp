#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fairclust/audit.hpp"
#include "fairclust/clustering.hpp"
#include "fairclust/fairness.hpp"
#include "fairclust/instance.hpp"
#include "fairclust/solver.hpp"
#include "fairclust/welfare.hpp"

namespace fairclust {

// Finite values stay numbers; infinities and NaN become the strings "inf",
// "-inf", "nan" (JSON has no encoding for them and nlohmann would emit null).
nlohmann::json json_number(double v);

nlohmann::json instance_to_json(const Instance& inst);
InstanceData instance_data_from_json(const nlohmann::json& j);
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json clustering_to_json(const Clustering& c);
Clustering clustering_from_json(const nlohmann::json& j);

// Deliberately excludes search statistics: node and timing counters vary
// with thread scheduling while reports must be byte-stable.
nlohmann::json solve_report_to_json(const SolveReport& rep);

nlohmann::json welfare_to_json(const WelfareReport& rep);
nlohmann::json pof_to_json(const PofReport& rep);
nlohmann::json comparison_to_json(const std::vector<ComparisonRow>& rows);
std::string comparison_to_csv(const std::vector<ComparisonRow>& rows,
                              const std::vector<std::string>& color_names);
nlohmann::json confusion_to_json(const OutlierConfusion& conf);
nlohmann::json separability_to_json(
    const std::vector<SeparabilityResult>& results);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// dump(2) plus a trailing newline; the byte layout reports are compared on.
void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json parse_json(const std::string& text);
nlohmann::json load_json_file(const std::string& path);

Instance load_instance(const std::string& path);
void save_instance(const std::string& path, const Instance& inst);

}  // namespace fairclust
