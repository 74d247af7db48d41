#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcr/relations.hpp"

namespace qcr::io {

using nlohmann::json;

/// State file: {"dims": [..], "re": [[..]], "im": [[..]]}, row-major.
DensityMatrix state_from_json(const json& j, const Tolerances& tol = {});
json state_to_json(const DensityMatrix& rho);

/// Measurement file: {"dim": d, "label": "..", "vectors_re": [[..]],
/// "vectors_im": [[..]]}, one row per basis vector.
ProjectiveMeasurement measurement_from_json(const json& j);
json measurement_to_json(const ProjectiveMeasurement& m);

/// Reads and parses a JSON file. Unreadable or malformed files raise BadInput.
json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

DensityMatrix load_state(const std::filesystem::path& path);
ProjectiveMeasurement load_measurement(const std::filesystem::path& path);

std::string to_string(BoundPolicy policy);
BoundPolicy bound_policy_from_string(const std::string& name);
std::string to_string(MultipartiteBSet set);
MultipartiteBSet b_set_from_string(const std::string& name);

/// Everything needed to evaluate one relation instance.
struct RelationInstance {
  RelationId relation_id = RelationId::EQ3;
  DensityMatrix state = DensityMatrix::maximally_mixed(1);
  std::vector<ProjectiveMeasurement> measurements;
  int measured = 0;
  /// Empty means every party other than `measured` (EQ7 and EQ9 only).
  std::vector<int> memory;
  RelationOptions options;
};

RelationReport evaluate(const RelationInstance& instance);

json report_to_json(const RelationReport& report);

/// Self-contained record of an instance and its report, enough to replay it.
json bundle_to_json(const RelationInstance& instance, const RelationReport& report);
RelationInstance bundle_from_json(const json& j);

}  // namespace qcr::io
