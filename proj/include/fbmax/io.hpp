#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fbmax/bounds.hpp"
#include "fbmax/montecarlo.hpp"
#include "fbmax/types.hpp"

namespace fbmax::io {

using json = nlohmann::ordered_json;

/// 17 significant digits; round-trip safe for binary64.
std::string format_double(double v);

/// RFC-4180 style quoting when the field contains a comma, quote or newline.
std::string csv_escape(const std::string& field);

/// Ordered key/value pairs echoed into every output artifact.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// "# key=value" comment lines, plus the artifact version.
std::string csv_header_comment(const ConfigEcho& config);
json config_json(const ConfigEcho& config);

json to_json(const bounds::Condition& c);
json to_json(const bounds::BoundReport& r);
json to_json(const mc::McEstimate& e);
json to_json(const mc::IncrementEstimate& e);
json to_json(const mc::DeltaProxy& p);
json to_json(const mc::ChatterjeeCheck& c);
json to_json(const mc::IidMaxEstimate& e);
json to_json(const bounds::ValidityRegion& r);

/// Long-format path dump: header `path_id,t,value`, 17 significant digits.
std::string paths_to_csv(const std::vector<FbmPath>& paths, const ConfigEcho& config);

/// Single-path dump: header `t,value`.
std::string path_to_csv(const FbmPath& path, const ConfigEcho& config);

/// Writes the whole payload or nothing (temp file + rename).
void write_text_atomic(const std::filesystem::path& path, const std::string& payload);

}  // namespace fbmax::io
