#include "fbmax/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "fbmax/version.hpp"

namespace fbmax::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_header_comment(const ConfigEcho& config) {
  std::string out = "# fbmax " + std::string(kVersion) + "\n";
  for (const auto& [k, v] : config) {
    out += "# " + k + "=" + v + "\n";
  }
  return out;
}

json config_json(const ConfigEcho& config) {
  json j = json::object();
  j["version"] = kVersion;
  for (const auto& [k, v] : config) j[k] = v;
  return j;
}

json to_json(const bounds::Condition& c) {
  return json{{"name", c.name},
              {"required", c.required},
              {"actual", c.actual},
              {"satisfied", c.satisfied}};
}

json to_json(const bounds::BoundReport& r) {
  json conditions = json::array();
  for (const auto& c : r.conditions) conditions.push_back(to_json(c));
  return json{{"kind", bounds::to_string(r.kind)},
              {"value", r.value},
              {"valid", r.valid},
              {"conditions", conditions},
              {"notes", r.notes}};
}

json to_json(const mc::McEstimate& e) {
  return json{{"mean", e.mean},
              {"std_err", e.std_err},
              {"n_samples", e.n_samples},
              {"ci_halfwidth_95", e.ci_halfwidth_95},
              {"seed", e.seed},
              {"method", mc::to_string(e.method)}};
}

json to_json(const mc::IncrementEstimate& e) {
  return json{{"coarse", to_json(e.coarse)},
              {"fine", to_json(e.fine)},
              {"diff_mean", e.diff_mean},
              {"diff_std_err", e.diff_std_err},
              {"coupling_violations", e.coupling_violations}};
}

json to_json(const mc::DeltaProxy& p) {
  return json{{"proxy", p.proxy},
              {"se", p.se},
              {"coarse", to_json(p.coarse)},
              {"fine", to_json(p.fine)}};
}

json to_json(const mc::ChatterjeeCheck& c) {
  return json{{"lhs", c.lhs}, {"lhs_se", c.lhs_se}, {"rhs", c.rhs}, {"holds", c.holds}};
}

json to_json(const mc::IidMaxEstimate& e) {
  return json{{"estimate", to_json(e.estimate)}, {"bound", e.bound}};
}

json to_json(const bounds::ValidityRegion& r) {
  json j{{"n_lower", r.n_lower},
         {"n_upper", r.n_upper},
         {"feasible_integers", r.feasible_integers},
         {"truncated", r.truncated}};
  if (!r.published_interval.empty()) j["published_interval"] = r.published_interval;
  return j;
}

std::string paths_to_csv(const std::vector<FbmPath>& paths, const ConfigEcho& config) {
  std::string out = csv_header_comment(config);
  out += "path_id,t,value\n";
  for (std::size_t p = 0; p < paths.size(); ++p) {
    const FbmPath& path = paths[p];
    for (std::size_t i = 0; i < path.size(); ++i) {
      out += std::to_string(p) + "," + format_double(path.time(i)) + "," +
             format_double(path.values[i]) + "\n";
    }
  }
  return out;
}

std::string path_to_csv(const FbmPath& path, const ConfigEcho& config) {
  std::string out = csv_header_comment(config);
  out += "t,value\n";
  for (std::size_t i = 0; i < path.size(); ++i) {
    out += format_double(path.time(i)) + "," + format_double(path.values[i]) + "\n";
  }
  return out;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& payload) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!f) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace fbmax::io
