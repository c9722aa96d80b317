#include "boxtrack/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace boxtrack {

namespace {

struct Field {
  std::string key;
  std::function<std::string(const TrackerConfig&)> get;
  std::function<void(TrackerConfig&, const std::string&)> set;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid numeric value for " + key + ": '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer value for " + key + ": '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  throw ConfigError("invalid boolean value for " + key + ": '" + value + "'");
}

std::vector<Field> make_fields() {
  std::vector<Field> fields;
  auto dbl = [&](const std::string& key, double TrackerConfig::* member) {
    fields.push_back({key, [member](const TrackerConfig& c) { return format_double(c.*member); },
                      [member, key](TrackerConfig& c, const std::string& v) {
                        c.*member = parse_double(key, v);
                      }});
  };
  auto bol = [&](const std::string& key, bool TrackerConfig::* member) {
    fields.push_back({key,
                      [member](const TrackerConfig& c) {
                        return std::string(c.*member ? "true" : "false");
                      },
                      [member, key](TrackerConfig& c, const std::string& v) {
                        c.*member = parse_bool(key, v);
                      }});
  };
  auto kdbl = [&](const std::string& key, double KalmanParams::* member) {
    fields.push_back(
        {key, [member](const TrackerConfig& c) { return format_double(c.kalman.*member); },
         [member, key](TrackerConfig& c, const std::string& v) {
           c.kalman.*member = parse_double(key, v);
         }});
  };

  dbl("high_score", &TrackerConfig::high_score);
  dbl("low_score", &TrackerConfig::low_score);
  dbl("new_track_score", &TrackerConfig::new_track_score);
  dbl("covered_ratio_gate", &TrackerConfig::covered_ratio_gate);
  dbl("confidence_gate", &TrackerConfig::confidence_gate);
  dbl("stage1_min_niou", &TrackerConfig::stage1_min_niou);
  dbl("stage2_min_niou", &TrackerConfig::stage2_min_niou);
  fields.push_back({"prune_patience",
                    [](const TrackerConfig& c) { return std::to_string(c.prune_patience); },
                    [](TrackerConfig& c, const std::string& v) {
                      c.prune_patience = parse_int("prune_patience", v);
                    }});
  bol("camera_motion_removal", &TrackerConfig::camera_motion_removal);
  bol("occlusion_handling", &TrackerConfig::occlusion_handling);
  bol("low_score_stage", &TrackerConfig::low_score_stage);
  bol("carry_unmatched_detections", &TrackerConfig::carry_unmatched_detections);
  bol("trimmed_shift_mean", &TrackerConfig::trimmed_shift_mean);
  kdbl("kalman_measurement_pos_weight", &KalmanParams::measurement_pos_weight);
  kdbl("kalman_measurement_aspect_std", &KalmanParams::measurement_aspect_std);
  kdbl("kalman_process_pos_weight", &KalmanParams::process_pos_weight);
  kdbl("kalman_process_aspect_std", &KalmanParams::process_aspect_std);
  kdbl("kalman_process_vel_weight", &KalmanParams::process_vel_weight);
  kdbl("kalman_process_aspect_vel_std", &KalmanParams::process_aspect_vel_std);
  kdbl("kalman_initial_velocity_var_scale", &KalmanParams::initial_velocity_var_scale);
  return fields;
}

const std::vector<Field>& fields() {
  static const std::vector<Field> f = make_fields();
  return f;
}

const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> a = {
      {"L_h", "high_score"},         {"L_l", "low_score"},
      {"L_n", "new_track_score"},    {"L_cr", "covered_ratio_gate"},
      {"L_c", "confidence_gate"},
  };
  return a;
}

const Field* find_field(std::string_view key) {
  std::string k{key};
  if (auto it = aliases().find(k); it != aliases().end()) k = it->second;
  for (const Field& f : fields()) {
    if (f.key == k) return &f;
  }
  return nullptr;
}

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

}  // namespace

void TrackerConfig::validate() const {
  if (!(low_score < high_score)) {
    throw ConfigError("low_score (L_l) must be strictly below high_score (L_h)");
  }
  if (high_score > 1.0 || new_track_score > 1.0) {
    throw ConfigError("score thresholds must not exceed 1");
  }
  if (!(covered_ratio_gate > 0.0 && covered_ratio_gate < 1.0)) {
    throw ConfigError("covered_ratio_gate (L_cr) must lie in (0, 1)");
  }
  if (!(confidence_gate > 0.0)) {
    throw ConfigError("confidence_gate (L_c) must be positive");
  }
  if (prune_patience < 1) {
    throw ConfigError("prune_patience must be at least 1");
  }
}

TrackerConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());

  TrackerConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": expected key = value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    const Field* field = find_field(key);
    if (field == nullptr) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": unknown config key '" + key + "'");
    }
    field->set(config, value);
  }
  config.validate();
  return config;
}

std::string serialize_config(const TrackerConfig& config) {
  std::ostringstream out;
  for (const Field& f : fields()) {
    out << f.key << " = " << f.get(config) << "\n";
  }
  return out.str();
}

void apply_override(TrackerConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override must have the form key=value: '" +
                      std::string(assignment) + "'");
  }
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  const Field* field = find_field(key);
  if (field == nullptr) throw ConfigError("unknown config key '" + key + "'");
  field->set(config, value);
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const Field& f : fields()) keys.push_back(f.key);
  return keys;
}

std::vector<std::pair<std::string, std::string>> config_items(
    const TrackerConfig& config) {
  std::vector<std::pair<std::string, std::string>> items;
  for (const Field& f : fields()) items.emplace_back(f.key, f.get(config));
  return items;
}

}  // namespace boxtrack
