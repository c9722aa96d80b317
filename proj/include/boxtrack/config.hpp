#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "boxtrack/kalman.hpp"

namespace boxtrack {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every threshold of the pipeline. The short aliases (L_h, L_l, L_n, L_cr,
// L_c) accepted by the config file and --set are the conventional symbols
// for these thresholds; the fields carry descriptive names.
struct TrackerConfig {
  double high_score = 0.6;       // L_h: detections above it enter stage 1
  double low_score = 0.1;        // L_l: detections at or below it are discarded
  double new_track_score = 0.8;  // L_n: minimum score to start a track
  double covered_ratio_gate = 0.7;  // L_cr: covered-ratio threshold
  double confidence_gate = 2.0;     // L_c: tracklet-confidence threshold

  double stage1_min_niou = 0.0;  // permissive gate for high-score matching
  double stage2_min_niou = 0.4;  // strict gate for low-score matching

  int prune_patience = 3;  // consecutive uncovered frames before removal

  bool camera_motion_removal = true;
  bool occlusion_handling = true;
  bool low_score_stage = true;
  bool carry_unmatched_detections = false;
  bool trimmed_shift_mean = false;

  KalmanParams kalman;

  // Throws ConfigError when thresholds are inconsistent.
  void validate() const;
};

// Flat key = value text format; '#' starts a comment. Unknown keys are an
// error so typos do not silently fall back to defaults.
TrackerConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const TrackerConfig& config);

// Applies one "key=value" override (the --set form).
void apply_override(TrackerConfig& config, std::string_view assignment);

// All recognized keys, in serialization order.
std::vector<std::string> config_keys();

// (key, value) pairs in serialization order; values parse back losslessly.
std::vector<std::pair<std::string, std::string>> config_items(const TrackerConfig& config);

}  // namespace boxtrack
