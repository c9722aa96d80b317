#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "boxtrack/mot_io.hpp"

namespace boxtrack {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One synthetic trajectory: alive on frames [birth, death], box translated
// by (vu, vv) per frame. List order encodes depth: targets later in the
// list are nearer the camera and cover earlier ones.
struct TargetSpec {
  int birth = 1;
  int death = 1;
  Box box;
  double vu = 0.0;
  double vv = 0.0;
};

// Step change of the camera: every box (ground truth, detections, false
// positives) from `frame` on is shifted by (du, dv).
struct PanEvent {
  int frame = 1;
  double du = 0.0;
  double dv = 0.0;
};

// True-positive scores are a clipped Gaussian scaled by the target's
// visibility, so fully visible targets score high and covered ones slide
// into the low-score band. False positives concentrate below 0.1.
struct ScoreModel {
  double tp_mean = 0.85;
  double tp_std = 0.1;
  double tp_min = 0.82;
  double tp_max = 0.99;
  double fp_mean = 0.07;
  double fp_std = 0.05;
  double fp_max = 0.2;
};

struct ScenarioSpec {
  std::string name = "scenario";
  int frames = 0;
  std::uint64_t seed = 1;
  double field_w = 960.0;
  double field_h = 540.0;
  double noise = 0.0;      // center/size jitter std as a fraction of box size
  double fp_rate = 0.0;    // expected false positives per frame
  double miss_rate = 0.0;  // per-box probability of producing no detection
  ScoreModel score;
  std::vector<TargetSpec> targets;
  std::vector<PanEvent> pans;

  void validate() const;  // throws ScenarioError
};

struct FrameDiagnostics {
  double pan_du = 0.0;  // cumulative camera offset at this frame
  double pan_dv = 0.0;
  int false_positives = 0;
  int misses = 0;
};

struct SyntheticSequence {
  GtStream gt;  // visibility = 1 - cover by nearer targets
  DetectionStream dets;
  std::map<int, FrameDiagnostics> diagnostics;
};

// Deterministic given the spec (including its seed). Targets covered above
// 0.7 by a nearer target miss with elevated probability; cover of 0.95 or
// more never yields a detection.
SyntheticSequence generate(const ScenarioSpec& spec);

// The four frozen scenarios the verification suite runs on:
// static_separated, pan_burst, crossing_occlusion, dense_noisy.
std::vector<ScenarioSpec> standard_suite();

// Human-editable key = value text form of a spec, with repeated `target`
// and `pan` keys. Parse errors carry line numbers.
ScenarioSpec parse_scenario(std::istream& in, const std::string& origin = "<stream>");
ScenarioSpec load_scenario(const std::filesystem::path& path);
std::string serialize_scenario(const ScenarioSpec& spec);

// Writes gt.txt, det.txt, scenario.txt and info.txt into dir.
void write_scenario_files(const std::filesystem::path& dir, const ScenarioSpec& spec,
                          const SyntheticSequence& seq);

}  // namespace boxtrack
