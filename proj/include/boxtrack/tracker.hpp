#pragma once

#include <map>
#include <span>
#include <vector>

#include "boxtrack/camera_motion.hpp"
#include "boxtrack/config.hpp"
#include "boxtrack/detection.hpp"
#include "boxtrack/lifecycle.hpp"
#include "boxtrack/track.hpp"

namespace boxtrack {

struct TrackRecord {
  int id = 0;
  Box box;
  TrackStatus status = TrackStatus::Active;
  double score = 0.0;
};

// Tracks reported for one frame: matched and newborn tracks at their
// detection box, occluded tracks at their compensated predicted box.
// Lost tracks are never reported.
struct FrameResult {
  int frame = 0;
  std::vector<TrackRecord> records;  // sorted by id, at most one per track
};

// Detections grouped per frame, keys ascending.
using DetectionStream = std::map<int, std::vector<Detection>>;

// One tracking state machine. step() calls must be strictly sequential and
// carry increasing frame indices; distinct sequences get distinct instances.
class Tracker {
 public:
  explicit Tracker(TrackerConfig config = {});

  // Runs the full per-frame pipeline: predict, cascade-match with camera
  // motion compensation, correct, occlusion detection, pruning, track
  // creation. An empty detection list is a valid (all-unmatched) frame.
  FrameResult step(int frame, std::span<const Detection> dets);

  const std::vector<Track>& tracks() const { return tracks_; }
  const TrackerConfig& config() const { return config_; }

 private:
  TrackerConfig config_;
  std::vector<Track> tracks_;
  std::vector<Detection> carried_;  // carry_unmatched_detections buffer
  int next_id_ = 1;
  int last_frame_ = 0;
};

// Folds step over the stream. Frame indices absent between the first and
// last present frame are processed as empty frames so tracks keep aging.
std::vector<FrameResult> run_sequence(const DetectionStream& stream,
                                      const TrackerConfig& config);

}  // namespace boxtrack
