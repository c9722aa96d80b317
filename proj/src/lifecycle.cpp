#include "boxtrack/lifecycle.hpp"

#include <algorithm>
#include <stdexcept>

namespace boxtrack {

namespace {

Track& track_by_id(std::vector<Track>& tracks, int id) {
  const auto it = std::find_if(tracks.begin(), tracks.end(),
                               [id](const Track& t) { return t.id == id; });
  if (it == tracks.end()) throw std::logic_error("unknown track id");
  return *it;
}

const Box& predicted_box(std::span<const std::pair<int, Box>> all_predicted, int id) {
  const auto it =
      std::find_if(all_predicted.begin(), all_predicted.end(),
                   [id](const auto& entry) { return entry.first == id; });
  if (it == all_predicted.end()) throw std::logic_error("no predicted box for track");
  return it->second;
}

double covered_by_others(std::span<const std::pair<int, Box>> all_predicted, int id) {
  std::vector<Box> others;
  others.reserve(all_predicted.size());
  for (const auto& [other_id, box] : all_predicted) {
    if (other_id != id) others.push_back(box);
  }
  return covered_ratio(predicted_box(all_predicted, id), others);
}

double average_area(std::span<const std::pair<int, Box>> all_predicted) {
  double sum = 0.0;
  for (const auto& [id, box] : all_predicted) sum += box.area();
  return sum / static_cast<double>(all_predicted.size());
}

}  // namespace

double tracklet_confidence(const Track& track, const Box& predicted_box,
                           double avg_area) {
  if (track.time_since_observed < 1) {
    throw std::logic_error("tracklet_confidence requires an unmatched track");
  }
  if (!(avg_area > 0.0)) {
    throw std::logic_error("tracklet_confidence requires a positive average area");
  }
  return (static_cast<double>(track.age) /
          static_cast<double>(track.time_since_observed)) *
         (predicted_box.area() / avg_area);
}

OcclusionOutcome detect_occlusions(std::vector<Track>& tracks,
                                   std::span<const int> unmatched_ids,
                                   std::span<const std::pair<int, Box>> all_predicted,
                                   const TrackerConfig& config) {
  OcclusionOutcome outcome;
  if (unmatched_ids.empty()) return outcome;

  const double avg_area = average_area(all_predicted);
  for (int id : unmatched_ids) {
    Track& track = track_by_id(tracks, id);
    const Box& box = predicted_box(all_predicted, id);
    const double cr = covered_by_others(all_predicted, id);
    if (cr > config.covered_ratio_gate &&
        tracklet_confidence(track, box, avg_area) > config.confidence_gate) {
      track.status = TrackStatus::Occluded;
      track.uncovered_streak = 0;
      outcome.occluded.push_back(id);
    } else {
      outcome.remaining.push_back(id);
    }
  }
  return outcome;
}

PruneOutcome prune_tracklets(std::vector<Track>& tracks,
                             std::span<const int> remaining_ids,
                             std::span<const std::pair<int, Box>> all_predicted,
                             const TrackerConfig& config) {
  PruneOutcome outcome;
  for (int id : remaining_ids) {
    Track& track = track_by_id(tracks, id);
    bool remove = false;
    if (config.occlusion_handling) {
      const double cr = covered_by_others(all_predicted, id);
      if (cr <= config.covered_ratio_gate) {
        ++track.uncovered_streak;
      } else {
        track.uncovered_streak = 0;
      }
      remove = track.uncovered_streak >= config.prune_patience;
    } else {
      remove = track.time_since_observed >= config.prune_patience;
    }
    if (remove) {
      outcome.removed.push_back(id);
    } else {
      track.status = TrackStatus::Lost;
      outcome.kept.push_back(id);
    }
  }
  std::erase_if(tracks, [&](const Track& t) {
    return std::find(outcome.removed.begin(), outcome.removed.end(), t.id) !=
           outcome.removed.end();
  });
  return outcome;
}

std::vector<Track> create_tracklets(std::span<const Detection> unmatched_dets,
                                    const TrackerConfig& config, int& next_id) {
  std::vector<Track> born;
  for (const Detection& det : unmatched_dets) {
    if (det.score > config.new_track_score) {
      Track track;
      track.id = next_id++;
      track.kstate = kalman_initiate(det.box, config.kalman);
      track.age = 1;
      track.time_since_observed = 0;
      track.uncovered_streak = 0;
      track.status = TrackStatus::Active;
      track.last_score = det.score;
      born.push_back(track);
    }
  }
  return born;
}

}  // namespace boxtrack
