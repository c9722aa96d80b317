#include "boxtrack/tracker.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace boxtrack {

namespace {

Track& track_by_id(std::vector<Track>& tracks, int id) {
  const auto it = std::find_if(tracks.begin(), tracks.end(),
                               [id](const Track& t) { return t.id == id; });
  if (it == tracks.end()) throw std::logic_error("unknown track id");
  return *it;
}

const Box& box_by_id(std::span<const std::pair<int, Box>> boxes, int id) {
  const auto it = std::find_if(boxes.begin(), boxes.end(),
                               [id](const auto& e) { return e.first == id; });
  if (it == boxes.end()) throw std::logic_error("no box for track id");
  return it->second;
}

}  // namespace

Tracker::Tracker(TrackerConfig config) : config_(std::move(config)) {
  config_.validate();
}

FrameResult Tracker::step(int frame, std::span<const Detection> dets) {
  if (frame < 1) {
    throw std::invalid_argument("frame indices are 1-based, got " +
                                std::to_string(frame));
  }
  if (last_frame_ != 0 && frame <= last_frame_) {
    throw std::invalid_argument("frames must be strictly increasing: got " +
                                std::to_string(frame) + " after " +
                                std::to_string(last_frame_));
  }
  for (const Detection& det : dets) {
    if (det.frame != frame) {
      throw std::invalid_argument("detection carries frame " +
                                  std::to_string(det.frame) + " inside frame " +
                                  std::to_string(frame));
    }
  }
  last_frame_ = frame;

  std::vector<Detection> work(dets.begin(), dets.end());
  const std::size_t carried_begin = work.size();
  for (Detection det : carried_) {
    det.frame = frame;
    work.push_back(det);
  }
  carried_.clear();

  // Predict every live track into this frame; a state that stops describing
  // a box is force-dropped.
  std::vector<std::pair<int, Box>> predicted;
  predicted.reserve(tracks_.size());
  for (auto it = tracks_.begin(); it != tracks_.end();) {
    it->age += 1;
    it->kstate = kalman_predict(it->kstate, config_.kalman);
    if (kalman_degenerate(it->kstate)) {
      it = tracks_.erase(it);
      continue;
    }
    predicted.emplace_back(it->id, kalman_state_to_box(it->kstate));
    ++it;
  }

  MatchResult result;
  CameraMotionEstimate shift;
  if (config_.camera_motion_removal) {
    CompensatedMatch cm = rematch_with_compensation(work, predicted, config_);
    result = std::move(cm.result);
    shift = cm.shift;
  } else {
    result = cascade_match(work, predicted, config_);
  }

  // All downstream geometry (occlusion, pruning, occluded reporting) runs on
  // the compensated predictions; the Kalman correction below uses the raw
  // detection, which absorbs the shift through the normal update.
  const std::vector<std::pair<int, Box>> compensated = apply_shift(predicted, shift);

  FrameResult out;
  out.frame = frame;

  for (const auto& [track_id, det_index] : result.matches) {
    Track& track = track_by_id(tracks_, track_id);
    const Detection& det = work[static_cast<std::size_t>(det_index)];
    track.kstate = kalman_correct(track.kstate, det.box, config_.kalman);
    track.time_since_observed = 0;
    track.uncovered_streak = 0;
    track.status = TrackStatus::Active;
    track.last_score = det.score;
    out.records.push_back({track_id, det.box, TrackStatus::Active, det.score});
  }

  for (int id : result.unmatched_rows) {
    track_by_id(tracks_, id).time_since_observed += 1;
  }

  std::vector<int> occluded;
  std::vector<int> remaining;
  if (config_.occlusion_handling) {
    OcclusionOutcome occ =
        detect_occlusions(tracks_, result.unmatched_rows, compensated, config_);
    occluded = std::move(occ.occluded);
    remaining = std::move(occ.remaining);
  } else {
    remaining = result.unmatched_rows;
  }
  for (int id : occluded) {
    out.records.push_back({id, box_by_id(compensated, id), TrackStatus::Occluded,
                           track_by_id(tracks_, id).last_score});
  }

  prune_tracklets(tracks_, remaining, compensated, config_);

  std::vector<Detection> unmatched_dets;
  unmatched_dets.reserve(result.unmatched_cols.size());
  for (int det_index : result.unmatched_cols) {
    unmatched_dets.push_back(work[static_cast<std::size_t>(det_index)]);
  }
  const std::vector<Track> born = create_tracklets(unmatched_dets, config_, next_id_);
  std::size_t born_index = 0;
  for (const Detection& det : unmatched_dets) {
    if (det.score > config_.new_track_score) {
      const Track& track = born[born_index++];
      out.records.push_back({track.id, det.box, TrackStatus::Active, det.score});
      tracks_.push_back(track);
    }
  }

  if (config_.carry_unmatched_detections) {
    // Sub-threshold leftovers get exactly one more chance, next frame.
    for (int det_index : result.unmatched_cols) {
      const auto index = static_cast<std::size_t>(det_index);
      if (index < carried_begin &&
          work[index].score <= config_.new_track_score) {
        carried_.push_back(work[index]);
      }
    }
  }

  std::sort(out.records.begin(), out.records.end(),
            [](const TrackRecord& a, const TrackRecord& b) { return a.id < b.id; });
  return out;
}

std::vector<FrameResult> run_sequence(const DetectionStream& stream,
                                      const TrackerConfig& config) {
  std::vector<FrameResult> results;
  if (stream.empty()) return results;

  Tracker tracker(config);
  const int first = stream.begin()->first;
  const int last = stream.rbegin()->first;
  results.reserve(static_cast<std::size_t>(last - first + 1));
  static const std::vector<Detection> kNoDetections;
  for (int frame = first; frame <= last; ++frame) {
    const auto it = stream.find(frame);
    const std::vector<Detection>& dets =
        it == stream.end() ? kNoDetections : it->second;
    try {
      results.push_back(tracker.step(frame, dets));
    } catch (const std::exception& err) {
      throw std::runtime_error("frame " + std::to_string(frame) + ": " + err.what());
    }
  }
  return results;
}

}  // namespace boxtrack
