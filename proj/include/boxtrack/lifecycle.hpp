#pragma once

#include <span>
#include <utility>
#include <vector>

#include "boxtrack/config.hpp"
#include "boxtrack/detection.hpp"
#include "boxtrack/track.hpp"

namespace boxtrack {

// Maturity-and-size evidence that an unobserved track still exists:
// (age / time_since_observed) * (area of its predicted box / avg_area).
// Only unmatched tracks are scored; time_since_observed must be >= 1.
double tracklet_confidence(const Track& track, const Box& predicted_box,
                           double avg_area);

struct OcclusionOutcome {
  std::vector<int> occluded;   // ids flagged Occluded (reported this frame)
  std::vector<int> remaining;  // unmatched ids that stay on the prune path
};

// Flags an unmatched track as Occluded when its predicted box is dominantly
// covered by another track's predicted box AND its confidence clears the
// gate. avg_area is taken over every live predicted box.
OcclusionOutcome detect_occlusions(std::vector<Track>& tracks,
                                   std::span<const int> unmatched_ids,
                                   std::span<const std::pair<int, Box>> all_predicted,
                                   const TrackerConfig& config);

struct PruneOutcome {
  std::vector<int> kept;     // survivors, now status Lost
  std::vector<int> removed;  // ids erased from the track table
};

// Streak bookkeeping and removal for unmatched, non-occluded tracks. While
// covered (ratio above the gate) a track is kept indefinitely; once it has
// been uncovered for prune_patience consecutive unmatched frames it is
// removed. With occlusion handling disabled the rule falls back to the
// classic fixed patience on time_since_observed.
PruneOutcome prune_tracklets(std::vector<Track>& tracks,
                             std::span<const int> remaining_ids,
                             std::span<const std::pair<int, Box>> all_predicted,
                             const TrackerConfig& config);

// One new Active track per detection scoring above new_track_score, with
// ids drawn from next_id (strictly increasing, never reused).
std::vector<Track> create_tracklets(std::span<const Detection> unmatched_dets,
                                    const TrackerConfig& config, int& next_id);

}  // namespace boxtrack
