#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "boxtrack/assignment.hpp"
#include "boxtrack/config.hpp"
#include "boxtrack/detection.hpp"

namespace boxtrack {

// Indices into the original detection list, order preserved per bucket:
// high carries scores > high_thr, low carries scores in (low_thr, high_thr],
// discarded everything at or below low_thr.
struct ScoreBuckets {
  std::vector<std::size_t> high;
  std::vector<std::size_t> low;
  std::vector<std::size_t> discarded;
};

ScoreBuckets split_by_score(std::span<const Detection> dets, double high_thr,
                            double low_thr);

// Two-stage association for one frame. Stage 1 runs high-score detections
// against every track under the permissive stage1 gate; stage 2 runs
// low-score detections against only the tracks stage 1 left unmatched,
// under the stricter stage2 gate. In the returned MatchResult, rows are
// track ids (taken from `predicted`) and columns are indices into `dets`.
// Discarded detections appear nowhere in the result.
MatchResult cascade_match(std::span<const Detection> dets,
                          std::span<const std::pair<int, Box>> predicted,
                          const TrackerConfig& config);

}  // namespace boxtrack
