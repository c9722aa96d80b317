#pragma once

#include <span>
#include <utility>
#include <vector>

#include "boxtrack/association.hpp"

namespace boxtrack {

// Global detection-vs-prediction displacement for one frame. Signed means:
// compensating a prediction ADDS (du, dv) to it, which moves predictions
// onto the detections.
struct CameraMotionEstimate {
  double du = 0.0;
  double dv = 0.0;
  int support = 0;  // matched pairs the mean was taken over
};

// Mean center displacement (detection - prediction) over matched pairs.
// `trimmed` drops the top/bottom 10% per axis before averaging (only when
// at least 5 pairs are available). Empty input yields the zero estimate.
CameraMotionEstimate estimate_shift(
    std::span<const std::pair<Box, Box>> matched_det_pred, bool trimmed = false);

// Translates every predicted box by the estimate; sizes are untouched.
std::vector<std::pair<int, Box>> apply_shift(
    std::span<const std::pair<int, Box>> predicted,
    const CameraMotionEstimate& shift);

struct CompensatedMatch {
  MatchResult result;
  CameraMotionEstimate shift;
};

// First cascade pass on the raw predictions; shift estimated from its
// matches; second cascade pass from scratch on the shifted predictions over
// all tracks and all non-discarded detections. With zero pass-1 matches the
// first pass stands and the shift stays zero.
CompensatedMatch rematch_with_compensation(
    std::span<const Detection> dets,
    std::span<const std::pair<int, Box>> predicted, const TrackerConfig& config);

}  // namespace boxtrack
