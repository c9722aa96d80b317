#include "boxtrack/camera_motion.hpp"

#include <algorithm>
#include <unordered_map>

namespace boxtrack {

namespace {

double mean(std::vector<double>& values, bool trimmed) {
  if (trimmed && values.size() >= 5) {
    std::sort(values.begin(), values.end());
    const auto drop = values.size() / 10;
    double sum = 0.0;
    for (std::size_t i = drop; i < values.size() - drop; ++i) sum += values[i];
    return sum / static_cast<double>(values.size() - 2 * drop);
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

CameraMotionEstimate estimate_shift(
    std::span<const std::pair<Box, Box>> matched_det_pred, bool trimmed) {
  CameraMotionEstimate est;
  if (matched_det_pred.empty()) return est;

  std::vector<double> du, dv;
  du.reserve(matched_det_pred.size());
  dv.reserve(matched_det_pred.size());
  for (const auto& [det, pred] : matched_det_pred) {
    du.push_back(det.u - pred.u);
    dv.push_back(det.v - pred.v);
  }
  est.du = mean(du, trimmed);
  est.dv = mean(dv, trimmed);
  est.support = static_cast<int>(matched_det_pred.size());
  return est;
}

std::vector<std::pair<int, Box>> apply_shift(
    std::span<const std::pair<int, Box>> predicted,
    const CameraMotionEstimate& shift) {
  std::vector<std::pair<int, Box>> out(predicted.begin(), predicted.end());
  for (auto& [id, box] : out) {
    box.u += shift.du;
    box.v += shift.dv;
  }
  return out;
}

CompensatedMatch rematch_with_compensation(
    std::span<const Detection> dets,
    std::span<const std::pair<int, Box>> predicted, const TrackerConfig& config) {
  CompensatedMatch out;
  out.result = cascade_match(dets, predicted, config);
  if (out.result.matches.empty()) return out;

  std::unordered_map<int, const Box*> box_by_id;
  box_by_id.reserve(predicted.size());
  for (const auto& [id, box] : predicted) box_by_id.emplace(id, &box);

  std::vector<std::pair<Box, Box>> pairs;
  pairs.reserve(out.result.matches.size());
  for (const auto& [track_id, det_index] : out.result.matches) {
    pairs.emplace_back(dets[static_cast<std::size_t>(det_index)].box,
                       *box_by_id.at(track_id));
  }
  out.shift = estimate_shift(pairs, config.trimmed_shift_mean);

  const std::vector<std::pair<int, Box>> shifted = apply_shift(predicted, out.shift);
  out.result = cascade_match(dets, shifted, config);
  return out;
}

}  // namespace boxtrack
