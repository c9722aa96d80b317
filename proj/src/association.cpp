#include "boxtrack/association.hpp"

#include <algorithm>
#include <stdexcept>

namespace boxtrack {

ScoreBuckets split_by_score(std::span<const Detection> dets, double high_thr,
                            double low_thr) {
  if (!(low_thr < high_thr)) {
    throw ConfigError("score split requires low threshold < high threshold");
  }
  ScoreBuckets buckets;
  for (std::size_t i = 0; i < dets.size(); ++i) {
    if (dets[i].score > high_thr) {
      buckets.high.push_back(i);
    } else if (dets[i].score > low_thr) {
      buckets.low.push_back(i);
    } else {
      buckets.discarded.push_back(i);
    }
  }
  return buckets;
}

namespace {

Eigen::MatrixXd niou_matrix(std::span<const Detection> dets,
                            std::span<const std::size_t> det_indices,
                            std::span<const std::pair<int, Box>> predicted,
                            std::span<const std::size_t> track_indices) {
  Eigen::MatrixXd m(track_indices.size(), det_indices.size());
  for (std::size_t r = 0; r < track_indices.size(); ++r) {
    const Box& pred = predicted[track_indices[r]].second;
    for (std::size_t c = 0; c < det_indices.size(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          niou(dets[det_indices[c]].box, pred);
    }
  }
  return m;
}

}  // namespace

MatchResult cascade_match(std::span<const Detection> dets,
                          std::span<const std::pair<int, Box>> predicted,
                          const TrackerConfig& config) {
  ScoreBuckets buckets = split_by_score(dets, config.high_score, config.low_score);
  if (!config.low_score_stage) buckets.low.clear();

  std::vector<std::size_t> all_tracks(predicted.size());
  for (std::size_t i = 0; i < predicted.size(); ++i) all_tracks[i] = i;

  const Eigen::MatrixXd s1 = niou_matrix(dets, buckets.high, predicted, all_tracks);
  const MatchResult stage1 = solve_assignment(s1, config.stage1_min_niou);

  std::vector<std::size_t> leftover_tracks;
  leftover_tracks.reserve(stage1.unmatched_rows.size());
  for (int r : stage1.unmatched_rows) {
    leftover_tracks.push_back(static_cast<std::size_t>(r));
  }

  const Eigen::MatrixXd s2 = niou_matrix(dets, buckets.low, predicted, leftover_tracks);
  const MatchResult stage2 = solve_assignment(s2, config.stage2_min_niou);

  MatchResult merged;
  for (const auto& [r, c] : stage1.matches) {
    merged.matches.emplace_back(predicted[static_cast<std::size_t>(r)].first,
                                static_cast<int>(buckets.high[static_cast<std::size_t>(c)]));
  }
  for (const auto& [r, c] : stage2.matches) {
    merged.matches.emplace_back(
        predicted[leftover_tracks[static_cast<std::size_t>(r)]].first,
        static_cast<int>(buckets.low[static_cast<std::size_t>(c)]));
  }
  for (int r : stage2.unmatched_rows) {
    merged.unmatched_rows.push_back(
        predicted[leftover_tracks[static_cast<std::size_t>(r)]].first);
  }
  for (int c : stage1.unmatched_cols) {
    merged.unmatched_cols.push_back(static_cast<int>(buckets.high[static_cast<std::size_t>(c)]));
  }
  for (int c : stage2.unmatched_cols) {
    merged.unmatched_cols.push_back(static_cast<int>(buckets.low[static_cast<std::size_t>(c)]));
  }
  std::sort(merged.unmatched_cols.begin(), merged.unmatched_cols.end());
  return merged;
}

}  // namespace boxtrack
