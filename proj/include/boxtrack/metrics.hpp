#pragma once

#include <span>
#include <stdexcept>

#include "boxtrack/mot_io.hpp"

namespace boxtrack {

class MetricsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SequenceMetrics {
  double mota = 0.0;  // 1 - (fp + fn + ids) / gt_total
  double motp = 0.0;  // mean IoU over matched pairs
  double idf1 = 0.0;

  long fp = 0;
  long fn = 0;
  long ids = 0;  // identity switches
  long fm = 0;   // fragmentations (matched -> unmatched -> matched)
  int mt = 0;    // trajectories matched in > 80% of their frames
  int ml = 0;    // trajectories matched in < 20% of their frames
  int gt_trajectories = 0;

  long gt_total = 0;   // ground-truth boxes
  long hyp_total = 0;  // hypothesis boxes
  long matched = 0;    // matched pairs (MOTP weighting)
  double matched_iou_sum = 0.0;

  long idtp = 0;
  long idfp = 0;
  long idfn = 0;
};

// CLEAR protocol: correspondences carry over between frames while the pair
// still overlaps at the threshold, remaining boxes are paired by
// maximum-IoU assignment. Identity fields (idf1/idtp/idfp/idfn) stay zero.
// Throws MetricsError when the ground truth is empty.
SequenceMetrics clear_mot(const GtStream& gt, const ResultStream& hyp,
                          double iou_threshold = 0.5);

// Trajectory-level identity score: one global bipartite matching between
// ground-truth and hypothesis trajectories maximizing the total number of
// per-frame overlaps at the threshold.
double idf1_score(const GtStream& gt, const ResultStream& hyp,
                  double iou_threshold = 0.5);

// clear_mot with the identity fields filled in.
SequenceMetrics evaluate_sequence(const GtStream& gt, const ResultStream& hyp,
                                  double iou_threshold = 0.5);

// Cross-sequence totals: counts summed, MOTA recomputed from the sums,
// IDF1 pooled over the summed identity counts.
SequenceMetrics aggregate_metrics(std::span<const SequenceMetrics> sequences);

}  // namespace boxtrack
