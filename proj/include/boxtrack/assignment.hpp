#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <utility>
#include <vector>

namespace boxtrack {

// One association pass. For solve_assignment the entries are raw row and
// column indices of the similarity matrix; cascade_match re-expresses rows
// as track ids and columns as indices into the frame's detection list.
struct MatchResult {
  std::vector<std::pair<int, int>> matches;  // (row/track-id, column/detection)
  std::vector<int> unmatched_rows;
  std::vector<int> unmatched_cols;
};

// Maximum-total-similarity one-to-one assignment between rows and columns.
// Pairs whose similarity falls below `min_similarity` are infeasible: the
// solver avoids them while matching as many feasible pairs as possible, and
// any forced leftover is demoted to unmatched on both sides. Deterministic:
// ties are resolved by the fixed row-scan order.
MatchResult solve_assignment(const Eigen::MatrixXd& similarity, double min_similarity);

}  // namespace boxtrack
