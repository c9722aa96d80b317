#include "boxtrack/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace boxtrack {

namespace {

// Min-cost perfect assignment on a square matrix via shortest augmenting
// paths with potentials, O(n^3). Returns row -> column.
std::vector<int> solve_square_min_cost(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> col_to_row(n + 1, 0), way(n + 1, 0);

  for (int i = 1; i <= n; ++i) {
    col_to_row[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = col_to_row[j0];
      int j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[col_to_row[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (col_to_row[j0] != 0);
    do {
      const int j1 = way[j0];
      col_to_row[j0] = col_to_row[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (col_to_row[j] >= 1) row_to_col[col_to_row[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

MatchResult solve_assignment(const Eigen::MatrixXd& similarity, double min_similarity) {
  const int rows = static_cast<int>(similarity.rows());
  const int cols = static_cast<int>(similarity.cols());

  MatchResult result;
  auto all_unmatched = [&] {
    for (int i = 0; i < rows; ++i) result.unmatched_rows.push_back(i);
    for (int j = 0; j < cols; ++j) result.unmatched_cols.push_back(j);
    return result;
  };
  if (rows == 0 || cols == 0) return all_unmatched();

  auto feasible = [&](int i, int j) {
    const double s = similarity(i, j);
    return std::isfinite(s) && s >= min_similarity;
  };

  // Costs are (max feasible similarity - similarity) so the min-cost solution
  // maximizes total similarity. Infeasible pairs and padding cells share one
  // sentinel cost exceeding any feasible total, which makes the solver fill
  // as many feasible pairs as possible before resorting to them.
  double max_sim = -std::numeric_limits<double>::infinity();
  double feasible_cost_bound = 1.0;
  int feasible_count = 0;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (feasible(i, j)) {
        max_sim = std::max(max_sim, similarity(i, j));
        ++feasible_count;
      }
    }
  }
  if (feasible_count == 0) return all_unmatched();
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (feasible(i, j)) feasible_cost_bound += max_sim - similarity(i, j);
    }
  }

  const int n = std::max(rows, cols);
  Eigen::MatrixXd cost = Eigen::MatrixXd::Constant(n, n, feasible_cost_bound);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (feasible(i, j)) cost(i, j) = max_sim - similarity(i, j);
    }
  }

  const std::vector<int> row_to_col = solve_square_min_cost(cost);

  std::vector<char> col_matched(cols, 0);
  for (int i = 0; i < rows; ++i) {
    const int j = row_to_col[i];
    if (j >= 0 && j < cols && feasible(i, j)) {
      result.matches.emplace_back(i, j);
      col_matched[j] = 1;
    } else {
      result.unmatched_rows.push_back(i);
    }
  }
  for (int j = 0; j < cols; ++j) {
    if (!col_matched[j]) result.unmatched_cols.push_back(j);
  }
  return result;
}

}  // namespace boxtrack
