#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "boxtrack/assignment.hpp"

using boxtrack::MatchResult;
using boxtrack::solve_assignment;

namespace {

double objective(const Eigen::MatrixXd& sim, const MatchResult& result) {
  double total = 0.0;
  for (const auto& [r, c] : result.matches) total += sim(r, c);
  return total;
}

// Exhaustive oracle: best total similarity over all one-to-one assignments
// of min(rows, cols) pairs. Entries must be non-negative.
double brute_force_max(const Eigen::MatrixXd& sim) {
  const int rows = static_cast<int>(sim.rows());
  const int cols = static_cast<int>(sim.cols());
  std::vector<int> used_cols;
  double best = 0.0;
  auto recurse = [&](auto&& self, int row, int assigned, double total) -> void {
    const int remaining_rows = rows - row;
    const int want = std::min(rows, cols);
    if (assigned + remaining_rows < want) return;  // cannot complete
    if (row == rows) {
      best = std::max(best, total);
      return;
    }
    for (int c = 0; c < cols; ++c) {
      if (std::find(used_cols.begin(), used_cols.end(), c) != used_cols.end()) continue;
      used_cols.push_back(c);
      self(self, row + 1, assigned + 1, total + sim(row, c));
      used_cols.pop_back();
    }
    if (rows > cols) self(self, row + 1, assigned, total);  // row left unmatched
  };
  recurse(recurse, 0, 0, 0.0);
  return best;
}

void check_valid(const Eigen::MatrixXd& sim, const MatchResult& result) {
  std::vector<char> row_seen(sim.rows(), 0), col_seen(sim.cols(), 0);
  for (const auto& [r, c] : result.matches) {
    REQUIRE(r >= 0);
    REQUIRE(r < sim.rows());
    REQUIRE(c >= 0);
    REQUIRE(c < sim.cols());
    CHECK_FALSE(row_seen[r]);
    CHECK_FALSE(col_seen[c]);
    row_seen[r] = 1;
    col_seen[c] = 1;
  }
  for (int r : result.unmatched_rows) {
    CHECK_FALSE(row_seen[r]);
    row_seen[r] = 1;
  }
  for (int c : result.unmatched_cols) {
    CHECK_FALSE(col_seen[c]);
    col_seen[c] = 1;
  }
  CHECK(std::count(row_seen.begin(), row_seen.end(), 1) == sim.rows());
  CHECK(std::count(col_seen.begin(), col_seen.end(), 1) == sim.cols());
}

}  // namespace

TEST_CASE("diagonal dominance is matched on the diagonal") {
  Eigen::MatrixXd sim(2, 2);
  sim << 0.9, 0.1, 0.1, 0.9;
  const MatchResult result = solve_assignment(sim, 0.0);
  REQUIRE(result.matches.size() == 2);
  CHECK(result.matches[0] == std::pair<int, int>{0, 0});
  CHECK(result.matches[1] == std::pair<int, int>{1, 1});
  CHECK(result.unmatched_rows.empty());
  CHECK(result.unmatched_cols.empty());
}

TEST_CASE("the gate demotes below-threshold pairs") {
  Eigen::MatrixXd sim(1, 1);
  sim << 0.9;
  const MatchResult result = solve_assignment(sim, 0.95);
  CHECK(result.matches.empty());
  CHECK(result.unmatched_rows == std::vector<int>{0});
  CHECK(result.unmatched_cols == std::vector<int>{0});
}

TEST_CASE("empty similarity matrices leave everything unmatched") {
  CHECK(solve_assignment(Eigen::MatrixXd(0, 0), 0.0).matches.empty());

  const MatchResult no_cols = solve_assignment(Eigen::MatrixXd::Zero(3, 0), 0.0);
  CHECK(no_cols.matches.empty());
  CHECK(no_cols.unmatched_rows == std::vector<int>{0, 1, 2});

  const MatchResult no_rows = solve_assignment(Eigen::MatrixXd::Zero(0, 2), 0.0);
  CHECK(no_rows.matches.empty());
  CHECK(no_rows.unmatched_cols == std::vector<int>{0, 1});
}

TEST_CASE("matches equal the brute-force permutation optimum") {
  // Dyadic similarities (k/64) make both objective sums exact in binary,
  // so the comparison below is legitimately bitwise.
  std::mt19937 rng(20240101);
  std::uniform_int_distribution<int> dim(1, 7);
  std::uniform_int_distribution<int> numerator(0, 64);
  for (int instance = 0; instance < 400; ++instance) {
    const int rows = dim(rng), cols = dim(rng);
    Eigen::MatrixXd sim(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) sim(r, c) = numerator(rng) / 64.0;
    }
    const MatchResult result = solve_assignment(sim, -1.0);
    check_valid(sim, result);
    CHECK(objective(sim, result) == brute_force_max(sim));
  }
}

TEST_CASE("the solver prefers more feasible matches over a single better one") {
  // Taking (0,0) alone scores 0.9; the solver must instead cover both rows.
  Eigen::MatrixXd sim(2, 2);
  sim << 0.9, 0.5, 0.6, -5.0;
  const MatchResult result = solve_assignment(sim, 0.0);
  REQUIRE(result.matches.size() == 2);
  CHECK(objective(sim, result) == doctest::Approx(1.1));
}

TEST_CASE("deterministic: identical input gives identical output") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  Eigen::MatrixXd sim(6, 5);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 5; ++c) sim(r, c) = val(rng);
  const MatchResult a = solve_assignment(sim, 0.0);
  const MatchResult b = solve_assignment(sim, 0.0);
  CHECK(a.matches == b.matches);
  CHECK(a.unmatched_rows == b.unmatched_rows);
  CHECK(a.unmatched_cols == b.unmatched_cols);
}

TEST_CASE("an all-infeasible matrix matches nothing") {
  Eigen::MatrixXd sim = Eigen::MatrixXd::Constant(3, 3, -1.0);
  const MatchResult result = solve_assignment(sim, 0.0);
  CHECK(result.matches.empty());
  CHECK(result.unmatched_rows.size() == 3);
  CHECK(result.unmatched_cols.size() == 3);
}
