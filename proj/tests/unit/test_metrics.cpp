#include <doctest.h>

#include <vector>

#include "boxtrack/metrics.hpp"

using namespace boxtrack;

namespace {

GtEntry gt_at(int id, double u, double v, double w = 30, double h = 60) {
  return GtEntry{id, Box{u, v, w, h}, 1.0};
}

ResultEntry hyp_at(int id, double u, double v, double w = 30, double h = 60) {
  return ResultEntry{id, Box{u, v, w, h}, 0.9};
}

// Two well-separated targets over five frames.
GtStream two_target_gt() {
  GtStream gt;
  for (int f = 1; f <= 5; ++f) {
    gt[f] = {gt_at(1, 100.0 + 2 * f, 100), gt_at(2, 400.0, 300.0 + f)};
  }
  return gt;
}

ResultStream mirror(const GtStream& gt) {
  ResultStream hyp;
  for (const auto& [frame, entries] : gt) {
    for (const GtEntry& e : entries) {
      hyp[frame].push_back(ResultEntry{e.id + 50, e.box, 0.9});
    }
  }
  return hyp;
}

}  // namespace

TEST_CASE("a perfect result scores MOTA 1 and IDF1 1 with all targets MT") {
  const GtStream gt = two_target_gt();
  const SequenceMetrics m = evaluate_sequence(gt, mirror(gt));
  CHECK(m.mota == 1.0);
  CHECK(m.idf1 == 1.0);
  CHECK(m.motp == doctest::Approx(1.0));
  CHECK(m.fp == 0);
  CHECK(m.fn == 0);
  CHECK(m.ids == 0);
  CHECK(m.fm == 0);
  CHECK(m.mt == 2);
  CHECK(m.ml == 0);
  CHECK(m.gt_total == 10);
}

TEST_CASE("the FP/FN/IDS fixture lands on MOTA 0.600 exactly") {
  // gt_total 10; results miss target 2 on frames 3-4 (2 FN), add a spurious
  // box on frame 2 (1 FP), and flip target 1's id on frame 4 (1 IDS).
  const GtStream gt = two_target_gt();
  ResultStream hyp;
  for (int f = 1; f <= 5; ++f) {
    const int id1 = f < 4 ? 11 : 13;  // identity flip at frame 4
    hyp[f].push_back(hyp_at(id1, 100.0 + 2 * f, 100));
    if (f != 3 && f != 4) hyp[f].push_back(hyp_at(12, 400.0, 300.0 + f));
  }
  hyp[2].push_back(hyp_at(99, 800, 500));  // far from everything

  const SequenceMetrics m = clear_mot(gt, hyp);
  CHECK(m.gt_total == 10);
  CHECK(m.fp == 1);
  CHECK(m.fn == 2);
  CHECK(m.ids == 1);
  CHECK(m.mota == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(m.fm == 1);  // target 2: matched, gap, matched again
}

TEST_CASE("an id flip with continuous coverage counts one switch, no fragmentation") {
  GtStream gt;
  ResultStream hyp;
  for (int f = 1; f <= 5; ++f) {
    gt[f] = {gt_at(1, 100, 100)};
    hyp[f] = {hyp_at(f < 3 ? 7 : 8, 100, 100)};  // flip at frame 3
  }
  const SequenceMetrics m = clear_mot(gt, hyp);
  CHECK(m.ids == 1);
  CHECK(m.fm == 0);
  CHECK(m.fn == 0);
  CHECK(m.fp == 0);
}

TEST_CASE("correspondence carry-over survives a better-overlapping newcomer") {
  // Frame 2 introduces a second hypothesis sitting slightly closer to the
  // target; the carried correspondence must win as long as it still clears
  // the threshold.
  GtStream gt;
  ResultStream hyp;
  gt[1] = {gt_at(1, 100, 100)};
  hyp[1] = {hyp_at(5, 102, 100)};
  gt[2] = {gt_at(1, 100, 100)};
  hyp[2] = {hyp_at(5, 102, 100), hyp_at(6, 100, 100)};
  const SequenceMetrics m = clear_mot(gt, hyp);
  CHECK(m.ids == 0);
  CHECK(m.fp == 1);  // the newcomer goes unmatched on frame 2
}

TEST_CASE("a split trajectory scores IDF1 one half") {
  // One 10-frame target covered 5 frames by hyp 1 and 5 frames by hyp 2.
  GtStream gt;
  ResultStream hyp;
  for (int f = 1; f <= 10; ++f) {
    gt[f] = {gt_at(3, 200, 200)};
    hyp[f] = {hyp_at(f <= 5 ? 1 : 2, 200, 200)};
  }
  CHECK(idf1_score(gt, hyp) == doctest::Approx(0.5).epsilon(1e-12));
  const SequenceMetrics m = evaluate_sequence(gt, hyp);
  CHECK(m.idtp == 5);
  CHECK(m.idfp == 5);
  CHECK(m.idfn == 5);
}

TEST_CASE("empty results mean pure false negatives and IDF1 zero") {
  const GtStream gt = two_target_gt();
  const ResultStream hyp;
  const SequenceMetrics m = evaluate_sequence(gt, hyp);
  CHECK(m.fn == m.gt_total);
  CHECK(m.fp == 0);
  CHECK(m.ids == 0);
  CHECK(m.mota == doctest::Approx(1.0 - static_cast<double>(m.fn) /
                                            static_cast<double>(m.gt_total)));
  CHECK(m.idf1 == 0.0);
  CHECK(m.ml == 2);
}

TEST_CASE("appending an FP box weakly decreases MOTA") {
  const GtStream gt = two_target_gt();
  ResultStream hyp = mirror(gt);
  const double base = clear_mot(gt, hyp).mota;
  hyp[3].push_back(hyp_at(77, 700, 100));
  const double with_fp = clear_mot(gt, hyp).mota;
  CHECK(with_fp < base);
  CHECK(with_fp == doctest::Approx(base - 0.1));  // 1 FP over 10 gt boxes
}

TEST_CASE("deleting k result boxes adds exactly k false negatives") {
  const GtStream gt = two_target_gt();
  ResultStream hyp = mirror(gt);
  hyp[2].pop_back();
  hyp[4].pop_back();
  hyp[5].pop_back();
  const SequenceMetrics m = clear_mot(gt, hyp);
  CHECK(m.fn == 3);
  CHECK(m.fp == 0);
}

TEST_CASE("idf1 is symmetric for identical box sets") {
  GtStream gt;
  ResultStream hyp;
  for (int f = 1; f <= 8; ++f) {
    gt[f] = {gt_at(1, 100, 100), gt_at(2, 300, 100)};
    hyp[f] = {hyp_at(9, 100, 100), hyp_at(8, 300, 100)};
  }
  GtStream gt_swapped;
  ResultStream hyp_swapped;
  for (int f = 1; f <= 8; ++f) {
    gt_swapped[f] = {gt_at(9, 100, 100), gt_at(8, 300, 100)};
    hyp_swapped[f] = {hyp_at(1, 100, 100), hyp_at(2, 300, 100)};
  }
  CHECK(idf1_score(gt, hyp) == idf1_score(gt_swapped, hyp_swapped));
}

TEST_CASE("empty ground truth is an error") {
  const GtStream gt;
  ResultStream hyp;
  hyp[1] = {hyp_at(1, 100, 100)};
  CHECK_THROWS_AS(clear_mot(gt, hyp), MetricsError);
  CHECK_THROWS_AS(idf1_score(gt, hyp), MetricsError);
}

TEST_CASE("aggregation sums counts and recomputes the rates") {
  const GtStream gt = two_target_gt();
  const SequenceMetrics perfect = evaluate_sequence(gt, mirror(gt));

  ResultStream degraded = mirror(gt);
  degraded[2].pop_back();
  const SequenceMetrics worse = evaluate_sequence(gt, degraded);

  const std::vector<SequenceMetrics> both{perfect, worse};
  const SequenceMetrics total = aggregate_metrics(both);
  CHECK(total.gt_total == 20);
  CHECK(total.fn == worse.fn);
  CHECK(total.mota == doctest::Approx(1.0 - static_cast<double>(total.fp + total.fn +
                                                                total.ids) /
                                                20.0));
  CHECK(total.idtp == perfect.idtp + worse.idtp);
  const double pooled =
      2.0 * static_cast<double>(total.idtp) /
      static_cast<double>(2 * total.idtp + total.idfp + total.idfn);
  CHECK(total.idf1 == doctest::Approx(pooled));
}
