#include <doctest.h>

#include <vector>

#include "boxtrack/lifecycle.hpp"

using namespace boxtrack;

namespace {

Track make_track(int id, int age, int t_so, const Box& box) {
  Track t;
  t.id = id;
  t.kstate = kalman_initiate(box, KalmanParams{});
  t.age = age;
  t.time_since_observed = t_so;
  return t;
}

}  // namespace

TEST_CASE("tracklet_confidence follows the age/staleness/area form") {
  Track t = make_track(1, 10, 2, Box{0, 0, 20, 10});
  // age 10, t_so 2, area 200, avg 100 -> (10/2) * 2 = 10
  CHECK(tracklet_confidence(t, Box{0, 0, 20, 10}, 100.0) == doctest::Approx(10.0));

  Track young = make_track(2, 2, 2, Box{0, 0, 10, 10});
  CHECK(tracklet_confidence(young, Box{0, 0, 10, 10}, 100.0) == doctest::Approx(1.0));

  // Doubling the staleness halves the confidence.
  Track stale = make_track(3, 10, 4, Box{0, 0, 20, 10});
  CHECK(tracklet_confidence(stale, Box{0, 0, 20, 10}, 100.0) == doctest::Approx(5.0));
}

TEST_CASE("tracklet_confidence rejects matched tracks") {
  Track t = make_track(1, 5, 0, Box{0, 0, 10, 10});
  CHECK_THROWS_AS(tracklet_confidence(t, Box{0, 0, 10, 10}, 100.0), std::logic_error);
}

TEST_CASE("a mature fully covered track is flagged occluded") {
  TrackerConfig config;
  std::vector<Track> tracks;
  tracks.push_back(make_track(1, 20, 1, Box{100, 100, 40, 80}));  // covered
  tracks.push_back(make_track(2, 20, 0, Box{100, 100, 60, 120})); // coverer (matched)

  const std::vector<std::pair<int, Box>> predicted = {
      {1, Box{100, 100, 40, 80}},
      {2, Box{100, 100, 60, 120}},
  };
  const std::vector<int> unmatched = {1};
  const OcclusionOutcome out = detect_occlusions(tracks, unmatched, predicted, config);
  CHECK(out.occluded == std::vector<int>{1});
  CHECK(out.remaining.empty());
  CHECK(tracks[0].status == TrackStatus::Occluded);
}

TEST_CASE("an isolated track is never occluded regardless of confidence") {
  TrackerConfig config;
  std::vector<Track> tracks;
  tracks.push_back(make_track(1, 100, 1, Box{100, 100, 40, 80}));
  tracks.push_back(make_track(2, 100, 0, Box{500, 400, 40, 80}));

  const std::vector<std::pair<int, Box>> predicted = {
      {1, Box{100, 100, 40, 80}},
      {2, Box{500, 400, 40, 80}},
  };
  const OcclusionOutcome out =
      detect_occlusions(tracks, std::vector<int>{1}, predicted, config);
  CHECK(out.occluded.empty());
  CHECK(out.remaining == std::vector<int>{1});
}

TEST_CASE("a newborn small track under another box fails the confidence gate") {
  TrackerConfig config;  // confidence gate 2.0
  std::vector<Track> tracks;
  // age 2, t_so 1, area a tenth of the average: C = 2 * 0.1 = 0.2 < 2.
  tracks.push_back(make_track(1, 2, 1, Box{100, 100, 10, 13}));
  tracks.push_back(make_track(2, 50, 0, Box{100, 100, 36, 72}));

  std::vector<std::pair<int, Box>> predicted = {
      {1, Box{100, 100, 10, 13}},
      {2, Box{100, 100, 36, 72}},
  };
  // Average area: (130 + 2592) / 2 = 1361; normalized area of track 1 is
  // ~0.0955, so C = (2/1) * 0.0955 < 2 even though it is fully covered.
  const OcclusionOutcome out =
      detect_occlusions(tracks, std::vector<int>{1}, predicted, config);
  CHECK(out.occluded.empty());
  CHECK(out.remaining == std::vector<int>{1});
}

TEST_CASE("an uncovered lost track is removed after the patience runs out") {
  TrackerConfig config;  // patience 3
  std::vector<Track> tracks;
  tracks.push_back(make_track(1, 10, 1, Box{100, 100, 40, 80}));
  const std::vector<std::pair<int, Box>> predicted = {{1, Box{100, 100, 40, 80}}};

  for (int round = 1; round <= 3; ++round) {
    const PruneOutcome out =
        prune_tracklets(tracks, std::vector<int>{1}, predicted, config);
    if (round < 3) {
      CHECK(out.kept == std::vector<int>{1});
      CHECK(tracks.size() == 1);
      CHECK(tracks[0].uncovered_streak == round);
      CHECK(tracks[0].status == TrackStatus::Lost);
    } else {
      CHECK(out.removed == std::vector<int>{1});
      CHECK(tracks.empty());
    }
  }
}

TEST_CASE("a covered track survives indefinitely") {
  TrackerConfig config;
  std::vector<Track> tracks;
  tracks.push_back(make_track(1, 10, 1, Box{100, 100, 40, 80}));
  tracks.push_back(make_track(2, 10, 0, Box{100, 100, 60, 120}));
  const std::vector<std::pair<int, Box>> predicted = {
      {1, Box{100, 100, 40, 80}},
      {2, Box{100, 100, 60, 120}},
  };
  for (int round = 0; round < 20; ++round) {
    const PruneOutcome out =
        prune_tracklets(tracks, std::vector<int>{1}, predicted, config);
    CHECK(out.kept == std::vector<int>{1});
    CHECK(tracks[0].uncovered_streak == 0);
  }
  CHECK(tracks.size() == 2);
}

TEST_CASE("the uncovered streak resets on covered frames") {
  TrackerConfig config;
  std::vector<Track> tracks;
  tracks.push_back(make_track(1, 10, 1, Box{100, 100, 40, 80}));

  const std::vector<std::pair<int, Box>> uncovered = {{1, Box{100, 100, 40, 80}}};
  const std::vector<std::pair<int, Box>> covered = {
      {1, Box{100, 100, 40, 80}},
      {2, Box{100, 100, 60, 120}},
  };

  // below / above / below / below -> streak 1, 0, 1, 2: still alive.
  prune_tracklets(tracks, std::vector<int>{1}, uncovered, config);
  CHECK(tracks[0].uncovered_streak == 1);
  prune_tracklets(tracks, std::vector<int>{1}, covered, config);
  CHECK(tracks[0].uncovered_streak == 0);
  prune_tracklets(tracks, std::vector<int>{1}, uncovered, config);
  CHECK(tracks[0].uncovered_streak == 1);
  prune_tracklets(tracks, std::vector<int>{1}, uncovered, config);
  CHECK(tracks[0].uncovered_streak == 2);
  CHECK(tracks.size() == 1);
  CHECK(tracks[0].uncovered_streak < config.prune_patience);
}

TEST_CASE("with occlusion handling off, pruning falls back to staleness") {
  TrackerConfig config;
  config.occlusion_handling = false;
  std::vector<Track> tracks;
  // Covered, but three frames unobserved: removed under the fallback rule.
  tracks.push_back(make_track(1, 10, 3, Box{100, 100, 40, 80}));
  tracks.push_back(make_track(2, 10, 0, Box{100, 100, 60, 120}));
  const std::vector<std::pair<int, Box>> predicted = {
      {1, Box{100, 100, 40, 80}},
      {2, Box{100, 100, 60, 120}},
  };
  const PruneOutcome out =
      prune_tracklets(tracks, std::vector<int>{1}, predicted, config);
  CHECK(out.removed == std::vector<int>{1});
  CHECK(tracks.size() == 1);
}

TEST_CASE("create_tracklets gates on the new-track score") {
  TrackerConfig config;  // new_track_score 0.8
  int next_id = 5;
  const std::vector<Detection> dets = {
      Detection{Box{10, 10, 5, 5}, 0.95, 1},
      Detection{Box{50, 50, 5, 5}, 0.5, 1},
      Detection{Box{90, 90, 5, 5}, 0.85, 1},
  };
  const std::vector<Track> born = create_tracklets(dets, config, next_id);
  REQUIRE(born.size() == 2);
  CHECK(born[0].id == 5);
  CHECK(born[1].id == 6);
  CHECK(born[0].id < born[1].id);
  CHECK(next_id == 7);
  for (const Track& t : born) {
    CHECK(t.age == 1);
    CHECK(t.time_since_observed == 0);
    CHECK(t.status == TrackStatus::Active);
  }
  CHECK(kalman_state_to_box(born[0].kstate) == Box{10, 10, 5, 5});
}

TEST_CASE("create_tracklets never reuses ids across calls") {
  TrackerConfig config;
  int next_id = 1;
  std::vector<int> seen;
  for (int round = 0; round < 5; ++round) {
    const std::vector<Detection> dets = {
        Detection{Box{10, 10, 5, 5}, 0.9, round + 1},
        Detection{Box{50, 50, 5, 5}, 0.9, round + 1},
    };
    for (const Track& t : create_tracklets(dets, config, next_id)) {
      for (int id : seen) CHECK(id != t.id);
      if (!seen.empty()) CHECK(t.id > seen.back());
      seen.push_back(t.id);
    }
  }
  CHECK(seen.size() == 10);
}
