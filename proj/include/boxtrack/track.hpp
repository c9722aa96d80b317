#pragma once

#include "boxtrack/kalman.hpp"

namespace boxtrack {

// Active: matched (or born) this frame. Occluded: unmatched but judged
// hidden behind another track, still reported. Lost: unmatched and not
// occluded, kept silently for possible re-acquisition.
enum class TrackStatus { Active, Occluded, Lost };

struct Track {
  int id = 0;  // unique within a run, never reused
  KalmanState kstate;
  int age = 1;                  // frames since birth, inclusive
  int time_since_observed = 0;  // consecutive unmatched frames
  int uncovered_streak = 0;     // consecutive uncovered-and-unmatched frames
  TrackStatus status = TrackStatus::Active;
  double last_score = 0.0;      // score of the most recent matched detection
};

}  // namespace boxtrack
