#pragma once

#include "boxtrack/geometry.hpp"

namespace boxtrack {

// One detector output box. Scores live in [0, 1]; frames are 1-based.
struct Detection {
  Box box;
  double score = 0.0;
  int frame = 0;
};

}  // namespace boxtrack
