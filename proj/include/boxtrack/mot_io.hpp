#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "boxtrack/detection.hpp"
#include "boxtrack/tracker.hpp"

namespace boxtrack {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GtEntry {
  int id = 0;
  Box box;
  double visibility = 1.0;
};

struct ResultEntry {
  int id = 0;
  Box box;
  double score = 0.0;
};

using GtStream = std::map<int, std::vector<GtEntry>>;
using ResultStream = std::map<int, std::vector<ResultEntry>>;

struct ParseOptions {
  bool strict = false;           // abort on the first malformed line
  bool pedestrians_only = false; // ground truth: keep only class 1
};

struct ParseStats {
  std::size_t malformed = 0;        // skipped lines (lenient mode)
  std::size_t dropped_boxes = 0;    // rows with non-positive width/height
  std::size_t clamped_scores = 0;   // detection scores pulled into [0, 1]
};

// MOT detection file: frame,id,x,y,w,h,score[,...] with x,y the top-left
// corner. Rows are grouped by frame in ascending order; boxes converted to
// center form. Lenient mode skips and counts malformed rows.
DetectionStream read_detections(const std::filesystem::path& path,
                                const ParseOptions& options = {},
                                ParseStats* stats = nullptr);

// MOT ground truth: frame,id,x,y,w,h,flag,class,visibility. Rows with
// flag = 0 (ignored regions) are excluded.
GtStream read_ground_truth(const std::filesystem::path& path,
                           const ParseOptions& options = {},
                           ParseStats* stats = nullptr);

// Tracker result file, same layout as a detection file but with real ids.
ResultStream read_results(const std::filesystem::path& path,
                          const ParseOptions& options = {},
                          ParseStats* stats = nullptr);

// One line per record: frame,id,x,y,w,h,score,-1,-1,-1 with top-left
// coordinates at fixed 2-decimal precision, ordered by (frame, id), LF line
// endings. Byte-reproducible for identical inputs.
void write_results(const std::filesystem::path& path,
                   std::span<const FrameResult> results);

}  // namespace boxtrack
