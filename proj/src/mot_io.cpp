#include "boxtrack/mot_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>

namespace boxtrack {

namespace {

std::optional<double> parse_number(std::string_view field) {
  const auto begin = field.find_first_not_of(" \t");
  if (begin == std::string_view::npos) return std::nullopt;
  const auto end = field.find_last_not_of(" \t");
  field = field.substr(begin, end - begin + 1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) return std::nullopt;
  return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

struct RawRow {
  int frame = 0;
  double id = 0;
  Box box;  // already in center form
  std::vector<double> rest;  // fields from index 6 on
};

// Shared row reader for all three MOT table layouts.
template <typename OnRow>
void read_rows(const std::filesystem::path& path, const ParseOptions& options,
               ParseStats* stats, std::size_t min_fields, OnRow&& on_row) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path.string());

  ParseStats local;
  ParseStats& st = stats != nullptr ? *stats : local;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    auto malformed = [&](const std::string& why) {
      if (options.strict) {
        throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + why);
      }
      ++st.malformed;
    };

    const auto fields = split_fields(line);
    if (fields.size() < min_fields) {
      malformed("expected at least " + std::to_string(min_fields) + " fields");
      continue;
    }
    std::vector<double> values;
    values.reserve(fields.size());
    bool ok = true;
    for (const auto f : fields) {
      const auto v = parse_number(f);
      if (!v) {
        ok = false;
        break;
      }
      values.push_back(*v);
    }
    if (!ok) {
      malformed("non-numeric field");
      continue;
    }
    if (values[0] < 1 || values[0] != static_cast<int>(values[0])) {
      malformed("frame index must be a positive integer");
      continue;
    }
    if (values[4] <= 0 || values[5] <= 0) {
      ++st.dropped_boxes;
      continue;
    }
    RawRow row;
    row.frame = static_cast<int>(values[0]);
    row.id = values[1];
    row.box = Box::from_tlwh(values[2], values[3], values[4], values[5]);
    row.rest.assign(values.begin() + 6, values.end());
    on_row(row, st);
  }
}

double clamp_score(double score, ParseStats& st) {
  if (score < 0.0 || score > 1.0) {
    ++st.clamped_scores;
    return std::clamp(score, 0.0, 1.0);
  }
  return score;
}

}  // namespace

DetectionStream read_detections(const std::filesystem::path& path,
                                const ParseOptions& options, ParseStats* stats) {
  DetectionStream stream;
  read_rows(path, options, stats, 7, [&](const RawRow& row, ParseStats& st) {
    Detection det;
    det.box = row.box;
    det.score = clamp_score(row.rest[0], st);
    det.frame = row.frame;
    stream[row.frame].push_back(det);
  });
  return stream;
}

GtStream read_ground_truth(const std::filesystem::path& path,
                           const ParseOptions& options, ParseStats* stats) {
  GtStream stream;
  read_rows(path, options, stats, 7, [&](const RawRow& row, ParseStats&) {
    if (row.rest[0] == 0) return;  // flag 0: ignored region
    if (options.pedestrians_only && row.rest.size() >= 2 && row.rest[1] != 1) return;
    GtEntry entry;
    entry.id = static_cast<int>(row.id);
    entry.box = row.box;
    entry.visibility = row.rest.size() >= 3 ? row.rest[2] : 1.0;
    stream[row.frame].push_back(entry);
  });
  return stream;
}

ResultStream read_results(const std::filesystem::path& path,
                          const ParseOptions& options, ParseStats* stats) {
  ResultStream stream;
  read_rows(path, options, stats, 7, [&](const RawRow& row, ParseStats& st) {
    ResultEntry entry;
    entry.id = static_cast<int>(row.id);
    entry.box = row.box;
    entry.score = clamp_score(row.rest[0], st);
    stream[row.frame].push_back(entry);
  });
  return stream;
}

void write_results(const std::filesystem::path& path,
                   std::span<const FrameResult> results) {
  std::ofstream out(path, std::ios::binary);  // binary: LF on every platform
  if (!out) throw IoError("cannot open file for writing: " + path.string());

  char line[160];
  for (const FrameResult& frame : results) {
    // Tracker output is already sorted by id within a frame.
    for (const TrackRecord& rec : frame.records) {
      const int n = std::snprintf(line, sizeof(line),
                                  "%d,%d,%.2f,%.2f,%.2f,%.2f,%.2f,-1,-1,-1\n",
                                  frame.frame, rec.id, rec.box.left(),
                                  rec.box.top(), rec.box.w, rec.box.h, rec.score);
      out.write(line, n);
    }
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace boxtrack
