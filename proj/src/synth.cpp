#include "boxtrack/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace boxtrack {

namespace {

// Samplers built on raw mt19937_64 output so the value stream depends only
// on the seed, not on the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal(double mean, double std) {
    if (has_spare_) {
      has_spare_ = false;
      return mean + std * spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return mean + std * r * std::cos(theta);
  }

  int poisson(double mean) {
    const double limit = std::exp(-mean);
    int k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

constexpr double kFullCover = 0.95;     // at or above: never detected
constexpr double kOcclusionCover = 0.7; // above: elevated miss probability

}  // namespace

void ScenarioSpec::validate() const {
  auto fail = [this](const std::string& why) {
    throw ScenarioError("scenario '" + name + "': " + why);
  };
  if (frames < 1) fail("frames must be at least 1");
  if (targets.empty()) fail("at least one target is required");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const TargetSpec& t = targets[i];
    const std::string label = "target " + std::to_string(i + 1);
    if (t.birth < 1 || t.birth >= t.death || t.death > frames) {
      fail(label + ": need 1 <= birth < death <= frames");
    }
    if (!t.box.valid()) fail(label + ": box must have positive size");
  }
  for (const PanEvent& pan : pans) {
    if (pan.frame < 1 || pan.frame > frames) fail("pan frame out of range");
  }
  if (noise < 0.0) fail("noise must be non-negative");
  if (fp_rate < 0.0) fail("fp_rate must be non-negative");
  if (miss_rate < 0.0 || miss_rate > 1.0) fail("miss_rate must lie in [0, 1]");
  if (!(field_w > 0.0 && field_h > 0.0)) fail("field size must be positive");
  if (!(score.tp_min <= score.tp_max && score.tp_max <= 1.0 && score.tp_min >= 0.0)) {
    fail("true-positive score clip range must lie inside [0, 1]");
  }
}

SyntheticSequence generate(const ScenarioSpec& spec) {
  spec.validate();
  SyntheticSequence seq;
  Rng rng(spec.seed);

  double pan_u = 0.0, pan_v = 0.0;
  std::size_t next_pan = 0;
  std::vector<PanEvent> pans = spec.pans;
  std::sort(pans.begin(), pans.end(),
            [](const PanEvent& a, const PanEvent& b) { return a.frame < b.frame; });

  for (int frame = 1; frame <= spec.frames; ++frame) {
    while (next_pan < pans.size() && pans[next_pan].frame <= frame) {
      pan_u += pans[next_pan].du;
      pan_v += pans[next_pan].dv;
      ++next_pan;
    }
    FrameDiagnostics& diag = seq.diagnostics[frame];
    diag.pan_du = pan_u;
    diag.pan_dv = pan_v;

    // Ground truth for every alive target, shifted by the camera offset.
    std::vector<int> alive;  // indices into spec.targets
    std::vector<Box> boxes;
    for (std::size_t i = 0; i < spec.targets.size(); ++i) {
      const TargetSpec& t = spec.targets[i];
      if (frame < t.birth || frame > t.death) continue;
      const double age = static_cast<double>(frame - t.birth);
      alive.push_back(static_cast<int>(i));
      boxes.push_back(Box{t.box.u + t.vu * age + pan_u,
                          t.box.v + t.vv * age + pan_v, t.box.w, t.box.h});
    }

    auto& gt_frame = seq.gt[frame];
    auto& det_frame = seq.dets[frame];
    for (std::size_t k = 0; k < alive.size(); ++k) {
      // Depth = list order: only targets listed later (nearer) cover this one.
      std::vector<Box> nearer(boxes.begin() + static_cast<std::ptrdiff_t>(k) + 1,
                              boxes.end());
      const double cover = covered_ratio(boxes[k], nearer);
      const double visibility = 1.0 - cover;
      gt_frame.push_back(GtEntry{alive[k] + 1, boxes[k], visibility});

      double p_miss = spec.miss_rate;
      if (cover >= kFullCover) {
        p_miss = 1.0;
      } else if (cover > kOcclusionCover) {
        p_miss = std::max(spec.miss_rate, 0.5);
      }
      if (p_miss >= 1.0 || (p_miss > 0.0 && rng.uniform() < p_miss)) {
        ++diag.misses;
        continue;
      }

      Box det = boxes[k];
      if (spec.noise > 0.0) {
        det.u += rng.normal(0.0, spec.noise * det.h);
        det.v += rng.normal(0.0, spec.noise * det.h);
        det.w = std::max(2.0, det.w + rng.normal(0.0, spec.noise * det.w));
        det.h = std::max(2.0, det.h + rng.normal(0.0, spec.noise * det.h));
      }
      const double raw =
          std::clamp(rng.normal(spec.score.tp_mean, spec.score.tp_std),
                     spec.score.tp_min, spec.score.tp_max);
      det_frame.push_back(Detection{det, raw * visibility, frame});
    }

    if (spec.fp_rate > 0.0) {
      const int count = rng.poisson(spec.fp_rate);
      diag.false_positives = count;
      for (int k = 0; k < count; ++k) {
        const double w = 20.0 + 40.0 * rng.uniform();
        const double h = w * (1.5 + rng.uniform());
        const double u = rng.uniform() * spec.field_w + pan_u;
        const double v = rng.uniform() * spec.field_h + pan_v;
        const double score = std::clamp(
            rng.normal(spec.score.fp_mean, spec.score.fp_std), 0.0, spec.score.fp_max);
        det_frame.push_back(Detection{Box{u, v, w, h}, score, frame});
      }
    }
  }
  return seq;
}

std::vector<ScenarioSpec> standard_suite() {
  std::vector<ScenarioSpec> suite;

  {
    ScenarioSpec s;
    s.name = "static_separated";
    s.frames = 50;
    s.seed = 911001;
    s.targets = {
        {1, 50, Box{100, 100, 40, 80}, 0, 0},  {1, 50, Box{300, 120, 36, 72}, 0, 0},
        {1, 50, Box{520, 300, 44, 88}, 0, 0},  {1, 50, Box{700, 130, 40, 80}, 0, 0},
        {1, 50, Box{210, 420, 50, 100}, 0, 0},
    };
    suite.push_back(std::move(s));
  }

  {
    ScenarioSpec s;
    s.name = "pan_burst";
    s.frames = 120;
    s.seed = 911002;
    // Three large anchors survive the pans in pass 1 and seed the shift
    // estimate; the seven small ones depend on the second pass.
    s.targets = {
        {1, 120, Box{150, 160, 130, 170}, 0, 0}, {1, 120, Box{480, 200, 120, 160}, 0, 0},
        {1, 120, Box{800, 180, 140, 180}, 0, 0}, {1, 120, Box{100, 420, 26, 44}, 0, 0},
        {1, 120, Box{240, 440, 30, 52}, 0, 0},   {1, 120, Box{380, 430, 24, 40}, 0, 0},
        {1, 120, Box{520, 445, 32, 56}, 0, 0},   {1, 120, Box{650, 425, 28, 48}, 0, 0},
        {1, 120, Box{760, 450, 34, 60}, 0, 0},   {1, 120, Box{890, 435, 26, 46}, 0, 0},
    };
    s.pans = {{40, 38, 0}, {80, -35, 12}};
    suite.push_back(std::move(s));
  }

  {
    ScenarioSpec s;
    s.name = "crossing_occlusion";
    s.frames = 60;
    s.seed = 911003;
    // The second target passes in front of the first and covers it fully
    // on frames 29-33.
    s.targets = {
        {1, 60, Box{200, 200, 40, 80}, 0, 0},
        {1, 60, Box{50, 200, 60, 120}, 5, 0},
    };
    suite.push_back(std::move(s));
  }

  {
    ScenarioSpec s;
    s.name = "dense_noisy";
    s.frames = 150;
    s.seed = 911004;
    s.noise = 0.025;
    s.fp_rate = 1.5;
    s.miss_rate = 0.08;
    // Four slow overtakes (the trailing twin of each pair is in front and
    // gradually covers the leader) plus four isolated movers.
    s.targets = {
        {1, 150, Box{120, 100, 40, 80}, 1.2, 0},  {1, 150, Box{50, 100, 40, 80}, 1.8, 0},
        {1, 150, Box{420, 140, 36, 72}, 1.0, 0},  {1, 150, Box{355, 140, 36, 72}, 1.55, 0},
        {1, 150, Box{680, 110, 44, 88}, -1.1, 0}, {1, 150, Box{760, 110, 44, 88}, -1.75, 0},
        {1, 150, Box{300, 300, 40, 80}, 1.4, 0.2},{1, 150, Box{230, 300, 40, 80}, 1.95, 0.2},
        {1, 150, Box{140, 470, 30, 56}, 1.5, 0},  {1, 150, Box{520, 460, 34, 62}, -1.2, 0},
        {1, 150, Box{820, 430, 28, 50}, 0.8, 0.3},{1, 150, Box{60, 250, 32, 58}, 2.2, 0},
    };
    suite.push_back(std::move(s));
  }

  return suite;
}

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<double> parse_numbers(const std::string& value, const std::string& where) {
  std::istringstream in(value);
  std::vector<double> numbers;
  double v = 0.0;
  while (in >> v) numbers.push_back(v);
  std::string leftover;
  if (in.clear(), in >> leftover) {
    throw ScenarioError(where + ": expected numbers, got '" + value + "'");
  }
  return numbers;
}

}  // namespace

ScenarioSpec parse_scenario(std::istream& in, const std::string& origin) {
  ScenarioSpec spec;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno);

    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ScenarioError(where + ": expected key = value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));

    auto number = [&] {
      const auto nums = parse_numbers(value, where);
      if (nums.size() != 1) throw ScenarioError(where + ": expected one number");
      return nums[0];
    };

    if (key == "name") {
      spec.name = value;
    } else if (key == "frames") {
      spec.frames = static_cast<int>(number());
    } else if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(number());
    } else if (key == "field_w") {
      spec.field_w = number();
    } else if (key == "field_h") {
      spec.field_h = number();
    } else if (key == "noise") {
      spec.noise = number();
    } else if (key == "fp_rate") {
      spec.fp_rate = number();
    } else if (key == "miss_rate") {
      spec.miss_rate = number();
    } else if (key == "tp_score_mean") {
      spec.score.tp_mean = number();
    } else if (key == "tp_score_std") {
      spec.score.tp_std = number();
    } else if (key == "tp_score_min") {
      spec.score.tp_min = number();
    } else if (key == "tp_score_max") {
      spec.score.tp_max = number();
    } else if (key == "fp_score_mean") {
      spec.score.fp_mean = number();
    } else if (key == "fp_score_std") {
      spec.score.fp_std = number();
    } else if (key == "fp_score_max") {
      spec.score.fp_max = number();
    } else if (key == "target") {
      const auto nums = parse_numbers(value, where);
      if (nums.size() != 8) {
        throw ScenarioError(where +
                            ": target needs 8 numbers: birth death u v w h vu vv");
      }
      spec.targets.push_back(TargetSpec{static_cast<int>(nums[0]),
                                        static_cast<int>(nums[1]),
                                        Box{nums[2], nums[3], nums[4], nums[5]},
                                        nums[6], nums[7]});
    } else if (key == "pan") {
      const auto nums = parse_numbers(value, where);
      if (nums.size() != 3) {
        throw ScenarioError(where + ": pan needs 3 numbers: frame du dv");
      }
      spec.pans.push_back(PanEvent{static_cast<int>(nums[0]), nums[1], nums[2]});
    } else {
      throw ScenarioError(where + ": unknown key '" + key + "'");
    }
  }
  spec.validate();
  return spec;
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path.string());
  return parse_scenario(in, path.string());
}

std::string serialize_scenario(const ScenarioSpec& spec) {
  std::ostringstream out;
  char buf[256];
  out << "name = " << spec.name << "\n";
  out << "frames = " << spec.frames << "\n";
  out << "seed = " << spec.seed << "\n";
  auto num = [&](const char* key, double v) {
    std::snprintf(buf, sizeof(buf), "%s = %.17g\n", key, v);
    out << buf;
  };
  num("field_w", spec.field_w);
  num("field_h", spec.field_h);
  num("noise", spec.noise);
  num("fp_rate", spec.fp_rate);
  num("miss_rate", spec.miss_rate);
  num("tp_score_mean", spec.score.tp_mean);
  num("tp_score_std", spec.score.tp_std);
  num("tp_score_min", spec.score.tp_min);
  num("tp_score_max", spec.score.tp_max);
  num("fp_score_mean", spec.score.fp_mean);
  num("fp_score_std", spec.score.fp_std);
  num("fp_score_max", spec.score.fp_max);
  for (const TargetSpec& t : spec.targets) {
    std::snprintf(buf, sizeof(buf),
                  "target = %d %d %.17g %.17g %.17g %.17g %.17g %.17g\n", t.birth,
                  t.death, t.box.u, t.box.v, t.box.w, t.box.h, t.vu, t.vv);
    out << buf;
  }
  for (const PanEvent& p : spec.pans) {
    std::snprintf(buf, sizeof(buf), "pan = %d %.17g %.17g\n", p.frame, p.du, p.dv);
    out << buf;
  }
  return out.str();
}

void write_scenario_files(const std::filesystem::path& dir, const ScenarioSpec& spec,
                          const SyntheticSequence& seq) {
  std::filesystem::create_directories(dir);

  {
    std::ofstream out(dir / "gt.txt", std::ios::binary);
    if (!out) throw IoError("cannot write " + (dir / "gt.txt").string());
    char line[160];
    for (const auto& [frame, entries] : seq.gt) {
      for (const GtEntry& e : entries) {
        const int n = std::snprintf(line, sizeof(line),
                                    "%d,%d,%.2f,%.2f,%.2f,%.2f,1,1,%.6f\n", frame,
                                    e.id, e.box.left(), e.box.top(), e.box.w,
                                    e.box.h, e.visibility);
        out.write(line, n);
      }
    }
  }
  {
    std::ofstream out(dir / "det.txt", std::ios::binary);
    if (!out) throw IoError("cannot write " + (dir / "det.txt").string());
    char line[160];
    for (const auto& [frame, dets] : seq.dets) {
      for (const Detection& d : dets) {
        const int n = std::snprintf(line, sizeof(line),
                                    "%d,-1,%.2f,%.2f,%.2f,%.2f,%.6f,-1,-1,-1\n",
                                    frame, d.box.left(), d.box.top(), d.box.w,
                                    d.box.h, d.score);
        out.write(line, n);
      }
    }
  }
  {
    std::ofstream out(dir / "scenario.txt", std::ios::binary);
    if (!out) throw IoError("cannot write " + (dir / "scenario.txt").string());
    out << serialize_scenario(spec);
  }
  {
    std::ofstream out(dir / "info.txt", std::ios::binary);
    if (!out) throw IoError("cannot write " + (dir / "info.txt").string());
    out << "# frame pan_du pan_dv false_positives misses\n";
    char line[160];
    for (const auto& [frame, diag] : seq.diagnostics) {
      const int n =
          std::snprintf(line, sizeof(line), "%d %.6f %.6f %d %d\n", frame,
                        diag.pan_du, diag.pan_dv, diag.false_positives, diag.misses);
      out.write(line, n);
    }
  }
}

}  // namespace boxtrack
