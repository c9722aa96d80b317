// boxtrack command line: `track` runs the tracker over MOT detection files,
// `eval` scores result files against ground truth, `synth` generates the
// synthetic benchmark scenarios.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "boxtrack/config.hpp"
#include "boxtrack/metrics.hpp"
#include "boxtrack/mot_io.hpp"
#include "boxtrack/synth.hpp"
#include "boxtrack/tracker.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

struct SequenceInput {
  std::string name;
  fs::path dets;
};

std::string sequence_name_for_file(const fs::path& file) {
  const std::string stem = file.stem().string();
  if (stem != "det") return stem;
  // MOT layouts: <seq>/det/det.txt or <seq>/det.txt
  fs::path dir = file.parent_path();
  if (dir.filename() == "det") dir = dir.parent_path();
  const std::string name = dir.filename().string();
  return name.empty() ? stem : name;
}

std::vector<SequenceInput> discover_sequences(const fs::path& input) {
  std::vector<SequenceInput> sequences;
  if (fs::is_regular_file(input)) {
    sequences.push_back({sequence_name_for_file(input), input});
    return sequences;
  }
  if (!fs::is_directory(input)) {
    throw boxtrack::IoError("no such file or directory: " + input.string());
  }
  if (fs::exists(input / "det.txt")) {
    sequences.push_back({input.filename().string(), input / "det.txt"});
    return sequences;
  }
  for (const auto& entry : fs::directory_iterator(input)) {
    if (entry.is_directory()) {
      for (const fs::path candidate :
           {entry.path() / "det" / "det.txt", entry.path() / "det.txt"}) {
        if (fs::exists(candidate)) {
          sequences.push_back({entry.path().filename().string(), candidate});
          break;
        }
      }
    } else if (entry.path().extension() == ".txt") {
      sequences.push_back({entry.path().stem().string(), entry.path()});
    }
  }
  if (sequences.empty()) {
    throw boxtrack::IoError("no detection files found under " + input.string());
  }
  std::sort(sequences.begin(), sequences.end(),
            [](const SequenceInput& a, const SequenceInput& b) { return a.name < b.name; });
  return sequences;
}

json config_to_json(const boxtrack::TrackerConfig& config) {
  json j = json::object();
  for (const auto& [key, value] : boxtrack::config_items(config)) j[key] = value;
  return j;
}

boxtrack::TrackerConfig config_from_json(const json& j) {
  boxtrack::TrackerConfig config;
  for (const auto& [key, value] : j.items()) {
    boxtrack::apply_override(config, key + "=" + value.get<std::string>());
  }
  config.validate();
  return config;
}

struct TrackOptions {
  std::string dets;
  std::string out;
  std::string config_file;
  std::string manifest_in;
  std::vector<std::string> overrides;
  bool no_camera_motion_removal = false;
  bool no_occlusion_handling = false;
  bool no_low_score_stage = false;
  bool strict = false;
};

int run_track(const TrackOptions& opt) {
  boxtrack::TrackerConfig config;
  std::vector<SequenceInput> sequences;

  if (!opt.manifest_in.empty()) {
    std::ifstream in(opt.manifest_in);
    if (!in) {
      std::cerr << "error: cannot open manifest: " << opt.manifest_in << "\n";
      return kExitUsage;
    }
    const json manifest = json::parse(in);
    config = config_from_json(manifest.at("config"));
    for (const auto& seq : manifest.at("sequences")) {
      sequences.push_back(
          {seq.at("name").get<std::string>(), seq.at("dets").get<std::string>()});
    }
  } else {
    if (!opt.config_file.empty()) config = boxtrack::load_config(opt.config_file);
    sequences = discover_sequences(opt.dets);
  }

  for (const std::string& assignment : opt.overrides) {
    boxtrack::apply_override(config, assignment);
  }
  if (opt.no_camera_motion_removal) config.camera_motion_removal = false;
  if (opt.no_occlusion_handling) config.occlusion_handling = false;
  if (opt.no_low_score_stage) config.low_score_stage = false;
  config.validate();

  const fs::path out_dir(opt.out);
  fs::create_directories(out_dir);

  json manifest;
  manifest["command"] = "track";
  manifest["config"] = config_to_json(config);
  manifest["overrides"] = opt.overrides;
  manifest["sequences"] = json::array();

  for (const SequenceInput& seq : sequences) {
    boxtrack::ParseOptions parse_options;
    parse_options.strict = opt.strict;
    boxtrack::ParseStats stats;
    const boxtrack::DetectionStream stream =
        boxtrack::read_detections(seq.dets, parse_options, &stats);

    const auto start = std::chrono::steady_clock::now();
    const std::vector<boxtrack::FrameResult> results =
        boxtrack::run_sequence(stream, config);
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;

    const fs::path out_file = out_dir / (seq.name + ".txt");
    boxtrack::write_results(out_file, results);

    const double fps = elapsed.count() > 0.0
                           ? static_cast<double>(results.size()) / elapsed.count()
                           : 0.0;
    std::printf("%s: %zu frames, %.0f frames/s -> %s\n", seq.name.c_str(),
                results.size(), fps, out_file.string().c_str());
    if (stats.malformed + stats.dropped_boxes + stats.clamped_scores > 0) {
      std::printf("  (skipped %zu malformed rows, dropped %zu degenerate boxes, "
                  "clamped %zu scores)\n",
                  stats.malformed, stats.dropped_boxes, stats.clamped_scores);
    }

    json entry;
    entry["name"] = seq.name;
    entry["dets"] = fs::absolute(seq.dets).string();
    entry["output"] = fs::absolute(out_file).string();
    entry["frames"] = results.size();
    entry["fps"] = fps;
    manifest["sequences"].push_back(entry);
  }

  std::ofstream mout(out_dir / "run_manifest.json", std::ios::binary);
  mout << manifest.dump(2) << "\n";
  return kExitOk;
}

std::optional<fs::path> find_gt_file(const fs::path& gt_dir, const std::string& name) {
  for (const fs::path candidate : {gt_dir / (name + ".txt"), gt_dir / name / "gt.txt",
                                   gt_dir / name / "gt" / "gt.txt"}) {
    if (fs::exists(candidate)) return candidate;
  }
  return std::nullopt;
}

struct EvalOptions {
  std::string gt;
  std::string results;
  std::string out;
  double iou = 0.5;
  bool pedestrians_only = false;
};

void print_metrics_row(std::FILE* f, const std::string& name,
                       const boxtrack::SequenceMetrics& m) {
  std::fprintf(f, "%-22s %7.3f %7.3f %6s %7.3f %4d %4d %6ld %6ld %5ld %5ld\n",
               name.c_str(), m.mota, m.idf1, "n/a", m.motp, m.mt, m.ml, m.fp, m.fn,
               m.ids, m.fm);
}

void write_summary_entry(std::ostream& out, const std::string& name,
                         const boxtrack::SequenceMetrics& m) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%s.mota=%.6f\n%s.idf1=%.6f\n%s.motp=%.6f\n%s.mt=%d\n%s.ml=%d\n"
                "%s.fp=%ld\n%s.fn=%ld\n%s.ids=%ld\n%s.fm=%ld\n%s.gt_total=%ld\n",
                name.c_str(), m.mota, name.c_str(), m.idf1, name.c_str(), m.motp,
                name.c_str(), m.mt, name.c_str(), m.ml, name.c_str(), m.fp,
                name.c_str(), m.fn, name.c_str(), m.ids, name.c_str(), m.fm,
                name.c_str(), m.gt_total);
  out << buf;
}

int run_eval(const EvalOptions& opt) {
  const fs::path results_dir(opt.results);
  if (!fs::is_directory(results_dir)) {
    std::cerr << "error: results directory not found: " << opt.results << "\n";
    return kExitUsage;
  }
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(results_dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    const std::string stem = entry.path().stem().string();
    if (stem.rfind("eval_", 0) == 0) continue;
    names.push_back(stem);
  }
  std::sort(names.begin(), names.end());
  if (names.empty()) {
    std::cerr << "error: no result files (*.txt) in " << opt.results << "\n";
    return kExitUsage;
  }

  std::vector<std::string> missing;
  for (const std::string& name : names) {
    if (!find_gt_file(opt.gt, name)) missing.push_back(name);
  }
  if (!missing.empty()) {
    std::cerr << "error: no ground truth for sequence(s):";
    for (const std::string& name : missing) std::cerr << " " << name;
    std::cerr << "\n";
    return kExitUsage;
  }

  boxtrack::ParseOptions parse_options;
  parse_options.pedestrians_only = opt.pedestrians_only;

  std::printf("%-22s %7s %7s %6s %7s %4s %4s %6s %6s %5s %5s\n", "sequence", "MOTA",
              "IDF1", "HOTA", "MOTP", "MT", "ML", "FP", "FN", "IDS", "FM");
  std::vector<boxtrack::SequenceMetrics> all;
  const fs::path summary_path =
      opt.out.empty() ? results_dir / "eval_summary.txt" : fs::path(opt.out);
  std::ofstream summary(summary_path, std::ios::binary);
  for (const std::string& name : names) {
    const boxtrack::GtStream gt =
        boxtrack::read_ground_truth(*find_gt_file(opt.gt, name), parse_options);
    const boxtrack::ResultStream hyp =
        boxtrack::read_results(results_dir / (name + ".txt"));
    const boxtrack::SequenceMetrics m = boxtrack::evaluate_sequence(gt, hyp, opt.iou);
    print_metrics_row(stdout, name, m);
    write_summary_entry(summary, name, m);
    all.push_back(m);
  }
  const boxtrack::SequenceMetrics total = boxtrack::aggregate_metrics(all);
  print_metrics_row(stdout, "OVERALL", total);
  write_summary_entry(summary, "overall", total);
  std::printf("summary written to %s\n", summary_path.string().c_str());
  return kExitOk;
}

struct SynthOptions {
  std::string suite;
  std::string spec_file;
  std::string out;
};

int run_synth(const SynthOptions& opt) {
  std::vector<boxtrack::ScenarioSpec> specs;
  if (!opt.spec_file.empty()) {
    specs.push_back(boxtrack::load_scenario(opt.spec_file));
  } else if (opt.suite == "standard") {
    specs = boxtrack::standard_suite();
  } else {
    std::cerr << "error: unknown suite '" << opt.suite << "' (expected: standard)\n";
    return kExitUsage;
  }
  for (const boxtrack::ScenarioSpec& spec : specs) {
    const boxtrack::SyntheticSequence seq = boxtrack::generate(spec);
    const fs::path dir = fs::path(opt.out) / spec.name;
    boxtrack::write_scenario_files(dir, spec, seq);
    std::size_t dets = 0;
    for (const auto& [frame, frame_dets] : seq.dets) dets += frame_dets.size();
    std::printf("%s: %d frames, %zu targets, %zu detections -> %s\n",
                spec.name.c_str(), spec.frames, spec.targets.size(), dets,
                dir.string().c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric multi-object tracker over MOT detection files"};
  app.require_subcommand(1);

  TrackOptions track_opt;
  CLI::App* track = app.add_subcommand("track", "Run the tracker on detection files");
  track->add_option("--dets", track_opt.dets,
                    "Detection file, sequence directory, or directory of sequences");
  track->add_option("--out", track_opt.out, "Output directory")->required();
  track->add_option("--config", track_opt.config_file, "Config file (key = value)");
  track->add_option("--set", track_opt.overrides,
                    "Config override key=value (repeatable, wins over --config)");
  track->add_option("--from-manifest", track_opt.manifest_in,
                    "Re-run the inputs and config recorded in a run manifest");
  track->add_flag("--no-camera-motion-removal", track_opt.no_camera_motion_removal,
                  "Single association pass, no shift compensation");
  track->add_flag("--no-occlusion-handling", track_opt.no_occlusion_handling,
                  "No occluded reporting; prune on time-since-observed instead of "
                  "covered ratio");
  track->add_flag("--no-low-score-stage", track_opt.no_low_score_stage,
                  "Discard low-score detections instead of running stage 2");
  track->add_flag("--strict", track_opt.strict, "Abort on malformed input rows");

  EvalOptions eval_opt;
  CLI::App* eval = app.add_subcommand("eval", "Score result files against ground truth");
  eval->add_option("--gt", eval_opt.gt, "Ground-truth directory")->required();
  eval->add_option("--results", eval_opt.results, "Directory of result files")->required();
  eval->add_option("--iou", eval_opt.iou, "IoU threshold for box correspondence");
  eval->add_option("--out", eval_opt.out, "Summary file (default: <results>/eval_summary.txt)");
  eval->add_flag("--pedestrians-only", eval_opt.pedestrians_only,
                 "Keep only class-1 ground-truth rows");

  SynthOptions synth_opt;
  CLI::App* synth = app.add_subcommand("synth", "Generate synthetic gt/det sequences");
  synth->add_option("--suite", synth_opt.suite, "Named scenario suite (standard)");
  synth->add_option("--spec", synth_opt.spec_file, "Single scenario spec file");
  synth->add_option("--out", synth_opt.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (track->parsed()) {
      if (track_opt.dets.empty() == track_opt.manifest_in.empty()) {
        std::cerr << "error: track needs exactly one of --dets or --from-manifest\n";
        return kExitUsage;
      }
      return run_track(track_opt);
    }
    if (eval->parsed()) return run_eval(eval_opt);
    if (synth->parsed()) {
      if (synth_opt.suite.empty() == synth_opt.spec_file.empty()) {
        std::cerr << "error: synth needs exactly one of --suite or --spec\n";
        return kExitUsage;
      }
      return run_synth(synth_opt);
    }
  } catch (const boxtrack::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const boxtrack::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const boxtrack::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const boxtrack::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
