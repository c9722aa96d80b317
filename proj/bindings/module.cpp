#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <chrono>

#include "boxtrack/config.hpp"
#include "boxtrack/metrics.hpp"
#include "boxtrack/mot_io.hpp"
#include "boxtrack/synth.hpp"
#include "boxtrack/tracker.hpp"

namespace py = pybind11;
using namespace boxtrack;

namespace {

const char* status_name(TrackStatus status) {
  switch (status) {
    case TrackStatus::Active:
      return "active";
    case TrackStatus::Occluded:
      return "occluded";
    case TrackStatus::Lost:
      return "lost";
  }
  return "unknown";
}

py::dict metrics_to_dict(const SequenceMetrics& m) {
  py::dict d;
  d["mota"] = m.mota;
  d["motp"] = m.motp;
  d["idf1"] = m.idf1;
  d["fp"] = m.fp;
  d["fn"] = m.fn;
  d["ids"] = m.ids;
  d["fm"] = m.fm;
  d["mt"] = m.mt;
  d["ml"] = m.ml;
  d["gt_total"] = m.gt_total;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Geometric multi-object tracking: nIoU cascade matching, Kalman "
            "prediction, camera motion compensation, occlusion handling.";

  py::class_<Box>(m, "Box")
      .def(py::init<>())
      .def(py::init<double, double, double, double>(), py::arg("u"), py::arg("v"),
           py::arg("w"), py::arg("h"))
      .def_readwrite("u", &Box::u)
      .def_readwrite("v", &Box::v)
      .def_readwrite("w", &Box::w)
      .def_readwrite("h", &Box::h)
      .def("area", &Box::area)
      .def_static("from_tlwh", &Box::from_tlwh, py::arg("x"), py::arg("y"),
                  py::arg("w"), py::arg("h"))
      .def("to_tlwh",
           [](const Box& b) { return py::make_tuple(b.left(), b.top(), b.w, b.h); })
      .def("__repr__", [](const Box& b) {
        return "Box(u=" + std::to_string(b.u) + ", v=" + std::to_string(b.v) +
               ", w=" + std::to_string(b.w) + ", h=" + std::to_string(b.h) + ")";
      });

  m.def("intersection_area", &intersection_area, py::arg("a"), py::arg("b"));
  m.def("iou", &iou, py::arg("a"), py::arg("b"));
  m.def("niou", &niou, py::arg("det"), py::arg("pred"));
  m.def(
      "covered_ratio",
      [](const Box& target, const std::vector<Box>& others) {
        return covered_ratio(target, others);
      },
      py::arg("target"), py::arg("others"));

  py::class_<Detection>(m, "Detection")
      .def(py::init<>())
      .def(py::init([](const Box& box, double score, int frame) {
             return Detection{box, score, frame};
           }),
           py::arg("box"), py::arg("score"), py::arg("frame"))
      .def_readwrite("box", &Detection::box)
      .def_readwrite("score", &Detection::score)
      .def_readwrite("frame", &Detection::frame);

  py::class_<TrackerConfig>(m, "TrackerConfig")
      .def(py::init<>())
      .def_readwrite("high_score", &TrackerConfig::high_score)
      .def_readwrite("low_score", &TrackerConfig::low_score)
      .def_readwrite("new_track_score", &TrackerConfig::new_track_score)
      .def_readwrite("covered_ratio_gate", &TrackerConfig::covered_ratio_gate)
      .def_readwrite("confidence_gate", &TrackerConfig::confidence_gate)
      .def_readwrite("stage1_min_niou", &TrackerConfig::stage1_min_niou)
      .def_readwrite("stage2_min_niou", &TrackerConfig::stage2_min_niou)
      .def_readwrite("prune_patience", &TrackerConfig::prune_patience)
      .def_readwrite("camera_motion_removal", &TrackerConfig::camera_motion_removal)
      .def_readwrite("occlusion_handling", &TrackerConfig::occlusion_handling)
      .def_readwrite("low_score_stage", &TrackerConfig::low_score_stage)
      .def("set", [](TrackerConfig& c, const std::string& assignment) {
        apply_override(c, assignment);
      },
      py::arg("assignment"), "Apply a key=value override (accepts L_h, L_l, ... aliases)");

  py::class_<TrackRecord>(m, "TrackRecord")
      .def_readonly("id", &TrackRecord::id)
      .def_readonly("box", &TrackRecord::box)
      .def_readonly("score", &TrackRecord::score)
      .def_property_readonly(
          "status", [](const TrackRecord& r) { return status_name(r.status); });

  py::class_<FrameResult>(m, "FrameResult")
      .def_readonly("frame", &FrameResult::frame)
      .def_readonly("records", &FrameResult::records);

  py::class_<Tracker>(m, "Tracker")
      .def(py::init<>())
      .def(py::init<TrackerConfig>(), py::arg("config"))
      .def(
          "step",
          [](Tracker& t, int frame, const std::vector<Detection>& dets) {
            return t.step(frame, dets);
          },
          py::arg("frame"), py::arg("detections"));

  m.def(
      "run_sequence",
      [](const std::map<int, std::vector<Detection>>& stream,
         const TrackerConfig& config) { return run_sequence(stream, config); },
      py::arg("detections_by_frame"), py::arg("config") = TrackerConfig{});

  m.def(
      "track_file",
      [](const std::filesystem::path& dets, const std::filesystem::path& out,
         const TrackerConfig& config) {
        const DetectionStream stream = read_detections(dets);
        const auto start = std::chrono::steady_clock::now();
        const std::vector<FrameResult> results = run_sequence(stream, config);
        const std::chrono::duration<double> elapsed =
            std::chrono::steady_clock::now() - start;
        write_results(out, results);
        return elapsed.count() > 0.0
                   ? static_cast<double>(results.size()) / elapsed.count()
                   : 0.0;
      },
      py::arg("dets_path"), py::arg("out_path"), py::arg("config") = TrackerConfig{},
      "Track one MOT detection file into a result file; returns frames/second");

  m.def(
      "evaluate",
      [](const std::filesystem::path& gt, const std::filesystem::path& results,
         double iou_threshold) {
        return metrics_to_dict(
            evaluate_sequence(read_ground_truth(gt), read_results(results), iou_threshold));
      },
      py::arg("gt_path"), py::arg("results_path"), py::arg("iou_threshold") = 0.5,
      "CLEAR-MOT and IDF1 metrics for one sequence, as a dict");

  m.def(
      "write_standard_suite",
      [](const std::filesystem::path& out_dir) {
        std::vector<std::string> names;
        for (const ScenarioSpec& spec : standard_suite()) {
          write_scenario_files(out_dir / spec.name, spec, generate(spec));
          names.push_back(spec.name);
        }
        return names;
      },
      py::arg("out_dir"),
      "Generate the standard synthetic scenarios; returns their names");

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<IoError>(m, "IoError");
  py::register_exception<MetricsError>(m, "MetricsError");
  py::register_exception<ScenarioError>(m, "ScenarioError");
}
