"""Geometric multi-object tracking on detection boxes.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._core import (
    Box,
    ConfigError,
    Detection,
    FrameResult,
    IoError,
    MetricsError,
    ScenarioError,
    Tracker,
    TrackerConfig,
    TrackRecord,
    covered_ratio,
    evaluate,
    intersection_area,
    iou,
    niou,
    run_sequence,
    track_file,
    write_standard_suite,
)

__all__ = [
    "Box",
    "ConfigError",
    "Detection",
    "FrameResult",
    "IoError",
    "MetricsError",
    "ScenarioError",
    "Tracker",
    "TrackerConfig",
    "TrackRecord",
    "covered_ratio",
    "evaluate",
    "intersection_area",
    "iou",
    "niou",
    "run_sequence",
    "track_file",
    "write_standard_suite",
]

__version__ = "0.1.0"
