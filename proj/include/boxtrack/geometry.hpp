#pragma once

#include <span>

namespace boxtrack {

// Axis-aligned bounding box in center+size form. All geometry in this
// project runs on these; MOT files (top-left form) are converted at the
// I/O boundary. A box is valid iff w > 0 and h > 0.
struct Box {
  double u = 0.0;  // horizontal center, pixels
  double v = 0.0;  // vertical center, pixels
  double w = 0.0;  // width, pixels
  double h = 0.0;  // height, pixels

  double area() const { return w * h; }
  double left() const { return u - 0.5 * w; }
  double top() const { return v - 0.5 * h; }
  double right() const { return u + 0.5 * w; }
  double bottom() const { return v + 0.5 * h; }

  bool valid() const { return w > 0.0 && h > 0.0; }

  static Box from_tlwh(double x, double y, double w, double h) {
    return Box{x + 0.5 * w, y + 0.5 * h, w, h};
  }

  friend bool operator==(const Box&, const Box&) = default;
};

// Overlap area of two boxes; 0 when disjoint. Commutative.
double intersection_area(const Box& a, const Box& b);

// Intersection over union, in [0, 1]. 1 iff identical, 0 iff disjoint.
double iou(const Box& a, const Box& b);

// IoU minus the mean of four center/size differences normalized by the
// detection's width and height. NOT symmetric: the first argument must be
// the detection (normalization divides by its w and h only). Equals 1 for
// identical boxes and can be arbitrarily negative; it is passed through
// unclamped, gating happens in association.
double niou(const Box& det, const Box& pred);

// Largest fraction of `target` covered by any single box in `others`,
// i.e. max over others of intersection / area(target). The caller must
// not include the target itself in `others`. 0 for an empty sequence.
double covered_ratio(const Box& target, std::span<const Box> others);

}  // namespace boxtrack
