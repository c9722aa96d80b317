#include "boxtrack/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace boxtrack {

double intersection_area(const Box& a, const Box& b) {
  const double iw = std::min(a.right(), b.right()) - std::max(a.left(), b.left());
  if (iw <= 0.0) return 0.0;
  const double ih = std::min(a.bottom(), b.bottom()) - std::max(a.top(), b.top());
  if (ih <= 0.0) return 0.0;
  return iw * ih;
}

double iou(const Box& a, const Box& b) {
  const double inter = intersection_area(a, b);
  if (inter <= 0.0) return 0.0;
  return inter / (a.area() + b.area() - inter);
}

double niou(const Box& det, const Box& pred) {
  const double du = std::abs(det.u - pred.u) / det.w;
  const double dv = std::abs(det.v - pred.v) / det.h;
  const double dw = std::abs(det.w - pred.w) / det.w;
  const double dh = std::abs(det.h - pred.h) / det.h;
  return iou(det, pred) - 0.25 * (du + dv + dw + dh);
}

double covered_ratio(const Box& target, std::span<const Box> others) {
  double best = 0.0;
  for (const Box& other : others) {
    best = std::max(best, intersection_area(target, other));
  }
  return best / target.area();
}

}  // namespace boxtrack
