#pragma once

#include <algorithm>
#include <cmath>

#include "hostsg/errors.hpp"

namespace hostsg {

// Axis-aligned box, normalized coordinates in [0,1], x1<x2 and y1<y2.
struct BBox {
  double x1 = 0.0, y1 = 0.0, x2 = 0.0, y2 = 0.0;

  bool valid() const {
    return std::isfinite(x1) && std::isfinite(y1) && std::isfinite(x2) &&
           std::isfinite(y2) && x1 < x2 && y1 < y2;
  }

  double area() const { return (x2 - x1) * (y2 - y1); }

  double cx() const { return 0.5 * (x1 + x2); }
  double cy() const { return 0.5 * (y1 + y2); }

  bool operator==(const BBox&) const = default;
};

inline double iou(const BBox& a, const BBox& b) {
  if (!a.valid() || !b.valid()) throw DataError("iou: invalid box");
  const double ix = std::max(0.0, std::min(a.x2, b.x2) - std::max(a.x1, b.x1));
  const double iy = std::max(0.0, std::min(a.y2, b.y2) - std::max(a.y1, b.y1));
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

inline double centroid_distance(const BBox& a, const BBox& b) {
  const double dx = a.cx() - b.cx();
  const double dy = a.cy() - b.cy();
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace hostsg
