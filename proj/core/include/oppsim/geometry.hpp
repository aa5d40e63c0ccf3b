#pragma once

#include <algorithm>
#include <cmath>

namespace oppsim {

struct Position {
  double x = 0.0;
  double y = 0.0;
};

inline bool operator==(const Position& a, const Position& b) {
  return a.x == b.x && a.y == b.y;
}

inline double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Rectangular scenario area [0, width] x [0, height].
struct Area {
  double width_m = 0.0;
  double height_m = 0.0;

  bool contains(const Position& p) const {
    return p.x >= 0.0 && p.x <= width_m && p.y >= 0.0 && p.y <= height_m;
  }

  Position clamp(const Position& p) const {
    return {std::clamp(p.x, 0.0, width_m), std::clamp(p.y, 0.0, height_m)};
  }

  Position center() const { return {width_m / 2.0, height_m / 2.0}; }

  double diagonal() const { return std::hypot(width_m, height_m); }
};

}  // namespace oppsim
