#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "vprs/error.hpp"

namespace vprs::kinematics {

// Longitudinal car-following situation. Speeds in m/s, decelerations as positive magnitudes.
struct CarFollowState {
  double v1 = 0.0;      // following vehicle
  double v2 = 0.0;      // preceding vehicle
  double gap = 1.0;     // measured headway d_r, m
  double a1_max = 1.0;  // following vehicle max deceleration
  double a2_max = 1.0;  // preceding vehicle max deceleration
  double tau = 0.0;     // reaction delay, s
  double d0 = 0.0;      // headway offset, m
};

inline void validate(const CarFollowState& s) {
  if (!(s.v1 >= 0.0) || !(s.v2 >= 0.0)) throw DomainError("speeds must be non-negative");
  if (!(s.gap > 0.0)) throw DomainError("gap must be positive");
  if (!(s.a1_max > 0.0) || !(s.a2_max > 0.0)) throw DomainError("maximum decelerations must be positive");
  if (!(s.tau >= 0.0)) throw DomainError("tau must be non-negative");
  if (!(s.d0 >= 0.0)) throw DomainError("d0 must be non-negative");
}

// Critical warning distance, stopping-distance form:
//   d_w = v1*tau + v1^2/(2 a1) - v2^2/(2 a2) + d0, never below d0.
inline double safety_distance(const CarFollowState& s) {
  validate(s);
  const double d = s.v1 * s.tau + s.v1 * s.v1 / (2.0 * s.a1_max) - s.v2 * s.v2 / (2.0 * s.a2_max) + s.d0;
  return std::max(d, s.d0);
}

// Time to collision; nullopt when the gap is not closing.
inline std::optional<double> ttc(double gap, double closing_speed) {
  if (!(gap > 0.0)) throw DomainError("gap must be positive for a time-to-collision");
  if (!(closing_speed > 0.0)) return std::nullopt;
  return gap / closing_speed;
}

struct VehicleFootprint {
  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  double length = 4.5;
  double width = 1.8;
  double radius = 0.0;  // safety-zone radius
};

// Smallest circle around the body plus an optional speed margin k*|v|.
inline double zone_radius(double length, double width, double speed = 0.0, double k = 0.0) {
  if (!(length > 0.0) || !(width > 0.0)) throw DomainError("footprint length and width must be positive");
  return 0.5 * std::hypot(length, width) + k * std::abs(speed);
}

inline VehicleFootprint make_footprint(double x, double y, double vx, double vy, double length, double width,
                                       double k = 0.0) {
  return {x, y, vx, vy, length, width, zone_radius(length, width, std::hypot(vx, vy), k)};
}

// Safety zones touch or overlap.
inline bool zone_overlap(const VehicleFootprint& a, const VehicleFootprint& b) {
  return std::hypot(a.x - b.x, a.y - b.y) <= a.radius + b.radius;
}

inline constexpr double kDefaultWarnThreshold = 2.0;
inline constexpr double kTtcScoreCap = 5.0;

struct BaselineVerdict {
  bool positive = false;
  double score = 0.0;  // 1 - min(t / 5 s, 1); 0 when not closing
};

// TTC-threshold warning used as the kinematics-only baseline.
inline BaselineVerdict ttc_baseline_classify(std::optional<double> t, double warn_threshold = kDefaultWarnThreshold) {
  if (!(warn_threshold > 0.0)) throw DomainError("warn threshold must be positive");
  if (!t) return {};
  return {*t < warn_threshold, 1.0 - std::min(*t / kTtcScoreCap, 1.0)};
}

}  // namespace vprs::kinematics
