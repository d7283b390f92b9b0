#pragma once

#include <algorithm>
#include <cmath>

namespace playpen {

constexpr double kPi = 3.14159265358979323846;

/// Normalize an angle into (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  a -= kPi;
  if (a == -kPi) a = kPi;
  return a;
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
  double squared_norm() const { return x * x + y * y; }
  Vec2 normalized() const {
    double n = norm();
    return n > 0.0 ? Vec2{x / n, y / n} : Vec2{0.0, 0.0};
  }
  bool operator==(const Vec2&) const = default;
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// SE(2) pose; theta is kept in (-pi, pi].
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Vec2 position() const { return {x, y}; }
  bool operator==(const Pose2&) const = default;
};

/// a then b: the pose of frame b expressed through frame a.
inline Pose2 compose(const Pose2& a, const Pose2& b) {
  double c = std::cos(a.theta), s = std::sin(a.theta);
  return {a.x + b.x * c - b.y * s, a.y + b.x * s + b.y * c, wrap_angle(a.theta + b.theta)};
}

inline Pose2 inverse(const Pose2& a) {
  double c = std::cos(a.theta), s = std::sin(a.theta);
  return {-(a.x * c + a.y * s), a.x * s - a.y * c, wrap_angle(-a.theta)};
}

/// Map a point given in the frame of `pose` into the parent frame.
inline Vec2 transform_point(const Pose2& pose, const Vec2& p) {
  double c = std::cos(pose.theta), s = std::sin(pose.theta);
  return {pose.x + p.x * c - p.y * s, pose.y + p.x * s + p.y * c};
}

/// Express a global waypoint in the robot body frame (the inverse SE(2) transform).
inline Pose2 to_body_frame(const Pose2& waypoint_global, const Pose2& body) {
  return compose(inverse(body), waypoint_global);
}

struct Rect {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

  bool contains(const Vec2& p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
  Vec2 center() const { return {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)}; }
  bool valid() const { return xmin < xmax && ymin < ymax; }
  bool operator==(const Rect&) const = default;
};

/// Euclidean distance from a point to the closed rectangle (0 inside).
inline double distance_to_rect(const Vec2& p, const Rect& r) {
  double dx = std::max({r.xmin - p.x, 0.0, p.x - r.xmax});
  double dy = std::max({r.ymin - p.y, 0.0, p.y - r.ymax});
  return std::hypot(dx, dy);
}

}  // namespace playpen
