#pragma once

#include <optional>
#include <span>
#include <vector>

namespace mobilecc {

/// Tolerance for every geometric comparison, in meters.
inline constexpr double kGeomEpsilon = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);

/// Unit-disk test. A point exactly on the circle is in range.
bool in_range(Point a, Point b, double r);

/// Of the two intersections of circle (center, r) with the line through
/// center and sink, the one nearer the sink: center + r * unit(sink - center).
Point point_toward_sink(Point center, double r, Point sink);

struct CrossSection {
  std::vector<Point> points;  // sorted by (x, y); empty when coincident
  bool coincident = false;
};

CrossSection circle_circle_intersections(Point c1, double r1, Point c2, double r2);

/// Among pairwise circle cross-section points lying inside every disk,
/// the one nearest the sink. Equidistant candidates resolve to the
/// lexicographically smaller (x, y).
std::optional<Point> common_point_closest_to_sink(std::span<const Point> centers, double r,
                                                  Point sink);

}  // namespace mobilecc
