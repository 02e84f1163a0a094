#include "mobilecc/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "mobilecc/error.hpp"

namespace mobilecc {

namespace {

void require_radius(double r) {
  if (!(r > 0.0)) throw Error(Errc::invalid_radius, "radius must be positive");
}

bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

}  // namespace

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool in_range(Point a, Point b, double r) {
  require_radius(r);
  return distance(a, b) <= r + kGeomEpsilon;
}

Point point_toward_sink(Point center, double r, Point sink) {
  require_radius(r);
  if (center == sink) throw Error(Errc::degenerate_direction, "center coincides with sink");

  // Axis-aligned placements are exact; no trigonometry involved.
  if (center.x == sink.x) {
    return {center.x, center.y < sink.y ? center.y + r : center.y - r};
  }
  if (center.y == sink.y) {
    return {center.x > sink.x ? center.x - r : center.x + r, center.y};
  }
  const double d = distance(center, sink);
  return {center.x + r * (sink.x - center.x) / d, center.y + r * (sink.y - center.y) / d};
}

CrossSection circle_circle_intersections(Point c1, double r1, Point c2, double r2) {
  require_radius(r1);
  require_radius(r2);
  CrossSection out;
  const double d = distance(c1, c2);
  if (d <= kGeomEpsilon) {
    out.coincident = std::abs(r1 - r2) <= kGeomEpsilon;
    return out;  // concentric: either identical or nested
  }
  if (d > r1 + r2 + kGeomEpsilon || d < std::abs(r1 - r2) - kGeomEpsilon) return out;

  const double ex = (c2.x - c1.x) / d;
  const double ey = (c2.y - c1.y) / d;
  const double a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
  const Point base{c1.x + a * ex, c1.y + a * ey};

  const bool tangent =
      std::abs(d - (r1 + r2)) <= kGeomEpsilon || std::abs(d - std::abs(r1 - r2)) <= kGeomEpsilon;
  if (tangent) {
    out.points.push_back(base);
    return out;
  }
  const double h = std::sqrt(std::max(0.0, r1 * r1 - a * a));
  out.points.push_back({base.x - h * ey, base.y + h * ex});
  out.points.push_back({base.x + h * ey, base.y - h * ex});
  std::sort(out.points.begin(), out.points.end(), lex_less);
  return out;
}

std::optional<Point> common_point_closest_to_sink(std::span<const Point> centers, double r,
                                                  Point sink) {
  require_radius(r);
  if (centers.size() < 2) throw Error(Errc::invalid_input, "need at least two centers");

  std::optional<Point> best;
  double best_dist = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      const auto cs = circle_circle_intersections(centers[i], r, centers[j], r);
      for (const Point p : cs.points) {
        const bool inside_all = std::all_of(centers.begin(), centers.end(),
                                            [&](Point c) { return in_range(p, c, r); });
        if (!inside_all) continue;
        const double dist = distance(p, sink);
        if (!best || dist < best_dist - kGeomEpsilon ||
            (std::abs(dist - best_dist) <= kGeomEpsilon && lex_less(p, *best))) {
          best = p;
          best_dist = dist;
        }
      }
    }
  }
  return best;
}

}  // namespace mobilecc
