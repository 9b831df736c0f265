#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "flipdist/rational.hpp"

namespace flipdist {

struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

// Circle stored by center and squared radius; everything stays rational.
struct Circle {
  Point center;
  Rational radius_squared;

  Circle(Point c, Rational r2);
};

enum class Orientation { kRight = -1, kCollinear = 0, kLeft = 1 };

// Exact sign of the 2x2 determinant of (q - p, r - p). No tolerance.
Orientation orientation(const Point& p, const Point& q, const Point& r);
int orientation_sign(const Point& p, const Point& q, const Point& r);

// cross(o, a, b) = (a - o) x (b - o), the full rational value.
Rational cross(const Point& o, const Point& a, const Point& b);
Rational dot(const Point& o, const Point& a, const Point& b);
Rational dist2(const Point& a, const Point& b);

enum class CircleSide { kOutside = -1, kOn = 0, kInside = 1 };

// Sign of the standard 4x4 in-circle determinant, normalized by
// orientation(a, b, c) so the caller need not order the triangle.
// kInside means q is strictly interior to the circumcircle of a, b, c.
// Throws if a, b, c are collinear.
CircleSide in_circle(const Point& a, const Point& b, const Point& c, const Point& q);

// True iff the open segments ab and cd intersect in exactly one interior
// point. Touching at an endpoint is not a proper crossing.
bool segments_properly_cross(const Point& a, const Point& b, const Point& c, const Point& d);

// True iff point p lies strictly inside the open segment ab (requires
// collinearity; returns false otherwise).
bool point_on_open_segment(const Point& p, const Point& a, const Point& b);

// Exhaustive O(n^3) general-position check. Returns the first violating
// triple in lexicographic index order, or nullopt when no three points are
// collinear. For large inputs prefer collinear_scan (same verdict, faster).
std::optional<std::array<int, 3>> general_position(std::span<const Point> points);

// Rational point (1-t^2, 2t)/(1+t^2) on the unit circle.
Point unit_circle_point(const Rational& t);

// Second intersection of the line through p with the given slope and the
// circle c. p must lie exactly on c. The known root is factored out of the
// quadratic, so the result is rational. Throws "tangent secant" when the
// line is tangent at p.
Point secant_second_intersection(const Circle& c, const Point& p, const Rational& slope);

bool on_circle(const Circle& c, const Point& p);

// Intersection of lines ab and cd; nullopt when parallel.
std::optional<Point> line_intersection(const Point& a, const Point& b,
                                       const Point& c, const Point& d);

// Squared distance from p to the closed segment ab, exactly.
Rational dist2_point_segment(const Point& p, const Point& a, const Point& b);

// Foot of the perpendicular from p onto line ab.
Point foot_on_line(const Point& p, const Point& a, const Point& b);

// Exact point-in-polygon for a simple polygon (vertices in order). Boundary
// points count as inside.
bool point_in_simple_polygon(const Point& p, std::span<const Point> polygon);

}  // namespace flipdist
