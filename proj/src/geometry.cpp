#include "flipdist/geometry.hpp"

#include <stdexcept>

namespace flipdist {

Circle::Circle(Point c, Rational r2) : center(std::move(c)), radius_squared(std::move(r2)) {
  if (radius_squared.sign() <= 0) throw std::invalid_argument("circle radius_squared must be positive");
}

Rational cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

Rational dot(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.x - o.x) + (a.y - o.y) * (b.y - o.y);
}

Rational dist2(const Point& a, const Point& b) {
  return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
}

int orientation_sign(const Point& p, const Point& q, const Point& r) {
  // Clear denominators and compute the determinant sign in integers; the
  // cleared factor is a product of positive denominators.
  mpz_class ax = q.x.num() * p.x.den() - p.x.num() * q.x.den();  // (qx-px) * qxd*pxd
  mpz_class ay = q.y.num() * p.y.den() - p.y.num() * q.y.den();
  mpz_class bx = r.x.num() * p.x.den() - p.x.num() * r.x.den();
  mpz_class by = r.y.num() * p.y.den() - p.y.num() * r.y.den();
  // The determinant of ((qx-px),(qy-py);(rx-px),(ry-py)) has the same sign as
  // ax*by*[qyd*rxd] - ay*bx*[qxd*ryd] after multiplying through by the
  // positive denominators.
  mpz_class lhs = ax * by * (q.y.den() * r.x.den());
  mpz_class rhs = ay * bx * (q.x.den() * r.y.den());
  return cmp(lhs, rhs);
}

Orientation orientation(const Point& p, const Point& q, const Point& r) {
  int s = orientation_sign(p, q, r);
  if (s > 0) return Orientation::kLeft;
  if (s < 0) return Orientation::kRight;
  return Orientation::kCollinear;
}

CircleSide in_circle(const Point& a, const Point& b, const Point& c, const Point& q) {
  int orient = orientation_sign(a, b, c);
  if (orient == 0) throw std::invalid_argument("degenerate circumcircle");
  Rational adx = a.x - q.x, ady = a.y - q.y;
  Rational bdx = b.x - q.x, bdy = b.y - q.y;
  Rational cdx = c.x - q.x, cdy = c.y - q.y;
  Rational ad = adx * adx + ady * ady;
  Rational bd = bdx * bdx + bdy * bdy;
  Rational cd = cdx * cdx + cdy * cdy;
  Rational det = adx * (bdy * cd - cdy * bd)
               - ady * (bdx * cd - cdx * bd)
               + ad * (bdx * cdy - cdx * bdy);
  int s = det.sign() * orient;
  if (s > 0) return CircleSide::kInside;
  if (s < 0) return CircleSide::kOutside;
  return CircleSide::kOn;
}

bool segments_properly_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
  int o1 = orientation_sign(a, b, c);
  int o2 = orientation_sign(a, b, d);
  int o3 = orientation_sign(c, d, a);
  int o4 = orientation_sign(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

bool point_on_open_segment(const Point& p, const Point& a, const Point& b) {
  if (orientation_sign(a, b, p) != 0) return false;
  return dot(p, a, b).sign() < 0;  // angle apb is straight iff p between
}

std::optional<std::array<int, 3>> general_position(std::span<const Point> points) {
  const int n = static_cast<int>(points.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (orientation_sign(points[i], points[j], points[k]) == 0)
          return std::array<int, 3>{i, j, k};
  return std::nullopt;
}

Point unit_circle_point(const Rational& t) {
  Rational t2 = t * t;
  Rational den = t2 + Rational(1);
  return Point{(Rational(1) - t2) / den, (t + t) / den};
}

bool on_circle(const Circle& c, const Point& p) {
  return dist2(c.center, p) == c.radius_squared;
}

Point secant_second_intersection(const Circle& c, const Point& p, const Rational& slope) {
  if (!on_circle(c, p)) throw std::invalid_argument("secant point not on circle");
  // Parametrize the line as (p.x + s, p.y + m*s); with p on the circle the
  // quadratic in s has the known root s = 0, leaving
  // s = -2 (dx + m dy) / (1 + m^2).
  Rational dx = p.x - c.center.x;
  Rational dy = p.y - c.center.y;
  Rational numer = dx + slope * dy;
  if (numer.is_zero()) throw std::invalid_argument("tangent secant");
  Rational s = Rational(-2) * numer / (Rational(1) + slope * slope);
  return Point{p.x + s, p.y + slope * s};
}

std::optional<Point> line_intersection(const Point& a, const Point& b,
                                       const Point& c, const Point& d) {
  Rational rx = b.x - a.x, ry = b.y - a.y;
  Rational sx = d.x - c.x, sy = d.y - c.y;
  Rational denom = rx * sy - ry * sx;
  if (denom.is_zero()) return std::nullopt;
  Rational t = ((c.x - a.x) * sy - (c.y - a.y) * sx) / denom;
  return Point{a.x + t * rx, a.y + t * ry};
}

Rational dist2_point_segment(const Point& p, const Point& a, const Point& b) {
  Rational len2 = dist2(a, b);
  if (len2.is_zero()) return dist2(p, a);
  Rational t = dot(a, b, p) / len2;
  if (t.sign() <= 0) return dist2(p, a);
  if (t >= Rational(1)) return dist2(p, b);
  Point foot{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
  return dist2(p, foot);
}

Point foot_on_line(const Point& p, const Point& a, const Point& b) {
  Rational len2 = dist2(a, b);
  if (len2.is_zero()) throw std::invalid_argument("degenerate line");
  Rational t = dot(a, b, p) / len2;
  return Point{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

bool point_in_simple_polygon(const Point& p, std::span<const Point> polygon) {
  const int n = static_cast<int>(polygon.size());
  bool inside = false;
  for (int i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = polygon[j];
    const Point& b = polygon[i];
    if (p == a || p == b) return true;
    if (point_on_open_segment(p, a, b)) return true;
    // Crossing-number rule on the closed upward edge.
    bool a_below = a.y <= p.y;
    bool b_below = b.y <= p.y;
    if (a_below != b_below) {
      int side = orientation_sign(a, b, p);
      if (b.y > a.y ? side > 0 : side < 0) inside = !inside;
    }
  }
  return inside;
}

}  // namespace flipdist
