#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "flipdist/geometry.hpp"

namespace flipdist {

// Unordered pair of point indices, normalized to a < b.
struct Edge {
  int32_t a;
  int32_t b;

  Edge(int32_t u, int32_t v) : a(u < v ? u : v), b(u < v ? v : u) {}

  friend bool operator==(const Edge& x, const Edge& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const Edge& x, const Edge& y) { return !(x == y); }
  friend bool operator<(const Edge& x, const Edge& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  }
  uint64_t key() const { return (static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b); }
};

struct EdgeHash {
  size_t operator()(const Edge& e) const { return std::hash<uint64_t>()(e.key()); }
};

enum class GpCheck {
  kAuto,   // exhaustive for small sets, duplicates only above the limit
  kFull,   // always exhaustive (throws on collinear triple)
  kSkip,   // duplicates only; caller owns the general-position guarantee
};

// Immutable indexed planar point set in general position. Index = identity.
class PointSet {
 public:
  explicit PointSet(std::vector<Point> points, GpCheck mode = GpCheck::kAuto);

  int size() const { return static_cast<int>(points_.size()); }
  const Point& operator[](int i) const { return points_[static_cast<size_t>(i)]; }
  std::span<const Point> points() const { return points_; }

  int hull_size() const { return static_cast<int>(hull_.size()); }
  // Convex hull vertex indices in counterclockwise order.
  const std::vector<int>& hull() const { return hull_; }

 private:
  std::vector<Point> points_;
  std::vector<int> hull_;
};

using PointSetPtr = std::shared_ptr<const PointSet>;

// Monotone-chain convex hull over exact coordinates; returns vertex indices
// in counterclockwise order (collinear points on the hull boundary excluded,
// which cannot occur in general position).
std::vector<int> convex_hull(std::span<const Point> points);

}  // namespace flipdist
