#include "flipdist/point_set.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "flipdist/collinear_scan.hpp"
#include "flipdist/config.hpp"

namespace flipdist {

namespace {

bool lex_less(const Point& a, const Point& b) {
  return a.x != b.x ? a.x < b.x : a.y < b.y;
}

}  // namespace

std::vector<int> convex_hull(std::span<const Point> points) {
  const int n = static_cast<int>(points.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return lex_less(points[i], points[j]); });

  auto build = [&](auto begin, auto end) {
    std::vector<int> chain;
    for (auto it = begin; it != end; ++it) {
      while (chain.size() >= 2 &&
             orientation_sign(points[chain[chain.size() - 2]], points[chain.back()], points[*it]) <= 0)
        chain.pop_back();
      chain.push_back(*it);
    }
    return chain;
  };
  std::vector<int> lower = build(idx.begin(), idx.end());
  std::vector<int> upper = build(idx.rbegin(), idx.rend());
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  return lower;
}

PointSet::PointSet(std::vector<Point> points, GpCheck mode) : points_(std::move(points)) {
  const int n = size();
  if (n < 3) throw std::invalid_argument("point set needs at least 3 points");

  // Duplicates are always rejected.
  {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int i, int j) { return lex_less(points_[i], points_[j]); });
    for (int i = 0; i + 1 < n; ++i)
      if (points_[idx[i]] == points_[idx[i + 1]])
        throw std::invalid_argument("duplicate point at indices " + std::to_string(std::min(idx[i], idx[i + 1])) +
                                    " and " + std::to_string(std::max(idx[i], idx[i + 1])));
  }

  bool check = mode == GpCheck::kFull ||
               (mode == GpCheck::kAuto && n <= config::kPointSetAutoGpLimit);
  if (check) {
    if (auto triple = collinear_scan(points_)) {
      throw std::invalid_argument("collinear points at indices " + std::to_string((*triple)[0]) + ", " +
                                  std::to_string((*triple)[1]) + ", " + std::to_string((*triple)[2]));
    }
  }
  hull_ = convex_hull(points_);
}

}  // namespace flipdist
