#pragma once

// Test-only oracles, kept independent of the library's arithmetic path:
// exact predicates recomputed with boost::multiprecision, plus small
// brute-force searches. Values cross the GMP/boost boundary as decimal
// strings only.

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "flipdist/geometry.hpp"

namespace oracle {

using BigInt = boost::multiprecision::cpp_int;

struct BigRat {
  BigInt num;
  BigInt den;  // > 0, not reduced; sign lives in num
};

inline BigRat to_big(const flipdist::Rational& r) {
  return BigRat{BigInt(r.num().get_str()), BigInt(r.den().get_str())};
}

inline BigRat sub(const BigRat& a, const BigRat& b) {
  return BigRat{a.num * b.den - b.num * a.den, a.den * b.den};
}

inline BigRat mul(const BigRat& a, const BigRat& b) { return BigRat{a.num * b.num, a.den * b.den}; }

inline int sign_of(const BigRat& a) { return a.num == 0 ? 0 : (a.num > 0 ? 1 : -1); }

// Independent cross-product orientation: sign of (q-p) x (r-p).
inline int orientation_sign(const flipdist::Point& p, const flipdist::Point& q,
                            const flipdist::Point& r) {
  BigRat px = to_big(p.x), py = to_big(p.y);
  BigRat qx = to_big(q.x), qy = to_big(q.y);
  BigRat rx = to_big(r.x), ry = to_big(r.y);
  BigRat lhs = mul(sub(qx, px), sub(ry, py));
  BigRat rhs = mul(sub(qy, py), sub(rx, px));
  return sign_of(sub(lhs, rhs));
}

// Exhaustive O(n^3) general-position scan on the oracle path.
inline std::optional<std::array<int, 3>> first_collinear_triple(
    std::span<const flipdist::Point> pts) {
  int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (oracle::orientation_sign(pts[i], pts[j], pts[k]) == 0)
          return std::array<int, 3>{i, j, k};
  return std::nullopt;
}

// Exact check x^2 + y^2 == 1 on the oracle path.
inline bool on_unit_circle(const flipdist::Point& p) {
  BigRat x = to_big(p.x), y = to_big(p.y);
  BigInt lhs = x.num * x.num * y.den * y.den + y.num * y.num * x.den * x.den;
  BigInt rhs = x.den * x.den * y.den * y.den;
  return lhs == rhs;
}

// Minimum adjacent-transposition distance by BFS over the swap graph.
inline int swap_bfs_distance(const std::vector<int>& from, const std::vector<int>& to) {
  if (from == to) return 0;
  std::map<std::vector<int>, int> dist;
  std::queue<std::vector<int>> q;
  dist[from] = 0;
  q.push(from);
  while (!q.empty()) {
    auto cur = q.front();
    q.pop();
    int d = dist[cur];
    for (size_t i = 0; i + 1 < cur.size(); ++i) {
      if (cur[i] == cur[i + 1]) continue;
      auto nxt = cur;
      std::swap(nxt[i], nxt[i + 1]);
      if (dist.count(nxt)) continue;
      if (nxt == to) return d + 1;
      dist[nxt] = d + 1;
      q.push(nxt);
    }
  }
  return -1;
}

// Deterministic random rational points on a coarse grid, filtered to general
// position (and optionally to no four cocircular) with the oracle predicate.
std::vector<flipdist::Point> random_points(int n, uint32_t seed, long grid = 1000);

}  // namespace oracle
