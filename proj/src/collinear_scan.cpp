#include "flipdist/collinear_scan.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace flipdist {

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((u128)a * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a % p, p - 2, p); }

u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

// Deterministic prime ladder; mpz_nextprime is deterministic.
u64 nth_prime(int k) {
  mpz_class base = (mpz_class(1) << 61) + 10'000'000L * k;
  mpz_class p;
  mpz_nextprime(p.get_mpz_t(), base.get_mpz_t());
  return p.get_ui();
}

struct ModPoint {
  u64 x, y;
};

// Reduce all coordinates mod p; fails (returns false) if any denominator is
// divisible by p.
bool reduce_points(std::span<const Point> pts, u64 p, std::vector<ModPoint>& out) {
  out.clear();
  out.reserve(pts.size());
  for (const Point& q : pts) {
    u64 xd = mpz_fdiv_ui(q.x.den().get_mpz_t(), p);
    u64 yd = mpz_fdiv_ui(q.y.den().get_mpz_t(), p);
    if (xd == 0 || yd == 0) return false;
    u64 xn = mpz_fdiv_ui(q.x.num().get_mpz_t(), p);
    u64 yn = mpz_fdiv_ui(q.y.num().get_mpz_t(), p);
    out.push_back(ModPoint{mulmod(xn, invmod(xd, p), p), mulmod(yn, invmod(yd, p), p)});
  }
  return true;
}

// Open-addressing table keyed by direction slope; duplicate keys chain along
// the probe sequence. Reused across anchors via epochs.
struct DirTable {
  std::vector<u64> key;
  std::vector<uint32_t> epoch;
  std::vector<int32_t> index;
  uint32_t cur = 0;
  size_t mask = 0;

  void reset(size_t n) {
    size_t cap = 1;
    while (cap < 2 * n) cap <<= 1;
    key.assign(cap, 0);
    epoch.assign(cap, 0);
    index.assign(cap, 0);
    mask = cap - 1;
    cur = 0;
  }
  void next_epoch() { ++cur; }
};

}  // namespace

std::optional<std::array<int, 3>> collinear_scan(std::span<const Point> points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) return std::nullopt;

  std::vector<ModPoint> mod;
  u64 p = 0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    p = nth_prime(attempt);
    if (reduce_points(points, p, mod)) break;
    p = 0;
  }
  if (p == 0) throw std::runtime_error("collinear_scan: no usable prime");

  DirTable table;
  table.reset(static_cast<size_t>(n));
  std::vector<u64> dx(n), dy(n), inv_acc(n);

  const u64 kVertical = ~u64{0};

  for (int i = 0; i + 2 < n; ++i) {
    table.next_epoch();
    const ModPoint pi = mod[static_cast<size_t>(i)];
    const int m = n - i - 1;
    // Batch-invert the dx values (product trick) to get slopes in one
    // modular inversion.
    u64 run = 1;
    for (int t = 0; t < m; ++t) {
      const ModPoint pj = mod[static_cast<size_t>(i + 1 + t)];
      u64 ddx = submod(pj.x, pi.x, p);
      dx[t] = ddx;
      dy[t] = submod(pj.y, pi.y, p);
      inv_acc[t] = run;
      if (ddx != 0) run = mulmod(run, ddx, p);
    }
    u64 inv_run = invmod(run, p);
    std::optional<std::array<int, 3>> best;
    for (int t = m - 1; t >= 0; --t) {
      u64 slope;
      if (dx[t] == 0) {
        slope = kVertical;
      } else {
        slope = mulmod(dy[t], mulmod(inv_run, inv_acc[t], p), p);
        inv_run = mulmod(inv_run, dx[t], p);
      }
      dy[t] = slope;  // reuse as slope storage
    }
    for (int t = 0; t < m; ++t) {
      const int j = i + 1 + t;
      u64 slope_key = dy[t] == kVertical ? p : dy[t];  // p is never a slope value
      size_t h = (slope_key * 0x9E3779B97F4A7C15ull) & table.mask;
      while (true) {
        if (table.epoch[h] != table.cur) {
          table.epoch[h] = table.cur;
          table.key[h] = slope_key;
          table.index[h] = j;
          break;
        }
        if (table.key[h] == slope_key) {
          int f = table.index[h];
          if (orientation_sign(points[static_cast<size_t>(i)], points[static_cast<size_t>(f)],
                               points[static_cast<size_t>(j)]) == 0) {
            std::array<int, 3> cand{i, f, j};
            if (!best || cand < *best) best = cand;
          }
        }
        h = (h + 1) & table.mask;
      }
    }
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace flipdist
