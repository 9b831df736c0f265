#include "oracles.hpp"

namespace oracle {

std::vector<flipdist::Point> random_points(int n, uint32_t seed, long grid) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> coord(-grid, grid);
  std::uniform_int_distribution<long> den(1, 7);
  std::vector<flipdist::Point> pts;
  while (static_cast<int>(pts.size()) < n) {
    flipdist::Point p{flipdist::Rational(coord(rng), den(rng)), flipdist::Rational(coord(rng), den(rng))};
    bool ok = true;
    for (const auto& q : pts)
      if (q == p) ok = false;
    if (!ok) continue;
    pts.push_back(p);
    if (first_collinear_triple(pts)) pts.pop_back();
  }
  return pts;
}

}  // namespace oracle
