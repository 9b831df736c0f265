#pragma once

#include <array>
#include <optional>
#include <span>

#include "flipdist/geometry.hpp"

namespace flipdist {

// Complete collinearity detection over all index triples, equivalent to the
// exhaustive O(n^3) general_position scan but organized per anchor point:
// coordinates are reduced modulo a large prime and directions from each
// anchor are hashed; a truly collinear triple always collides, and every
// collision is verified with the exact predicate before being reported, so
// the verdict is exact. Expected O(n^2) time. Points must be pairwise
// distinct. Returns the lexicographically first collinear triple, or nullopt.
std::optional<std::array<int, 3>> collinear_scan(std::span<const Point> points);

}  // namespace flipdist
