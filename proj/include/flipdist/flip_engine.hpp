#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "flipdist/triangulation.hpp"

namespace flipdist {

// Mutable flip state for long replays and compiled schedules. Same face
// bookkeeping as Triangulation, but flips are applied in place in O(1) hash
// work plus the exact convexity test.
class FlipEngine {
 public:
  FlipEngine(std::span<const Point> points, const std::vector<Edge>& edges);

  int point_count() const { return static_cast<int>(points_.size()); }
  long edge_count() const { return edge_count_; }
  bool has_edge(const Edge& e) const { return apex_.count(e.key()) != 0; }
  EdgeApexes apexes(const Edge& e) const;
  const std::vector<int32_t>& neighbors(int v) const { return adj_[static_cast<size_t>(v)]; }

  bool flippable(const Edge& e) const;
  // Flip e and return the step; throws "illegal flip" when not flippable.
  FlipStep flip(const Edge& e);
  // Checked replay of a recorded step (forward / inverted).
  void apply(const FlipStep& s);
  void apply_reverse(const FlipStep& s);

  std::vector<Edge> edge_list() const;  // sorted snapshot

  // Edges properly crossing the open segment between vertices a and b,
  // ordered from a to b (straight walk through the triangulation).
  std::vector<Edge> edges_crossing_segment(int a, int b) const;

 private:
  std::span<const Point> points_;
  std::unordered_map<uint64_t, EdgeApexes> apex_;
  std::vector<std::vector<int32_t>> adj_;
  long edge_count_ = 0;

  void adj_insert(int v, int32_t w);
  void adj_erase(int v, int32_t w);
};

}  // namespace flipdist
