#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "flipdist/point_set.hpp"

namespace flipdist {

struct FlipStep {
  Edge removed;
  Edge inserted;

  friend bool operator==(const FlipStep& a, const FlipStep& b) {
    return a.removed == b.removed && a.inserted == b.inserted;
  }
  friend bool operator<(const FlipStep& a, const FlipStep& b) {
    return a.removed != b.removed ? a.removed < b.removed : a.inserted < b.inserted;
  }
};

using FlipSequence = std::vector<FlipStep>;

struct ValidationReport {
  bool ok = true;
  std::string message;
};

// Pair of triangle apexes of an edge; count is 1 for hull edges.
struct EdgeApexes {
  int32_t first = -1;
  int32_t second = -1;
  int count = 0;
};

// Immutable triangulation of a point set, identified by its edge set.
// Triangle structure is derived at construction and updated incrementally
// by flips. Value semantics: apply_flip returns a new triangulation sharing
// the immutable point data.
class Triangulation {
 public:
  Triangulation(PointSetPtr ps, std::vector<Edge> edges);

  const PointSet& point_set() const { return *ps_; }
  const PointSetPtr& point_set_ptr() const { return ps_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(const Edge& e) const;
  EdgeApexes apexes(const Edge& e) const;
  std::vector<std::array<int32_t, 3>> triangles() const;  // sorted triples

  // True iff e is interior and its two triangles form a strictly convex
  // quadrilateral. Throws "no such edge" when e is absent.
  bool flippable(const Edge& e) const;

  // Flip e; throws "illegal flip" unless flippable.
  std::pair<Triangulation, FlipStep> apply_flip(const Edge& e) const;

  // Sorted edge list serialized to bytes; equal iff edge sets equal.
  std::string canonical_key() const;

  friend bool operator==(const Triangulation& a, const Triangulation& b) {
    return a.edges_ == b.edges_;
  }

 private:
  PointSetPtr ps_;
  std::vector<Edge> edges_;  // sorted
  std::unordered_map<uint64_t, EdgeApexes> apex_;
};

// Checks that edges form a triangulation of ps: indices in range, no two
// edges properly crossing (first crossing pair is reported), and
// |edges| = 3n - hull_size - 3, which gives maximality for a crossing-free
// set. Violations are the return value, not errors.
ValidationReport validate_triangulation(const PointSet& ps, const std::vector<Edge>& edges);

// All segments between point pairs crossed by no other point-pair segment;
// these are part of every triangulation.
std::vector<Edge> unavoidable_edges(const PointSet& ps);

// Deterministic completion: repeatedly insert the lexicographically smallest
// (by index pair) absent segment that crosses no present edge. Throws if the
// partial set has a crossing.
Triangulation complete_to_triangulation(PointSetPtr ps, const std::vector<Edge>& partial);

}  // namespace flipdist
