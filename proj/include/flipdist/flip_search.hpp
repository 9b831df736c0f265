#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flipdist/triangulation.hpp"

namespace flipdist {

// Flip graph over canonical keys. Nodes are in discovery (BFS) order from
// the lexicographic completion of the empty edge set; adjacency pairs are
// sorted (u < v).
struct FlipGraph {
  std::vector<std::string> node_keys;
  std::vector<std::pair<int, int>> adjacency;
  std::vector<std::vector<Edge>> node_edges;
};

struct DistanceResult {
  bool exceeded = false;     // true when distance > budget
  long distance = -1;        // valid iff !exceeded
  FlipSequence witness;      // replays from t1 to t2; empty when exceeded
  long nodes_expanded = 0;
};

struct SearchOptions {
  long node_cap = 0;  // 0: use config default
  // Optional freeze: edges that may never be flipped (restricted flip graph).
  std::vector<Edge> frozen_edges;
};

// Exact flip distance by bidirectional layered breadth-first search with the
// admissible pruning heuristic h(T) = |edges(T) delta edges(target)| / 2.
// budget is mandatory; distances above it report `exceeded`. Deterministic,
// including the witness (ties broken by lexicographically smallest flip
// step, then smallest canonical key at the meeting node).
DistanceResult flip_distance(const Triangulation& t1, const Triangulation& t2, long budget,
                             const SearchOptions& opts = {});

// Reference single-frontier search used to cross-check the bidirectional
// one; same contract.
DistanceResult flip_distance_unidirectional(const Triangulation& t1, const Triangulation& t2,
                                            long budget, const SearchOptions& opts = {});

// Full flip graph of the point set; throws "flip graph too large" when the
// node count exceeds node_cap.
FlipGraph enumerate_flip_graph(PointSetPtr ps, long node_cap, const SearchOptions& opts = {});

// Connected component of `start` in the (optionally edge-frozen) flip
// graph. With frozen edges this enumerates a restricted flip graph, e.g.
// all triangulations containing the P_D boundary with fixed pockets.
FlipGraph enumerate_flip_graph_from(const Triangulation& start, long node_cap,
                                    const SearchOptions& opts = {});

// Number of properly crossing pairs (e1 in t1, e2 in t2).
long crossing_count(const Triangulation& t1, const Triangulation& t2);

// Lawson's locally improving flipping: repeatedly flip the lexicographically
// smallest edge whose quadrilateral fails the in_circle test until none
// fails. Requires that no four points are cocircular (checked; throws
// "Delaunay not unique" otherwise). The result is the Delaunay
// triangulation; the sequence length is at most n^2.
std::pair<Triangulation, FlipSequence> lawson_to_delaunay(const Triangulation& t);

// Diameter and eccentricities by BFS over an enumerated flip graph.
long flip_graph_diameter(const FlipGraph& g);

}  // namespace flipdist
