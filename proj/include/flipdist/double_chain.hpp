#pragma once

#include <set>
#include <utility>
#include <vector>

#include "flipdist/triangulation.hpp"

namespace flipdist {

// Double chain of 2n points: an upper and a lower chain of n points each,
// both bending toward the separating line, so that every point of one chain
// sees every point of the other. upper/lower are point indices ordered left
// to right along the separating line; the line itself is stored as two
// points (direction sep_a -> sep_b), with the upper chain on its left.
struct DoubleChain {
  int n = 0;
  std::vector<int> upper;
  std::vector<int> lower;
  PointSetPtr point_set;
  Point sep_a;
  Point sep_b;

  const Point& up(int i) const { return (*point_set)[upper[static_cast<size_t>(i)]]; }
  const Point& lo(int i) const { return (*point_set)[lower[static_cast<size_t>(i)]]; }

  // Polygon P_D = (l_1 ... l_n, u_n ... u_1).
  std::vector<int> polygon_indices() const;
  std::vector<Edge> polygon_edges() const;  // chains plus the two end edges
  std::vector<Edge> chain_edges() const;
};

struct DoubleChainFrame {
  Rational half_width = Rational(0);  // 0: derived from n
  Rational half_gap = Rational(1);
  Rational flatness = Rational(0);    // 0: derived from n
};

// 2n rational points on two shallow circular arcs facing each other across
// the horizontal axis. All DoubleChain invariants hold and the set is in
// general position. n >= 2.
std::pair<PointSetPtr, DoubleChain> build_double_chain(int n, const DoubleChainFrame& frame = {});

// Checks the defining properties: mutual visibility across chains, chains
// bending away from each other, a separating line. Throws on violation.
void validate_double_chain(const DoubleChain& dc);

// T1: u_1 adjacent to every lower point; T2: mirror image with l_1 adjacent
// to every upper point. Inside P_D the rest of the structure is forced (the
// far-end point fans back across the opposite chain); the convex-hull
// pockets are completed with the lexicographic rule, identically for both.
std::pair<Triangulation, Triangulation> fan_triangulations(const DoubleChain& dc);

// 0/1 word read off the triangles stabbed by the separating line, ordered
// along the line: 1 for two upper vertices, 0 for two lower. Requires every
// P_D boundary edge present in t.
struct LabelSequence {
  std::vector<int> labels;

  friend bool operator==(const LabelSequence& a, const LabelSequence& b) {
    return a.labels == b.labels;
  }
  std::string str() const;
};

LabelSequence label_sequence(const DoubleChain& dc, const Triangulation& t);

// Minimum number of adjacent transpositions turning s1 into s2 (inversion
// count); throws when the label multisets differ.
long inversion_distance(const LabelSequence& s1, const LabelSequence& s2);

struct RegionFlags {
  bool outside = false;
  bool in_wedge = false;
  bool in_polygon = false;
  bool in_kernel = false;
};

// Classification against the wedge W = W_1 union W_n, the polygon P_D and
// the kernel (intersection of the four closed half-planes bounded by the
// extreme chain edges, on the inner side). outside = not in W union P_D.
RegionFlags classify_point(const DoubleChain& dc, const Point& p);

// Local triangulation L(T) of the polygon P_D induced by a triangulation of
// D union S: edges are slid chain-point by chain-point onto P_D. Every point
// of S must classify as outside. Returns all edges of the local
// triangulation including the P_D boundary.
std::vector<Edge> local_triangulation(const DoubleChain& dc, const Triangulation& t);

// True iff `edges` triangulates P_D: boundary present, interior edges
// crossing-free, inside the polygon, and maximal (2n-3 interior edges).
bool is_polygon_triangulation(const DoubleChain& dc, const std::vector<Edge>& edges);

// Flip schedule between two triangulations of D union {s} where s lies in
// the kernel: grow the star of s over P_D (at most 2n-2 flips), then replay
// the reversed growth toward `to`. Length at most 4n-4; validates by replay.
FlipSequence kernel_steiner_sequence(const DoubleChain& dc, int steiner,
                                     const Triangulation& from, const Triangulation& to);

// A rational point in the kernel, outside P_D beyond the u1-l1 mouth, that
// sees the interior only through the mouth. Appending it to the point set
// keeps general position.
Point kernel_point_beyond_mouth(const DoubleChain& dc);

class FlipEngine;

// Star-growth primitive behind kernel_steiner_sequence: flip edges facing
// `steiner` whose far apex lies in `region` (lexicographically smallest
// first) until steiner is adjacent to all of `region`. One flip per gained
// adjacency.
FlipSequence grow_star(FlipEngine& engine, int steiner, const std::set<int>& region,
                       long max_flips);

}  // namespace flipdist
