#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flipdist/cubic_graph.hpp"
#include "flipdist/double_chain.hpp"
#include "flipdist/triangulation.hpp"

namespace flipdist {

struct LayoutParams {
  Rational delta;  // clearance from the polygon drawing
  Rational r_v;    // wiring circle radius, delta / 6
  long x_prime = 0;  // max crossings on a single drawn edge
  long x = 0;        // ceil(x_prime / 2)
  long d = 0;        // edge-center half size (points per chain)
  long w = 0;        // wiring chain length
  long c = 0;        // per-wiring boundary edge constant (measured)
  long tau = 0;      // c * n
  bool overridden = false;  // true when d/w were forced for testing

  // Checks w > m(4x+2d) + tau + 1/2 and (d-1)^2 > 2(n(2w-1) + m(4x+2d) + tau)
  // by integer arithmetic.
  bool inequalities_hold(int n, int m) const;
};

struct VertexGadget {
  int center = -1;  // point id of the graph vertex
  Circle circle{Point{Rational(0), Rational(0)}, Rational(1)};
  std::vector<int> ports;          // port point ids in ccw order around the circle
  std::vector<int> chain_l;        // l_1..l_w, l_1 at the far (empty-arc) end
  std::vector<int> chain_r;        // r_1..r_w
  std::vector<int> ring;           // all circle point ids in ccw order
  std::vector<Edge> zigzag;        // 2w-1 path edges, z_1 = (l_1, r_1)
};

struct EdgeGadget {
  int gv = -1, gw = -1;            // graph vertices (gv = west endpoint)
  int pv = -1, pw = -1;            // upper-wall tunnel ports (on C_gv / C_gw)
  int qv = -1, qw = -1;            // lower-wall tunnel ports
  Circle arc_upper{Point{Rational(0), Rational(0)}, Rational(1)};
  Circle arc_lower{Point{Rational(0), Rational(0)}, Rational(1)};
  DoubleChain dc;                  // upper chain on the upper wall, west first
  std::vector<int> wall_upper;     // full wall polyline ids, west to east
  std::vector<int> wall_lower;
  std::vector<std::array<int, 4>> crossing_quads;  // ccw quads, lex diagonal
};

struct ReductionInstance {
  CubicGraph graph;
  LayoutParams params;
  PointSetPtr points;
  std::vector<Edge> t1_edges;
  std::vector<Edge> t2_edges;
  std::vector<VertexGadget> vertex_gadgets;
  std::vector<EdgeGadget> edge_gadgets;

  // delta(k) = 2(k(2w-1) + m(4x+2d) + tau): the cover-to-flips length bound.
  long delta_bound(long k) const;
};

struct AssembleOptions {
  bool points_only = false;   // skip T1/T2 synthesis
  long d_override = 0;        // testing: force small d (params flagged)
  long w_override = 0;        // testing: force small w
  bool collinearity_scan = true;  // run the full scan (and repair) when feasible
};

// ---- Pipeline stages (assemble drives these in order) ----

// n points selected greedily from the n^5 rational unit-circle candidates
// t = i/n^5 so that no three diagonals of the n-gon are concurrent.
std::vector<Point> embed_polygon(int n);

// delta = min{delta_e'/3, delta_v', delta_n', delta_r} over the polygon's
// diagonal drawing, each term a rational coordinate-distance underestimate;
// r_V = delta/6.
std::pair<Rational, Rational> compute_clearances(const std::vector<Point>& polygon);

// Max crossings per drawn edge and the center points c_e (as parameters
// along each edge, placed in a gap with at most x crossings on each side).
struct DrawingInfo {
  long x_prime = 0;
  long x = 0;
  std::vector<Rational> center_param;              // per edge
  std::vector<std::vector<Rational>> crossing_params;  // per edge, sorted
};
DrawingInfo analyze_drawing(const CubicGraph& g, const std::vector<Point>& polygon);

// Minimal integer d with (d-1)^2 > 2(n(2w(d)-1) + m(4x+2d) + tau) where
// w(d) = m(4x+2d) + tau + 1, then w = w(d).
std::pair<long, long> solve_parameters(int n, int m, long x, long tau);

ReductionInstance assemble(const CubicGraph& g, const AssembleOptions& opts = {});

// ---- Compilers ----

// Constructive schedule per the cover: open each cover vertex's wiring
// (2w-1 flips), open a corridor to each assigned edge center, transform it
// through the kernel point, and undo everything. Replays from T1 to exactly
// T2 with length at most delta_bound(|cover|).
FlipSequence cover_to_flips(const ReductionInstance& inst, const std::vector<int>& cover);

// Vertices whose wiring zig-zag edges were all removed at some time during
// the sequence. Verifies the sequence replays from T1 to T2, that the
// extracted set covers the graph, and that its size is at most
// floor(len / (4w-2)). Throws "non-conforming sequence" otherwise.
std::vector<int> flips_to_cover(const ReductionInstance& inst, const FlipSequence& seq);

// ---- Validation ----

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

enum class ValidateLevel { kGadgets, kFull };

// Gadget invariants, parameter inequalities, point-on-circle identities,
// kernel containment/outsideness sweeps, T1/T2 difference confinement, and
// (kFull, size permitting) the complete collinearity scan.
std::vector<CheckResult> validate_instance(const ReductionInstance& inst, ValidateLevel level);

bool all_pass(const std::vector<CheckResult>& checks);

}  // namespace flipdist
