#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "flipdist/flip_engine.hpp"
#include "flipdist/reduction.hpp"

namespace flipdist {

namespace {

// Flip away every edge crossing the open segment from `from` to `to`
// (nearest-first, skipping currently unflippable ones), until (from, to) is
// an edge. Standard constraint-insertion flipping; the gadget corridors are
// shaped so this stays within the lemma's flip counts.
FlipSequence open_corridor(FlipEngine& engine, int from, int to) {
  FlipSequence seq;
  long guard = 0;
  while (!engine.has_edge(Edge(from, to))) {
    std::vector<Edge> crossing = engine.edges_crossing_segment(from, to);
    if (crossing.empty()) throw std::logic_error("corridor walk found no crossing edges");
    if (guard == 0) guard = 64 * (static_cast<long>(crossing.size()) + 8);
    bool advanced = false;
    for (const Edge& g : crossing) {
      if (!engine.flippable(g)) continue;
      seq.push_back(engine.flip(g));
      advanced = true;
      break;
    }
    if (!advanced) throw std::logic_error("corridor stuck: no crossing edge flippable");
    if (--guard < 0) throw std::logic_error("corridor flip budget exceeded");
  }
  return seq;
}

void append_reversed(FlipSequence& seq, FlipEngine& engine, const FlipSequence& fwd) {
  for (auto it = fwd.rbegin(); it != fwd.rend(); ++it) {
    FlipStep inv{it->inserted, it->removed};
    engine.apply(inv);
    seq.push_back(inv);
  }
}

}  // namespace

FlipSequence cover_to_flips(const ReductionInstance& inst, const std::vector<int>& cover) {
  if (!is_vertex_cover(inst.graph, cover)) throw std::invalid_argument("uncovered edge");
  std::set<int> cover_set(cover.begin(), cover.end());

  // Each edge center is transformed by its smallest incident cover vertex.
  const int m = inst.graph.edge_count();
  std::map<int, std::vector<int>> assigned;  // vertex -> edge ids
  for (int e = 0; e < m; ++e) {
    auto [a, b] = inst.graph.edges[static_cast<size_t>(e)];
    int v = -1;
    if (cover_set.count(a)) v = a;
    if (cover_set.count(b) && (v < 0 || b < v)) v = b;
    assigned[v].push_back(e);
  }

  FlipEngine engine(inst.points->points(), inst.t1_edges);
  FlipSequence seq;

  for (const auto& [v, edge_ids] : assigned) {
    const VertexGadget& vg = inst.vertex_gadgets[static_cast<size_t>(v)];

    // Open the wiring: flip the zig-zag to a fan at the center, 2w-1 flips.
    FlipSequence zig;
    for (const Edge& z : vg.zigzag) {
      zig.push_back(engine.flip(z));
      seq.push_back(zig.back());
    }

    for (int e : edge_ids) {
      const EdgeGadget& eg = inst.edge_gadgets[static_cast<size_t>(e)];
      const bool at_west = eg.gv == v;
      const int d = eg.dc.n;
      const int u_near = at_west ? eg.dc.upper.front() : eg.dc.upper.back();
      const int l_near = at_west ? eg.dc.lower.front() : eg.dc.lower.back();

      FlipSequence cor1 = open_corridor(engine, vg.center, u_near);
      seq.insert(seq.end(), cor1.begin(), cor1.end());
      FlipSequence cor2 = open_corridor(engine, vg.center, l_near);
      seq.insert(seq.end(), cor2.begin(), cor2.end());

      // Transform the edge center through the kernel point: grow the star
      // of v over the center, then replay the reversed growth computed from
      // the target configuration.
      std::set<int> region(eg.dc.upper.begin(), eg.dc.upper.end());
      region.insert(eg.dc.lower.begin(), eg.dc.lower.end());
      FlipSequence phase1 = grow_star(engine, vg.center, region, 2L * d - 2);
      seq.insert(seq.end(), phase1.begin(), phase1.end());

      // Local model of the target configuration: P_D boundary, T2 fans and
      // the two corridor edges.
      std::vector<Edge> local = eg.dc.polygon_edges();
      for (int j = 0; j < d; ++j) local.emplace_back(eg.dc.upper.back(), eg.dc.lower[static_cast<size_t>(j)]);
      for (int i = 0; i < d; ++i) local.emplace_back(eg.dc.lower.front(), eg.dc.upper[static_cast<size_t>(i)]);
      local.emplace_back(vg.center, u_near);
      local.emplace_back(vg.center, l_near);
      std::sort(local.begin(), local.end());
      local.erase(std::unique(local.begin(), local.end()), local.end());
      FlipEngine target_model(inst.points->points(), local);
      FlipSequence phase2 = grow_star(target_model, vg.center, region, 2L * d - 2);
      append_reversed(seq, engine, phase2);

      append_reversed(seq, engine, cor2);
      append_reversed(seq, engine, cor1);
    }

    append_reversed(seq, engine, zig);
  }

  if (!(engine.edge_list() == inst.t2_edges))
    throw std::logic_error("compiled schedule does not reach T2");
  if (static_cast<long>(seq.size()) > inst.delta_bound(static_cast<long>(cover_set.size())))
    throw std::logic_error("compiled schedule exceeds the delta bound");
  return seq;
}

std::vector<int> flips_to_cover(const ReductionInstance& inst, const FlipSequence& seq) {
  FlipEngine engine(inst.points->points(), inst.t1_edges);
  for (const FlipStep& s : seq) {
    try {
      engine.apply(s);
    } catch (const std::exception&) {
      throw std::invalid_argument("sequence invalid");
    }
  }
  if (!(engine.edge_list() == inst.t2_edges)) throw std::invalid_argument("sequence invalid");

  const long w = inst.params.w;
  const long d = inst.params.d;
  const long len = static_cast<long>(seq.size());
  const int n = inst.graph.vertex_count;

  if (len >= (d - 1) * (d - 1)) {
    // Above the well depth the trivial cover is implied by the parameter
    // choice: floor(len / (4w-2)) >= n.
    std::vector<int> all;
    for (int v = 0; v < n; ++v) all.push_back(v);
    return all;
  }

  std::map<Edge, int> zig_owner;
  std::map<int, std::set<Edge>> removed;
  for (int v = 0; v < n; ++v)
    for (const Edge& z : inst.vertex_gadgets[static_cast<size_t>(v)].zigzag) zig_owner.emplace(z, v);
  for (const FlipStep& s : seq) {
    auto it = zig_owner.find(s.removed);
    if (it != zig_owner.end()) removed[it->second].insert(s.removed);
  }
  std::vector<int> cover;
  for (auto& [v, edges] : removed)
    if (static_cast<long>(edges.size()) == 2 * w - 1) cover.push_back(v);

  if (!is_vertex_cover(inst.graph, cover)) throw std::runtime_error("non-conforming sequence");
  if (static_cast<long>(cover.size()) > len / (4 * w - 2))
    throw std::runtime_error("non-conforming sequence");
  return cover;
}

}  // namespace flipdist
