#include "flipdist/flip_search.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "flipdist/config.hpp"

namespace flipdist {

namespace {

long effective_cap(const SearchOptions& opts) {
  return opts.node_cap > 0 ? opts.node_cap : config::kSearchNodeCapDefault;
}

std::vector<Edge> flippable_edges(const Triangulation& t, const std::set<Edge>& frozen) {
  std::vector<Edge> out;
  for (const Edge& e : t.edges()) {
    if (frozen.count(e)) continue;
    if (t.flippable(e)) out.push_back(e);
  }
  return out;
}

// Half the symmetric difference of edge sets: admissible lower bound on the
// flip distance (each flip changes one edge, shrinking the difference by at
// most 2).
long half_delta(const std::vector<Edge>& a, const std::vector<Edge>& b) {
  size_t i = 0, j = 0;
  long diff = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) { ++i; ++j; }
    else if (a[i] < b[j]) { ++diff; ++i; }
    else { ++diff; ++j; }
  }
  diff += static_cast<long>(a.size() - i) + static_cast<long>(b.size() - j);
  return diff / 2;
}

struct NodeInfo {
  long g = 0;
  std::string parent;   // empty at the root
  FlipStep step{Edge(0, 1), Edge(0, 1)};
  Triangulation tri;
};

using Visited = std::map<std::string, NodeInfo>;

FlipSequence reconstruct_forward(const Visited& side, const std::string& key) {
  FlipSequence seq;
  const NodeInfo* cur = &side.at(key);
  while (!cur->parent.empty()) {
    seq.push_back(cur->step);
    cur = &side.at(cur->parent);
  }
  std::reverse(seq.begin(), seq.end());
  return seq;
}

FlipSequence reconstruct_backward(const Visited& side, const std::string& key) {
  FlipSequence seq;
  const NodeInfo* cur = &side.at(key);
  while (!cur->parent.empty()) {
    seq.push_back(FlipStep{cur->step.inserted, cur->step.removed});
    cur = &side.at(cur->parent);
  }
  return seq;
}

}  // namespace

DistanceResult flip_distance(const Triangulation& t1, const Triangulation& t2, long budget,
                             const SearchOptions& opts) {
  if (t1.point_set_ptr().get() != t2.point_set_ptr().get() &&
      !(t1.point_set().points().size() == t2.point_set().points().size()))
    throw std::invalid_argument("triangulations over different point sets");
  if (budget < 0) throw std::invalid_argument("budget must be nonnegative");
  const std::set<Edge> frozen(opts.frozen_edges.begin(), opts.frozen_edges.end());
  const long cap = effective_cap(opts);

  DistanceResult res;
  std::string k1 = t1.canonical_key();
  std::string k2 = t2.canonical_key();
  if (k1 == k2) {
    res.distance = 0;
    return res;
  }

  Visited vis_f, vis_b;
  vis_f.emplace(k1, NodeInfo{0, "", FlipStep{Edge(0, 1), Edge(0, 1)}, t1});
  vis_b.emplace(k2, NodeInfo{0, "", FlipStep{Edge(0, 1), Edge(0, 1)}, t2});
  std::vector<std::string> front_f{k1}, front_b{k2};
  long df = 0, db = 0;
  long best = budget + 1;
  std::string best_key;

  auto expand_layer = [&](Visited& vis, Visited& other, std::vector<std::string>& frontier,
                          long depth, const Triangulation& target) {
    std::vector<std::string> next;
    for (const std::string& key : frontier) {
      const Triangulation tri = vis.at(key).tri;
      ++res.nodes_expanded;
      for (const Edge& e : flippable_edges(tri, frozen)) {
        auto [child, step] = tri.apply_flip(e);
        if (depth + 1 + half_delta(child.edges(), target.edges()) > budget) continue;
        std::string ck = child.canonical_key();
        auto it = vis.find(ck);
        if (it != vis.end()) {
          // Deterministic witness: prefer the lexicographically smaller step
          // among parents in the same layer.
          if (it->second.g == depth + 1 && step < it->second.step) {
            it->second.parent = key;
            it->second.step = step;
          }
          continue;
        }
        if (static_cast<long>(vis.size() + other.size()) >= cap)
          throw std::runtime_error("flip search node cap exceeded");
        vis.emplace(ck, NodeInfo{depth + 1, key, step, child});
        next.push_back(ck);
        auto ot = other.find(ck);
        if (ot != other.end()) {
          long total = depth + 1 + ot->second.g;
          if (total < best || (total == best && ck < best_key)) {
            best = total;
            best_key = ck;
          }
        }
      }
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  };

  while (!front_f.empty() && !front_b.empty() && df + db + 1 < best) {
    if (front_f.size() <= front_b.size()) {
      expand_layer(vis_f, vis_b, front_f, df, t2);
      ++df;
    } else {
      expand_layer(vis_b, vis_f, front_b, db, t1);
      ++db;
    }
  }

  if (best > budget) {
    res.exceeded = true;
    return res;
  }
  res.distance = best;
  FlipSequence fwd = reconstruct_forward(vis_f, best_key);
  FlipSequence bwd = reconstruct_backward(vis_b, best_key);
  fwd.insert(fwd.end(), bwd.begin(), bwd.end());
  res.witness = std::move(fwd);
  return res;
}

DistanceResult flip_distance_unidirectional(const Triangulation& t1, const Triangulation& t2,
                                            long budget, const SearchOptions& opts) {
  const std::set<Edge> frozen(opts.frozen_edges.begin(), opts.frozen_edges.end());
  const long cap = effective_cap(opts);
  DistanceResult res;
  std::string goal = t2.canonical_key();
  std::string k1 = t1.canonical_key();
  if (k1 == goal) {
    res.distance = 0;
    return res;
  }
  Visited vis;
  vis.emplace(k1, NodeInfo{0, "", FlipStep{Edge(0, 1), Edge(0, 1)}, t1});
  std::vector<std::string> frontier{k1};
  for (long depth = 0; depth < budget && !frontier.empty(); ++depth) {
    std::vector<std::string> next;
    for (const std::string& key : frontier) {
      const Triangulation tri = vis.at(key).tri;
      ++res.nodes_expanded;
      for (const Edge& e : flippable_edges(tri, frozen)) {
        auto [child, step] = tri.apply_flip(e);
        if (depth + 1 + half_delta(child.edges(), t2.edges()) > budget) continue;
        std::string ck = child.canonical_key();
        auto it = vis.find(ck);
        if (it != vis.end()) {
          if (it->second.g == depth + 1 && step < it->second.step) {
            it->second.parent = key;
            it->second.step = step;
          }
          continue;
        }
        if (static_cast<long>(vis.size()) >= cap)
          throw std::runtime_error("flip search node cap exceeded");
        vis.emplace(ck, NodeInfo{depth + 1, key, step, child});
        if (ck == goal) {
          res.distance = depth + 1;
          res.witness = reconstruct_forward(vis, ck);
          return res;
        }
        next.push_back(ck);
      }
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  res.exceeded = true;
  return res;
}

FlipGraph enumerate_flip_graph(PointSetPtr ps, long node_cap, const SearchOptions& opts) {
  return enumerate_flip_graph_from(complete_to_triangulation(std::move(ps), {}), node_cap, opts);
}

FlipGraph enumerate_flip_graph_from(const Triangulation& start, long node_cap,
                                    const SearchOptions& opts) {
  const std::set<Edge> frozen(opts.frozen_edges.begin(), opts.frozen_edges.end());
  FlipGraph g;
  std::map<std::string, int> index;
  std::vector<Triangulation> todo{start};
  index.emplace(start.canonical_key(), 0);
  g.node_keys.push_back(start.canonical_key());
  g.node_edges.push_back(start.edges());
  std::set<std::pair<int, int>> adj;
  for (size_t head = 0; head < todo.size(); ++head) {
    Triangulation tri = todo[head];
    int u = index.at(tri.canonical_key());
    for (const Edge& e : flippable_edges(tri, frozen)) {
      auto [child, step] = tri.apply_flip(e);
      std::string ck = child.canonical_key();
      auto it = index.find(ck);
      int v;
      if (it == index.end()) {
        if (static_cast<long>(g.node_keys.size()) >= node_cap)
          throw std::runtime_error("flip graph too large");
        v = static_cast<int>(g.node_keys.size());
        index.emplace(ck, v);
        g.node_keys.push_back(ck);
        g.node_edges.push_back(child.edges());
        todo.push_back(std::move(child));
      } else {
        v = it->second;
      }
      adj.emplace(std::min(u, v), std::max(u, v));
    }
  }
  g.adjacency.assign(adj.begin(), adj.end());
  return g;
}

long crossing_count(const Triangulation& t1, const Triangulation& t2) {
  const PointSet& ps = t1.point_set();
  long count = 0;
  for (const Edge& e : t1.edges())
    for (const Edge& f : t2.edges())
      if (segments_properly_cross(ps[e.a], ps[e.b], ps[f.a], ps[f.b])) ++count;
  return count;
}

std::pair<Triangulation, FlipSequence> lawson_to_delaunay(const Triangulation& t) {
  const PointSet& ps = t.point_set();
  const int n = ps.size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        if (orientation_sign(ps[a], ps[b], ps[c]) == 0) continue;
        for (int d = c + 1; d < n; ++d)
          if (in_circle(ps[a], ps[b], ps[c], ps[d]) == CircleSide::kOn)
            throw std::invalid_argument("Delaunay not unique");
      }

  Triangulation cur = t;
  FlipSequence seq;
  const long limit = static_cast<long>(n) * n;
  while (true) {
    bool flipped = false;
    for (const Edge& e : cur.edges()) {
      EdgeApexes ax = cur.apexes(e);
      if (ax.count != 2) continue;
      if (in_circle(ps[e.a], ps[e.b], ps[ax.first], ps[ax.second]) != CircleSide::kInside)
        continue;
      auto [next, step] = cur.apply_flip(e);
      cur = std::move(next);
      seq.push_back(step);
      flipped = true;
      break;  // restart at the lexicographically smallest failing edge
    }
    if (!flipped) break;
    if (static_cast<long>(seq.size()) > limit)
      throw std::logic_error("Lawson flipping exceeded n^2 flips");
  }
  return {std::move(cur), std::move(seq)};
}

long flip_graph_diameter(const FlipGraph& g) {
  const int n = static_cast<int>(g.node_keys.size());
  std::vector<std::vector<int>> adj(static_cast<size_t>(n));
  for (auto [u, v] : g.adjacency) {
    adj[static_cast<size_t>(u)].push_back(v);
    adj[static_cast<size_t>(v)].push_back(u);
  }
  long diameter = 0;
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(static_cast<size_t>(n), -1);
    std::queue<int> q;
    dist[static_cast<size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[static_cast<size_t>(u)])
        if (dist[static_cast<size_t>(v)] < 0) {
          dist[static_cast<size_t>(v)] = dist[static_cast<size_t>(u)] + 1;
          q.push(v);
        }
    }
    for (int v = 0; v < n; ++v) {
      if (dist[static_cast<size_t>(v)] < 0) throw std::logic_error("flip graph not connected");
      diameter = std::max(diameter, static_cast<long>(dist[static_cast<size_t>(v)]));
    }
  }
  return diameter;
}

}  // namespace flipdist
