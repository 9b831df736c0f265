#include "flipdist/planar.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace flipdist {

namespace {

// Counterclockwise order of directions starting just above the positive
// x-axis. half 0: dy > 0 or (dy == 0 and dx > 0); half 1: the rest.
struct DirLess {
  std::span<const Point> pts;
  int origin;

  int half(const Point& d) const {
    int sy = d.y.sign();
    if (sy > 0) return 0;
    if (sy < 0) return 1;
    return d.x.sign() > 0 ? 0 : 1;
  }
  bool operator()(int a, int b) const {
    const Point& o = pts[static_cast<size_t>(origin)];
    Point da{pts[static_cast<size_t>(a)].x - o.x, pts[static_cast<size_t>(a)].y - o.y};
    Point db{pts[static_cast<size_t>(b)].x - o.x, pts[static_cast<size_t>(b)].y - o.y};
    int ha = half(da), hb = half(db);
    if (ha != hb) return ha < hb;
    Rational c = da.x * db.y - da.y * db.x;
    int s = c.sign();
    if (s != 0) return s > 0;
    throw std::logic_error("two edges leave a vertex in the same direction");
  }
};

}  // namespace

PlaneFaces extract_faces(std::span<const Point> points, const std::vector<Edge>& edges) {
  const int n = static_cast<int>(points.size());
  std::vector<std::vector<int>> adj(static_cast<size_t>(n));
  for (const Edge& e : edges) {
    adj[static_cast<size_t>(e.a)].push_back(e.b);
    adj[static_cast<size_t>(e.b)].push_back(e.a);
  }
  for (int v = 0; v < n; ++v)
    std::sort(adj[static_cast<size_t>(v)].begin(), adj[static_cast<size_t>(v)].end(),
              DirLess{points, v});
  auto rot_pos = [&](int v, int u) {
    const auto& lst = adj[static_cast<size_t>(v)];
    for (size_t i = 0; i < lst.size(); ++i)
      if (lst[i] == u) return static_cast<int>(i);
    throw std::logic_error("half-edge endpoint missing from rotation");
  };

  // Half-edge u->v identified by (edge index in adj[u]); face successor of
  // (u, v) is (v, w) with w the CCW-predecessor of u around v, which walks
  // bounded faces counterclockwise.
  std::unordered_map<uint64_t, char> used;
  used.reserve(edges.size() * 4);
  auto he_key = [](int u, int v) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 32) | static_cast<uint32_t>(v);
  };

  PlaneFaces out;
  bool outer_found = false;
  for (const Edge& e : edges) {
    for (int dir = 0; dir < 2; ++dir) {
      int su = dir == 0 ? e.a : e.b;
      int sv = dir == 0 ? e.b : e.a;
      if (used.count(he_key(su, sv))) continue;
      std::vector<int> cycle;
      int u = su, v = sv;
      do {
        used.emplace(he_key(u, v), 1);
        cycle.push_back(u);
        const auto& lst = adj[static_cast<size_t>(v)];
        int i = rot_pos(v, u);
        int w = lst[static_cast<size_t>((static_cast<size_t>(i) + lst.size() - 1) % lst.size())];
        u = v;
        v = w;
      } while (!(u == su && v == sv));

      // Orientation via the turn at the lexicographically smallest vertex.
      size_t best = 0;
      for (size_t i = 1; i < cycle.size(); ++i) {
        const Point& p = points[static_cast<size_t>(cycle[i])];
        const Point& q = points[static_cast<size_t>(cycle[best])];
        if (p.x != q.x ? p.x < q.x : p.y < q.y) best = i;
      }
      const Point& prev = points[static_cast<size_t>(cycle[(best + cycle.size() - 1) % cycle.size()])];
      const Point& cur = points[static_cast<size_t>(cycle[best])];
      const Point& next = points[static_cast<size_t>(cycle[(best + 1) % cycle.size()])];
      int turn = orientation_sign(prev, cur, next);
      if (turn == 0) throw std::logic_error("degenerate face corner");
      if (turn > 0) {
        out.bounded.push_back(std::move(cycle));
      } else {
        if (outer_found) throw std::logic_error("multiple outer faces: graph not connected");
        out.outer = std::move(cycle);
        outer_found = true;
      }
    }
  }
  if (!outer_found) throw std::logic_error("no outer face found");
  // Euler check: V - E + F = 2 over the vertices actually used.
  std::vector<char> seen(static_cast<size_t>(n), 0);
  long vused = 0;
  for (const Edge& e : edges) {
    for (int x : {static_cast<int>(e.a), static_cast<int>(e.b)})
      if (!seen[static_cast<size_t>(x)]) {
        seen[static_cast<size_t>(x)] = 1;
        ++vused;
      }
  }
  long faces = static_cast<long>(out.bounded.size()) + 1;
  if (vused - static_cast<long>(edges.size()) + faces != 2)
    throw std::logic_error("face walk violates Euler's formula (graph not plane/connected)");
  return out;
}

std::vector<Edge> triangulate_face(std::span<const Point> points, const std::vector<int>& cycle) {
  const int k = static_cast<int>(cycle.size());
  if (k < 3) throw std::invalid_argument("face cycle too short");
  if (k == 3) return {};
  {
    std::vector<int> copy = cycle;
    std::sort(copy.begin(), copy.end());
    if (std::adjacent_find(copy.begin(), copy.end()) != copy.end())
      throw std::invalid_argument("face cycle is not simple");
  }

  std::vector<int> next(static_cast<size_t>(k)), prev(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    next[static_cast<size_t>(i)] = (i + 1) % k;
    prev[static_cast<size_t>(i)] = (i + k - 1) % k;
  }
  auto pt = [&](int node) -> const Point& { return points[static_cast<size_t>(cycle[static_cast<size_t>(node)])]; };
  auto is_convex = [&](int node) {
    return orientation_sign(pt(prev[static_cast<size_t>(node)]), pt(node), pt(next[static_cast<size_t>(node)])) > 0;
  };

  // Reflex vertices sorted by a double-precision x key for range pruning;
  // containment candidates are confirmed exactly.
  std::multimap<double, int> reflex;
  std::vector<std::multimap<double, int>::iterator> where(static_cast<size_t>(k), reflex.end());
  auto add_reflex = [&](int node) {
    where[static_cast<size_t>(node)] = reflex.emplace(pt(node).x.to_double(), node);
  };
  auto drop_reflex = [&](int node) {
    if (where[static_cast<size_t>(node)] != reflex.end()) {
      reflex.erase(where[static_cast<size_t>(node)]);
      where[static_cast<size_t>(node)] = reflex.end();
    }
  };
  for (int i = 0; i < k; ++i)
    if (!is_convex(i)) add_reflex(i);

  auto ear_ok = [&](int node) {
    if (where[static_cast<size_t>(node)] != reflex.end()) return false;  // reflex
    int a = prev[static_cast<size_t>(node)], b = next[static_cast<size_t>(node)];
    const Point& pa = pt(a);
    const Point& pb = pt(node);
    const Point& pc = pt(b);
    double lo = std::min({pa.x.to_double(), pb.x.to_double(), pc.x.to_double()});
    double hi = std::max({pa.x.to_double(), pb.x.to_double(), pc.x.to_double()});
    // Outward slack for double rounding.
    double pad = (hi - lo + 1.0) * 1e-9 + 1e-300;
    for (auto it = reflex.lower_bound(lo - pad); it != reflex.end() && it->first <= hi + pad; ++it) {
      int r = it->second;
      if (r == a || r == b) continue;
      const Point& pr = pt(r);
      int s1 = orientation_sign(pa, pb, pr);
      int s2 = orientation_sign(pb, pc, pr);
      int s3 = orientation_sign(pc, pa, pr);
      if (s1 >= 0 && s2 >= 0 && s3 >= 0) return false;  // inside or on (CCW ear)
    }
    return true;
  };

  // Ears processed smallest point index first. A candidate blocked by a
  // far-away reflex vertex is parked and retried in the next round, so the
  // queue never rescans the same blocked ear within a round.
  std::set<std::pair<int, int>> queue;  // (point index, node)
  std::vector<char> alive(static_cast<size_t>(k), 1);
  for (int i = 0; i < k; ++i)
    if (where[static_cast<size_t>(i)] == reflex.end()) queue.emplace(cycle[static_cast<size_t>(i)], i);

  std::vector<Edge> chords;
  std::vector<std::pair<int, int>> parked;
  int remaining = k;
  long clipped_this_round = 0;
  while (remaining > 3) {
    if (queue.empty()) {
      if (parked.empty() || clipped_this_round == 0)
        throw std::logic_error("ear clipping stuck (face not simple?)");
      queue.insert(parked.begin(), parked.end());
      parked.clear();
      clipped_this_round = 0;
      continue;
    }
    auto it = queue.begin();
    int node = it->second;
    queue.erase(it);
    if (!alive[static_cast<size_t>(node)] || where[static_cast<size_t>(node)] != reflex.end())
      continue;
    if (!ear_ok(node)) {
      parked.emplace_back(cycle[static_cast<size_t>(node)], node);
      continue;
    }
    int a = prev[static_cast<size_t>(node)], b = next[static_cast<size_t>(node)];
    chords.emplace_back(cycle[static_cast<size_t>(a)], cycle[static_cast<size_t>(b)]);
    alive[static_cast<size_t>(node)] = 0;
    drop_reflex(node);
    next[static_cast<size_t>(a)] = b;
    prev[static_cast<size_t>(b)] = a;
    for (int nb : {a, b}) {
      bool was_reflex = where[static_cast<size_t>(nb)] != reflex.end();
      bool now_convex = is_convex(nb);
      if (was_reflex && now_convex) {
        drop_reflex(nb);
        queue.emplace(cycle[static_cast<size_t>(nb)], nb);
      } else if (!was_reflex && !now_convex) {
        add_reflex(nb);
      } else if (!was_reflex) {
        queue.emplace(cycle[static_cast<size_t>(nb)], nb);  // revisit as ear
      }
    }
    --remaining;
    ++clipped_this_round;
  }
  return chords;
}

std::vector<Edge> complete_plane_graph(std::span<const Point> points,
                                       const std::vector<Edge>& edges,
                                       const std::vector<int>& hull) {
  PlaneFaces faces = extract_faces(points, edges);
  std::vector<Edge> added;
  for (const auto& cycle : faces.bounded) {
    auto chords = triangulate_face(points, cycle);
    added.insert(added.end(), chords.begin(), chords.end());
  }

  // The outer cycle is clockwise; reversed it walks the construction
  // boundary counterclockwise. Each pocket runs from one hull vertex to the
  // next along that boundary and is closed by the hull edge.
  std::vector<int> boundary(faces.outer.rbegin(), faces.outer.rend());
  const size_t blen = boundary.size();
  std::vector<char> on_hull(points.size(), 0);
  for (int h : hull) on_hull[static_cast<size_t>(h)] = 1;

  std::vector<size_t> hull_positions;
  for (size_t i = 0; i < blen; ++i)
    if (on_hull[static_cast<size_t>(boundary[i])]) hull_positions.push_back(i);
  if (hull_positions.size() < hull.size())
    throw std::logic_error("hull vertex missing from the outer boundary");

  std::set<Edge> present(edges.begin(), edges.end());
  for (size_t hi = 0; hi < hull_positions.size(); ++hi) {
    size_t start = hull_positions[hi];
    size_t stop = hull_positions[(hi + 1) % hull_positions.size()];
    std::vector<int> pocket;
    for (size_t i = start;; i = (i + 1) % blen) {
      pocket.push_back(boundary[i]);
      if (i == stop) break;
    }
    if (pocket.size() == 2) {
      Edge he(pocket[0], pocket[1]);
      if (!present.count(he)) added.push_back(he);
      continue;
    }
    Edge he(pocket.front(), pocket.back());
    if (!present.count(he)) added.push_back(he);
    // Pocket interior lies left of boundary-reversed walk closed by the
    // hull edge: the cycle (pocket reversed) is CCW.
    std::vector<int> cycle(pocket.rbegin(), pocket.rend());
    auto chords = triangulate_face(points, cycle);
    added.insert(added.end(), chords.begin(), chords.end());
  }
  std::sort(added.begin(), added.end());
  added.erase(std::unique(added.begin(), added.end()), added.end());
  return added;
}

}  // namespace flipdist
