#include "flipdist/triangulation.hpp"

#include <algorithm>
#include <cstring>
#include <set>
#include <stdexcept>

namespace flipdist {

namespace {

// Derive the face apexes of every edge from the edge set alone. For each
// side of an edge the face apex is the common neighbor whose triangle
// contains no other same-side common neighbor.
std::unordered_map<uint64_t, EdgeApexes> derive_apexes(const PointSet& ps,
                                                       const std::vector<Edge>& edges) {
  const int n = ps.size();
  std::vector<std::vector<int32_t>> adj(static_cast<size_t>(n));
  for (const Edge& e : edges) {
    adj[static_cast<size_t>(e.a)].push_back(e.b);
    adj[static_cast<size_t>(e.b)].push_back(e.a);
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());

  auto in_closed_triangle = [&](const Point& a, const Point& b, const Point& c, const Point& q) {
    int s1 = orientation_sign(a, b, q);
    int s2 = orientation_sign(b, c, q);
    int s3 = orientation_sign(c, a, q);
    int ref = orientation_sign(a, b, c);
    return (s1 == ref || s1 == 0) && (s2 == ref || s2 == 0) && (s3 == ref || s3 == 0);
  };

  std::unordered_map<uint64_t, EdgeApexes> apex;
  apex.reserve(edges.size() * 2);
  std::vector<int32_t> common;
  for (const Edge& e : edges) {
    const auto& na = adj[static_cast<size_t>(e.a)];
    const auto& nb = adj[static_cast<size_t>(e.b)];
    common.clear();
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(common));
    const Point& pa = ps[e.a];
    const Point& pb = ps[e.b];
    EdgeApexes ax;
    for (int side : {1, -1}) {
      int32_t cur = -1;
      for (int32_t c : common) {
        if (orientation_sign(pa, pb, ps[c]) != side) continue;
        if (cur < 0 || in_closed_triangle(pa, pb, ps[cur], ps[c])) cur = c;
      }
      if (cur >= 0) {
        if (ax.count == 0) ax.first = cur; else ax.second = cur;
        ++ax.count;
      }
    }
    apex.emplace(e.key(), ax);
  }
  return apex;
}

}  // namespace

Triangulation::Triangulation(PointSetPtr ps, std::vector<Edge> edges)
    : ps_(std::move(ps)), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw std::invalid_argument("duplicate edge");
  const int n = ps_->size();
  for (const Edge& e : edges_)
    if (e.a < 0 || e.b >= n || e.a == e.b) throw std::invalid_argument("edge index out of range");
  const long expect = 3L * n - ps_->hull_size() - 3;
  if (static_cast<long>(edges_.size()) != expect)
    throw std::invalid_argument("edge count " + std::to_string(edges_.size()) +
                                " does not match 3n-h-3 = " + std::to_string(expect));
  apex_ = derive_apexes(*ps_, edges_);
  long apex_total = 0;
  for (const auto& [k, v] : apex_) apex_total += v.count;
  const long triangles = 2L * n - ps_->hull_size() - 2;
  if (apex_total != 3 * triangles)
    throw std::invalid_argument("edge set is not a triangulation (face structure inconsistent)");
}

bool Triangulation::has_edge(const Edge& e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

EdgeApexes Triangulation::apexes(const Edge& e) const {
  auto it = apex_.find(e.key());
  if (it == apex_.end()) throw std::invalid_argument("no such edge");
  return it->second;
}

std::vector<std::array<int32_t, 3>> Triangulation::triangles() const {
  std::set<std::array<int32_t, 3>> out;
  for (const Edge& e : edges_) {
    EdgeApexes ax = apexes(e);
    for (int i = 0; i < ax.count; ++i) {
      int32_t c = i == 0 ? ax.first : ax.second;
      std::array<int32_t, 3> t{e.a, e.b, c};
      std::sort(t.begin(), t.end());
      out.insert(t);
    }
  }
  return {out.begin(), out.end()};
}

bool Triangulation::flippable(const Edge& e) const {
  EdgeApexes ax = apexes(e);  // throws when absent
  if (ax.count != 2) return false;
  const Point& c = (*ps_)[ax.first];
  const Point& d = (*ps_)[ax.second];
  // Apexes lie on opposite sides of e; the quadrilateral is strictly convex
  // iff the endpoints of e are also on opposite sides of the new diagonal.
  return orientation_sign(c, d, (*ps_)[e.a]) * orientation_sign(c, d, (*ps_)[e.b]) < 0;
}

std::pair<Triangulation, FlipStep> Triangulation::apply_flip(const Edge& e) const {
  if (!flippable(e)) throw std::invalid_argument("illegal flip");
  EdgeApexes ax = apexes(e);
  Edge f(ax.first, ax.second);
  Triangulation out = *this;
  auto it = std::lower_bound(out.edges_.begin(), out.edges_.end(), e);
  out.edges_.erase(it);
  out.edges_.insert(std::lower_bound(out.edges_.begin(), out.edges_.end(), f), f);
  out.apex_.erase(e.key());
  out.apex_.emplace(f.key(), EdgeApexes{e.a, e.b, 2});
  // Patch the four boundary edges of the quadrilateral.
  auto replace_apex = [&](Edge side, int32_t from, int32_t to) {
    EdgeApexes& x = out.apex_.at(side.key());
    if (x.first == from) x.first = to;
    else if (x.second == from) x.second = to;
    else throw std::logic_error("apex structure corrupt");
  };
  replace_apex(Edge(e.a, ax.first), e.b, ax.second);
  replace_apex(Edge(e.a, ax.second), e.b, ax.first);
  replace_apex(Edge(e.b, ax.first), e.a, ax.second);
  replace_apex(Edge(e.b, ax.second), e.a, ax.first);
  return {std::move(out), FlipStep{e, f}};
}

std::string Triangulation::canonical_key() const {
  std::string key;
  key.resize(edges_.size() * 8);
  char* out = key.data();
  for (const Edge& e : edges_) {
    uint64_t k = e.key();
    std::memcpy(out, &k, 8);
    out += 8;
  }
  return key;
}

ValidationReport validate_triangulation(const PointSet& ps, const std::vector<Edge>& edges) {
  const int n = ps.size();
  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  for (const Edge& e : sorted)
    if (e.a < 0 || e.b >= n || e.a == e.b)
      return {false, "edge index out of range"};
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return {false, "duplicate edge"};
  for (size_t i = 0; i < sorted.size(); ++i)
    for (size_t j = i + 1; j < sorted.size(); ++j) {
      const Edge& e = sorted[i];
      const Edge& f = sorted[j];
      if (segments_properly_cross(ps[e.a], ps[e.b], ps[f.a], ps[f.b]))
        return {false, "crossing pair (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                           ") x (" + std::to_string(f.a) + "," + std::to_string(f.b) + ")"};
    }
  const long expect = 3L * n - ps.hull_size() - 3;
  if (static_cast<long>(sorted.size()) != expect)
    return {false, "edge count " + std::to_string(sorted.size()) + ", expected " + std::to_string(expect)};
  return {};
}

std::vector<Edge> unavoidable_edges(const PointSet& ps) {
  const int n = ps.size();
  std::vector<Edge> all;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) all.emplace_back(i, j);
  std::vector<Edge> out;
  for (const Edge& e : all) {
    bool crossed = false;
    for (const Edge& f : all) {
      if (e == f) continue;
      if (segments_properly_cross(ps[e.a], ps[e.b], ps[f.a], ps[f.b])) {
        crossed = true;
        break;
      }
    }
    if (!crossed) out.push_back(e);
  }
  return out;
}

Triangulation complete_to_triangulation(PointSetPtr ps, const std::vector<Edge>& partial) {
  const int n = ps->size();
  for (size_t i = 0; i < partial.size(); ++i)
    for (size_t j = i + 1; j < partial.size(); ++j)
      if (segments_properly_cross((*ps)[partial[i].a], (*ps)[partial[i].b],
                                  (*ps)[partial[j].a], (*ps)[partial[j].b]))
        throw std::invalid_argument("partial edge set has a crossing");

  std::vector<Edge> edges = partial;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  // Candidates in lexicographic order; a candidate rejected once can never
  // become insertable, so a single pass suffices.
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      Edge cand(a, b);
      if (std::binary_search(edges.begin(), edges.end(), cand)) continue;
      bool crosses = false;
      for (const Edge& e : edges) {
        if (segments_properly_cross((*ps)[cand.a], (*ps)[cand.b], (*ps)[e.a], (*ps)[e.b])) {
          crosses = true;
          break;
        }
      }
      if (!crosses) edges.insert(std::lower_bound(edges.begin(), edges.end(), cand), cand);
    }
  }
  return Triangulation(std::move(ps), std::move(edges));
}

}  // namespace flipdist
