#include "flipdist/cubic_graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace flipdist {

std::vector<int> CubicGraph::incident_edges(int v) const {
  std::vector<int> out;
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].first == v || edges[i].second == v) out.push_back(static_cast<int>(i));
  return out;
}

bool CubicGraph::is_connected() const {
  if (vertex_count == 0) return false;
  std::vector<char> seen(static_cast<size_t>(vertex_count), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& [a, b] : edges) {
      int w = a == v ? b : (b == v ? a : -1);
      if (w >= 0 && !seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

void CubicGraph::validate() const {
  if (vertex_count < 4) throw std::invalid_argument("non-cubic graph: too few vertices");
  std::vector<int> deg(static_cast<size_t>(vertex_count), 0);
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count)
      throw std::invalid_argument("edge index out of range");
    if (a == b) throw std::invalid_argument("non-cubic graph: self loop");
    if (!seen.emplace(std::min(a, b), std::max(a, b)).second)
      throw std::invalid_argument("non-cubic graph: parallel edge");
    ++deg[static_cast<size_t>(a)];
    ++deg[static_cast<size_t>(b)];
  }
  for (int d : deg)
    if (d != 3) throw std::invalid_argument("non-cubic graph: vertex degree is not 3");
  if (edge_count() * 2 != 3 * vertex_count)
    throw std::invalid_argument("non-cubic graph: m != 3n/2");
}

CubicGraph CubicGraph::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  CubicGraph g;
  int m = 0;
  if (!(in >> g.vertex_count >> m)) throw std::invalid_argument("graph header malformed");
  for (int i = 0; i < m; ++i) {
    int a = 0, b = 0;
    if (!(in >> a >> b)) throw std::invalid_argument("graph edge line malformed");
    g.edges.emplace_back(a, b);
  }
  g.validate();
  return g;
}

std::string CubicGraph::serialize() const {
  std::ostringstream out;
  out << vertex_count << ' ' << edge_count() << '\n';
  for (auto [a, b] : edges) out << a << ' ' << b << '\n';
  return out.str();
}

CubicGraph CubicGraph::k4() {
  CubicGraph g;
  g.vertex_count = 4;
  g.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  return g;
}

CubicGraph CubicGraph::petersen() {
  CubicGraph g;
  g.vertex_count = 10;
  g.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},
             {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
             {5, 7}, {7, 9}, {6, 9}, {6, 8}, {5, 8}};
  return g;
}

CubicGraph CubicGraph::k33() {
  CubicGraph g;
  g.vertex_count = 6;
  g.edges = {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}};
  return g;
}

CubicGraph CubicGraph::cube() {
  CubicGraph g;
  g.vertex_count = 8;
  g.edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3},
             {4, 5}, {5, 6}, {6, 7}, {4, 7},
             {0, 4}, {1, 5}, {2, 6}, {3, 7}};
  return g;
}

namespace {

int cover_search(const CubicGraph& g, std::vector<char>& covered_edge, std::vector<char>& in_cover,
                 int used, int best) {
  if (used >= best) return best;
  int pick = -1;
  for (size_t i = 0; i < g.edges.size(); ++i)
    if (!covered_edge[i]) {
      pick = static_cast<int>(i);
      break;
    }
  if (pick < 0) return used;

  for (int v : {g.edges[static_cast<size_t>(pick)].first, g.edges[static_cast<size_t>(pick)].second}) {
    std::vector<int> newly;
    for (size_t i = 0; i < g.edges.size(); ++i) {
      if (covered_edge[i]) continue;
      if (g.edges[i].first == v || g.edges[i].second == v) {
        covered_edge[i] = 1;
        newly.push_back(static_cast<int>(i));
      }
    }
    in_cover[static_cast<size_t>(v)] = 1;
    best = std::min(best, cover_search(g, covered_edge, in_cover, used + 1, best));
    in_cover[static_cast<size_t>(v)] = 0;
    for (int i : newly) covered_edge[static_cast<size_t>(i)] = 0;
  }
  return best;
}

}  // namespace

int min_vertex_cover_bruteforce(const CubicGraph& g) {
  g.validate();
  if (g.vertex_count > 20) throw std::invalid_argument("vertex cover brute force limited to n <= 20");
  std::vector<char> covered(static_cast<size_t>(g.edge_count()), 0);
  std::vector<char> in_cover(static_cast<size_t>(g.vertex_count), 0);
  return cover_search(g, covered, in_cover, 0, g.vertex_count);
}

bool is_vertex_cover(const CubicGraph& g, const std::vector<int>& cover) {
  std::set<int> c(cover.begin(), cover.end());
  for (auto [a, b] : g.edges)
    if (!c.count(a) && !c.count(b)) return false;
  return true;
}

}  // namespace flipdist
