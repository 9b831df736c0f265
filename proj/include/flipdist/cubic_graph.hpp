#pragma once

#include <string_view>
#include <vector>

#include <cstdint>

namespace flipdist {

// Simple 3-regular graph. Text format: first line "n m", then m lines "u v"
// (0-based vertex indices).
struct CubicGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }
  std::vector<int> incident_edges(int v) const;
  bool is_connected() const;

  // Throws unless the graph is simple and 3-regular with m = 3n/2.
  void validate() const;

  static CubicGraph parse(std::string_view text);
  std::string serialize() const;

  static CubicGraph k4();
  static CubicGraph petersen();
  static CubicGraph k33();
  static CubicGraph cube();
};

// Exact minimum vertex cover size by branch and bound; n <= 20.
int min_vertex_cover_bruteforce(const CubicGraph& g);

bool is_vertex_cover(const CubicGraph& g, const std::vector<int>& cover);

}  // namespace flipdist
