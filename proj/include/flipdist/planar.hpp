#pragma once

#include <span>
#include <vector>

#include "flipdist/point_set.hpp"

namespace flipdist {

// Faces of a connected, crossing-free straight-line plane graph. Bounded
// face cycles are counterclockwise; the single outer cycle is clockwise.
struct PlaneFaces {
  std::vector<std::vector<int>> bounded;
  std::vector<int> outer;
};

PlaneFaces extract_faces(std::span<const Point> points, const std::vector<Edge>& edges);

// Deterministic ear clipping of a simple CCW polygon: repeatedly clips the
// valid ear at the smallest point index. Returns the inserted chords.
std::vector<Edge> triangulate_face(std::span<const Point> points, const std::vector<int>& cycle);

// Completes a connected crossing-free plane graph to a triangulation of the
// whole point set: triangulates every bounded face and the pockets between
// the construction's outer boundary and the convex hull. Returns the added
// edges (face chords, pocket chords and any missing hull edges).
std::vector<Edge> complete_plane_graph(std::span<const Point> points,
                                       const std::vector<Edge>& edges,
                                       const std::vector<int>& hull);

}  // namespace flipdist
