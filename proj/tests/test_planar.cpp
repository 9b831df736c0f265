#include <doctest.h>

#include "flipdist/planar.hpp"
#include "flipdist/triangulation.hpp"
#include "oracles.hpp"

using namespace flipdist;

namespace {
Point pt(long x, long y) { return Point{Rational(x), Rational(y)}; }
}  // namespace

TEST_CASE("extract_faces on a square with diagonal") {
  std::vector<Point> pts{pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)};
  std::vector<Edge> edges{Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3), Edge(0, 2)};
  PlaneFaces f = extract_faces(pts, edges);
  CHECK(f.bounded.size() == 2);
  CHECK(f.outer.size() == 4);
  for (const auto& cyc : f.bounded) CHECK(cyc.size() == 3);
}

TEST_CASE("extract_faces rejects disconnected graphs") {
  std::vector<Point> pts{pt(0, 0), pt(1, 0), pt(0, 1), pt(10, 10), pt(11, 10), pt(10, 11)};
  std::vector<Edge> edges{Edge(0, 1), Edge(1, 2), Edge(0, 2),
                          Edge(3, 4), Edge(4, 5), Edge(3, 5)};
  CHECK_THROWS((void)extract_faces(pts, edges));
}

TEST_CASE("triangulate_face on a non-convex polygon") {
  // An L-shaped hexagon, CCW.
  std::vector<Point> pts{pt(0, 0), pt(4, 0), pt(4, 2), pt(2, 2), pt(2, 4), pt(0, 4)};
  std::vector<int> cycle{0, 1, 2, 3, 4, 5};
  auto chords = triangulate_face(pts, cycle);
  CHECK(chords.size() == 3);  // k - 3
  // Chords and boundary together triangulate the polygon: validate on the
  // point set (the L-shape's hull has 5 vertices, edge count must match).
  std::vector<Edge> all{Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(3, 4), Edge(4, 5), Edge(0, 5)};
  all.insert(all.end(), chords.begin(), chords.end());
  // No chord crosses another or the boundary.
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j)
      CHECK_FALSE(segments_properly_cross(pts[static_cast<size_t>(all[i].a)], pts[static_cast<size_t>(all[i].b)],
                                          pts[static_cast<size_t>(all[j].a)], pts[static_cast<size_t>(all[j].b)]));
  // Deterministic.
  CHECK(triangulate_face(pts, cycle) == chords);
}

TEST_CASE("complete_plane_graph matches full triangulation counts") {
  for (uint32_t seed = 1; seed <= 6; ++seed) {
    auto raw = oracle::random_points(12, seed);
    auto ps = std::make_shared<PointSet>(raw);
    // Start from a spanning structure: a triangulation with a third of its
    // interior edges removed is still connected and crossing-free.
    Triangulation t = complete_to_triangulation(ps, {});
    std::vector<Edge> partial;
    int drop = 0;
    for (const Edge& e : t.edges()) {
      if (t.apexes(e).count == 2 && drop < 4) {
        ++drop;
        continue;
      }
      partial.push_back(e);
    }
    auto added = complete_plane_graph(ps->points(), partial, ps->hull());
    std::vector<Edge> full = partial;
    full.insert(full.end(), added.begin(), added.end());
    CHECK(validate_triangulation(*ps, full).ok);
  }
}

TEST_CASE("complete_plane_graph fills hull pockets") {
  // A dented square boundary: vertex 4 pulls the top edge inward.
  std::vector<Point> pts{pt(0, 0), pt(4, 0), pt(4, 4), pt(2, 1), pt(0, 4)};
  std::vector<Edge> boundary{Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(3, 4), Edge(0, 4)};
  auto ps = std::make_shared<PointSet>(pts);
  auto added = complete_plane_graph(pts, boundary, ps->hull());
  std::vector<Edge> full = boundary;
  full.insert(full.end(), added.begin(), added.end());
  CHECK(validate_triangulation(*ps, full).ok);
}
