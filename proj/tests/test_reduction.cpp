#include <doctest.h>

#include <set>

#include "flipdist/flip_engine.hpp"
#include "flipdist/reduction.hpp"
#include "oracles.hpp"

using namespace flipdist;

TEST_CASE("cubic graph plumbing") {
  CubicGraph k4 = CubicGraph::k4();
  CHECK_NOTHROW(k4.validate());
  CHECK(k4.is_connected());
  CHECK(min_vertex_cover_bruteforce(k4) == 3);
  CHECK(min_vertex_cover_bruteforce(CubicGraph::petersen()) == 6);
  CHECK(min_vertex_cover_bruteforce(CubicGraph::k33()) == 3);

  CubicGraph bad = k4;
  bad.edges.pop_back();
  CHECK_THROWS(bad.validate());

  CubicGraph round = CubicGraph::parse(CubicGraph::petersen().serialize());
  CHECK(round.edges == CubicGraph::petersen().edges);
}

TEST_CASE("embed_polygon") {
  for (int n : {4, 5, 6, 10}) {
    auto poly = embed_polygon(n);
    REQUIRE(static_cast<int>(poly.size()) == n);
    for (const Point& p : poly) CHECK(oracle::on_unit_circle(p));
    // Convex position in ccw order.
    for (int i = 0; i < n; ++i)
      CHECK(orientation(poly[static_cast<size_t>(i)], poly[static_cast<size_t>((i + 1) % n)],
                        poly[static_cast<size_t>((i + 2) % n)]) == Orientation::kLeft);
  }
  SUBCASE("no three diagonals concurrent for n=6") {
    auto poly = embed_polygon(6);
    std::vector<Point> xs;
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b)
        for (int c = a + 1; c < 6; ++c)
          for (int e = c + 1; e < 6; ++e) {
            if (c == b || e == b) continue;
            if (!segments_properly_cross(poly[static_cast<size_t>(a)], poly[static_cast<size_t>(b)],
                                         poly[static_cast<size_t>(c)], poly[static_cast<size_t>(e)]))
              continue;
            xs.push_back(*line_intersection(poly[static_cast<size_t>(a)], poly[static_cast<size_t>(b)],
                                            poly[static_cast<size_t>(c)], poly[static_cast<size_t>(e)]));
          }
    for (size_t i = 0; i < xs.size(); ++i)
      for (size_t j = i + 1; j < xs.size(); ++j) CHECK_FALSE(xs[i] == xs[j]);
  }
}

TEST_CASE("analyze_drawing on K4") {
  CubicGraph g = CubicGraph::k4();
  auto poly = embed_polygon(4);
  DrawingInfo info = analyze_drawing(g, poly);
  CHECK(info.x_prime == 1);
  CHECK(info.x == 1);
}

TEST_CASE("solve_parameters satisfies both inequalities minimally") {
  auto [d, w] = solve_parameters(4, 6, 1, 20);
  LayoutParams p;
  p.x = 1;
  p.d = d;
  p.w = w;
  p.tau = 20;
  CHECK(p.inequalities_hold(4, 6));
  LayoutParams smaller = p;
  smaller.d = d - 1;
  smaller.w = 6 * (4 * 1 + 2 * (d - 1)) + 20 + 1;
  CHECK_FALSE(smaller.inequalities_hold(4, 6));
}

TEST_CASE("K4 instance with test-scale parameters") {
  CubicGraph g = CubicGraph::k4();
  AssembleOptions opts;
  opts.d_override = 3;
  opts.w_override = 2;
  ReductionInstance inst = assemble(g, opts);

  SUBCASE("gadget validation passes") {
    auto checks = validate_instance(inst, ValidateLevel::kFull);
    for (const auto& c : checks) {
      INFO(c.name, ": ", c.detail);
      if (c.name == "parameter-inequalities") continue;  // overridden
      CHECK(c.pass);
    }
  }

  SUBCASE("triangulations are valid") {
    CHECK(validate_triangulation(*inst.points, inst.t1_edges).ok);
    CHECK(validate_triangulation(*inst.points, inst.t2_edges).ok);
  }

  SUBCASE("cover compiles to flips and back") {
    std::vector<int> cover{0, 1, 2};
    FlipSequence seq = cover_to_flips(inst, cover);
    CHECK(static_cast<long>(seq.size()) <= inst.delta_bound(3));

    // Replay and check every prefix stays a valid triangulation
    // (structurally: counts stay fixed, engine checks each flip).
    FlipEngine engine(inst.points->points(), inst.t1_edges);
    for (const FlipStep& s : seq) engine.apply(s);
    CHECK(engine.edge_list() == inst.t2_edges);

    auto extracted = flips_to_cover(inst, seq);
    CHECK(is_vertex_cover(g, extracted));
    // The size round trip needs the true well depth (d-1)^2; with the tiny
    // test parameters every sequence is above it and extraction falls back
    // to the trivial cover. Check the size only below the well depth.
    long depth = (inst.params.d - 1) * (inst.params.d - 1);
    if (static_cast<long>(seq.size()) < depth) CHECK(extracted.size() <= cover.size());
  }

  SUBCASE("full vertex set is also a valid cover input") {
    std::vector<int> cover{0, 1, 2, 3};
    FlipSequence seq = cover_to_flips(inst, cover);
    CHECK(static_cast<long>(seq.size()) <= inst.delta_bound(4));
    auto extracted = flips_to_cover(inst, seq);
    CHECK(is_vertex_cover(g, extracted));
  }

  SUBCASE("non-cover is rejected") {
    CHECK_THROWS_WITH((void)cover_to_flips(inst, {0}), "uncovered edge");
  }

  SUBCASE("non-conforming sequence is rejected") {
    // A valid T1->T2 sequence exists only through wirings; an empty
    // sequence is invalid because T1 != T2.
    CHECK_THROWS_WITH((void)flips_to_cover(inst, {}), "sequence invalid");
  }
}

TEST_CASE("K33 instance with test-scale parameters") {
  CubicGraph g = CubicGraph::k33();
  AssembleOptions opts;
  opts.d_override = 2;
  opts.w_override = 1;
  ReductionInstance inst = assemble(g, opts);
  auto checks = validate_instance(inst, ValidateLevel::kGadgets);
  for (const auto& c : checks) {
    INFO(c.name, ": ", c.detail);
    if (c.name == "parameter-inequalities") continue;
    CHECK(c.pass);
  }
  std::vector<int> cover{3, 4, 5};
  FlipSequence seq = cover_to_flips(inst, cover);
  CHECK(static_cast<long>(seq.size()) <= inst.delta_bound(3));
  auto extracted = flips_to_cover(inst, seq);
  CHECK(is_vertex_cover(g, extracted));
  long depth = (inst.params.d - 1) * (inst.params.d - 1);
  if (static_cast<long>(seq.size()) < depth) CHECK(extracted.size() <= 3);
}
