#include <doctest.h>

#include <random>
#include <set>

#include "flipdist/flip_engine.hpp"
#include "flipdist/triangulation.hpp"
#include "oracles.hpp"

using namespace flipdist;

namespace {

Point pt(long x, long y) { return Point{Rational(x), Rational(y)}; }

PointSetPtr square() {
  return std::make_shared<PointSet>(
      std::vector<Point>{pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)});
}

PointSetPtr convex_ngon(int n) {
  // Rational points on the unit circle, counterclockwise.
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i)
    pts.push_back(unit_circle_point(Rational(i + 1, 4 * n)));
  return std::make_shared<PointSet>(std::move(pts));
}

// Independent maximality oracle: a crossing-free edge set is maximal iff no
// absent segment can be inserted without a crossing.
bool maximal_by_insertion(const PointSet& ps, const std::vector<Edge>& edges) {
  for (int a = 0; a < ps.size(); ++a)
    for (int b = a + 1; b < ps.size(); ++b) {
      Edge cand(a, b);
      if (std::count(edges.begin(), edges.end(), cand)) continue;
      bool crosses = false;
      for (const Edge& e : edges)
        if (segments_properly_cross(ps[cand.a], ps[cand.b], ps[e.a], ps[e.b])) crosses = true;
      if (!crosses) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("point set rejects degenerate input") {
  CHECK_THROWS(PointSet(std::vector<Point>{pt(0, 0), pt(1, 0)}));
  CHECK_THROWS(PointSet(std::vector<Point>{pt(0, 0), pt(1, 1), pt(2, 2)}));
  CHECK_THROWS(PointSet(std::vector<Point>{pt(0, 0), pt(1, 1), pt(1, 1), pt(0, 5)}));
  PointSet ok({pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4), pt(2, 1)});
  CHECK(ok.hull_size() == 4);
}

TEST_CASE("validate_triangulation") {
  auto ps = square();
  ValidationReport ok = validate_triangulation(*ps, {Edge(0, 1), Edge(1, 2), Edge(2, 3),
                                                     Edge(0, 3), Edge(0, 2)});
  CHECK(ok.ok);
  ValidationReport crossing = validate_triangulation(
      *ps, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3), Edge(0, 2), Edge(1, 3)});
  CHECK_FALSE(crossing.ok);
  CHECK(crossing.message.find("crossing pair") != std::string::npos);
  ValidationReport count = validate_triangulation(*ps, {Edge(0, 1), Edge(1, 2), Edge(2, 3),
                                                        Edge(0, 3)});
  CHECK_FALSE(count.ok);
  CHECK(count.message.find("edge count") != std::string::npos);
}

TEST_CASE("validate agrees with insertion oracle on random sets") {
  for (uint32_t seed = 1; seed <= 6; ++seed) {
    auto pts = oracle::random_points(7, seed);
    auto ps = std::make_shared<PointSet>(pts);
    Triangulation t = complete_to_triangulation(ps, {});
    CHECK(validate_triangulation(*ps, t.edges()).ok);
    CHECK(maximal_by_insertion(*ps, t.edges()));
    // Dropping any interior edge breaks the count and the oracle agrees.
    for (const Edge& e : t.edges()) {
      if (t.apexes(e).count != 2) continue;
      std::vector<Edge> fewer;
      for (const Edge& f : t.edges())
        if (!(f == e)) fewer.push_back(f);
      CHECK_FALSE(validate_triangulation(*ps, fewer).ok);
      CHECK_FALSE(maximal_by_insertion(*ps, fewer));
      break;
    }
  }
}

TEST_CASE("flippable") {
  auto ps = square();
  Triangulation t(ps, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3), Edge(0, 2)});
  CHECK(t.flippable(Edge(0, 2)));
  CHECK_FALSE(t.flippable(Edge(0, 1)));
  CHECK_THROWS_WITH((void)t.flippable(Edge(1, 3)), "no such edge");

  // Triangle with an interior point: every spoke is unflippable.
  auto ps2 = std::make_shared<PointSet>(
      std::vector<Point>{pt(0, 0), pt(6, 0), pt(3, 5), pt(3, 2)});
  Triangulation t2(ps2, {Edge(0, 1), Edge(1, 2), Edge(0, 2), Edge(0, 3), Edge(1, 3), Edge(2, 3)});
  CHECK_FALSE(t2.flippable(Edge(0, 3)));
  CHECK_FALSE(t2.flippable(Edge(1, 3)));
  CHECK_FALSE(t2.flippable(Edge(2, 3)));
}

TEST_CASE("apply_flip involution on the square") {
  auto ps = square();
  Triangulation t(ps, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3), Edge(0, 2)});
  auto [t2, step] = t.apply_flip(Edge(0, 2));
  CHECK(step.removed == Edge(0, 2));
  CHECK(step.inserted == Edge(1, 3));
  CHECK(t2.has_edge(Edge(1, 3)));
  CHECK_FALSE(t2.has_edge(Edge(0, 2)));
  auto [t3, step2] = t2.apply_flip(Edge(1, 3));
  CHECK(t3 == t);
  CHECK(t3.canonical_key() == t.canonical_key());
  CHECK_THROWS_WITH((void)t.apply_flip(Edge(0, 1)), "illegal flip");
}

TEST_CASE("random flips keep triangulations valid") {
  std::mt19937 rng(99);
  int flips_done = 0;
  for (uint32_t seed = 1; flips_done < 200; ++seed) {
    auto pts = oracle::random_points(8, seed);
    auto ps = std::make_shared<PointSet>(pts);
    Triangulation t = complete_to_triangulation(ps, {});
    for (int step = 0; step < 25; ++step) {
      std::vector<Edge> options;
      for (const Edge& e : t.edges())
        if (t.apexes(e).count == 2 && t.flippable(e)) options.push_back(e);
      REQUIRE_FALSE(options.empty());
      Edge pick = options[rng() % options.size()];
      auto before = t.edges();
      auto [next, fs] = t.apply_flip(pick);
      t = std::move(next);
      ++flips_done;
      CHECK(validate_triangulation(*ps, t.edges()).ok);
      // One-edge delta.
      std::set<Edge> delta;
      for (const Edge& e : before) delta.insert(e);
      for (const Edge& e : t.edges())
        if (delta.count(e)) delta.erase(e); else delta.insert(e);
      CHECK(delta.size() == 2);
      CHECK(before.size() == t.edges().size());
    }
  }
}

TEST_CASE("unavoidable_edges") {
  SUBCASE("convex polygon: exactly the hull edges") {
    auto ps = convex_ngon(6);
    auto un = unavoidable_edges(*ps);
    CHECK(un.size() == 6);
    for (const Edge& e : un) CHECK((e.b - e.a == 1 || (e.a == 0 && e.b == 5)));
  }
  SUBCASE("matches intersection of all triangulations on random sets") {
    for (uint32_t seed = 1; seed <= 4; ++seed) {
      auto pts = oracle::random_points(6, seed);
      auto ps = std::make_shared<PointSet>(pts);
      auto un = unavoidable_edges(*ps);
      // Oracle: edges present in every triangulation, by intersecting edge
      // sets over a BFS of the whole flip graph (cheap at n=6).
      std::set<std::string> seen;
      std::vector<Triangulation> todo{complete_to_triangulation(ps, {})};
      seen.insert(todo[0].canonical_key());
      std::set<Edge> common(todo[0].edges().begin(), todo[0].edges().end());
      for (size_t head = 0; head < todo.size(); ++head) {
        Triangulation cur = todo[head];
        std::set<Edge> cur_set(cur.edges().begin(), cur.edges().end());
        std::set<Edge> merged;
        std::set_intersection(common.begin(), common.end(), cur_set.begin(), cur_set.end(),
                              std::inserter(merged, merged.begin()));
        common = std::move(merged);
        for (const Edge& e : cur.edges()) {
          if (cur.apexes(e).count != 2 || !cur.flippable(e)) continue;
          auto [child, step] = cur.apply_flip(e);
          if (seen.insert(child.canonical_key()).second) todo.push_back(std::move(child));
        }
      }
      CHECK(std::set<Edge>(un.begin(), un.end()) == common);
    }
  }
}

TEST_CASE("complete_to_triangulation") {
  auto ps = square();
  SUBCASE("empty partial on a square picks the first diagonal") {
    Triangulation t = complete_to_triangulation(ps, {});
    CHECK(t.has_edge(Edge(0, 2)));
    CHECK_FALSE(t.has_edge(Edge(1, 3)));
  }
  SUBCASE("idempotent and deterministic") {
    Triangulation t = complete_to_triangulation(ps, {});
    Triangulation t2 = complete_to_triangulation(ps, t.edges());
    Triangulation t3 = complete_to_triangulation(ps, {});
    CHECK(t2 == t);
    CHECK(t3 == t);
  }
  SUBCASE("crossing partial is rejected") {
    CHECK_THROWS(complete_to_triangulation(ps, {Edge(0, 2), Edge(1, 3)}));
  }
}

TEST_CASE("canonical_key") {
  auto ps = square();
  Triangulation a(ps, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3), Edge(0, 2)});
  Triangulation b(ps, {Edge(0, 2), Edge(0, 3), Edge(2, 3), Edge(1, 2), Edge(0, 1)});
  CHECK(a.canonical_key() == b.canonical_key());
  auto [fl, st] = a.apply_flip(Edge(0, 2));
  CHECK(fl.canonical_key() != a.canonical_key());
  auto [back, st2] = fl.apply_flip(Edge(1, 3));
  CHECK(back.canonical_key() == a.canonical_key());
}

TEST_CASE("flip engine mirrors value-semantics flips") {
  for (uint32_t seed = 1; seed <= 3; ++seed) {
    auto pts = oracle::random_points(9, seed);
    auto ps = std::make_shared<PointSet>(pts);
    Triangulation t = complete_to_triangulation(ps, {});
    FlipEngine engine(ps->points(), t.edges());
    std::mt19937 rng(seed);
    FlipSequence trace;
    for (int i = 0; i < 30; ++i) {
      std::vector<Edge> options;
      for (const Edge& e : t.edges())
        if (t.apexes(e).count == 2 && t.flippable(e)) options.push_back(e);
      Edge pick = options[rng() % options.size()];
      auto [next, step] = t.apply_flip(pick);
      t = std::move(next);
      FlipStep estep = engine.flip(pick);
      CHECK(estep == step);
      trace.push_back(step);
      CHECK(engine.edge_list() == t.edges());
    }
    for (auto it = trace.rbegin(); it != trace.rend(); ++it) engine.apply_reverse(*it);
    Triangulation orig = complete_to_triangulation(ps, {});
    CHECK(engine.edge_list() == orig.edges());
  }
}

TEST_CASE("flip engine segment walk") {
  // Square plus interior point: segment from corner 0 to corner 2 crosses
  // nothing when the diagonal is present, and crosses spokes otherwise.
  auto ps = std::make_shared<PointSet>(
      std::vector<Point>{pt(0, 0), pt(6, 0), pt(6, 6), pt(0, 6), pt(3, 2)});
  Triangulation t = complete_to_triangulation(ps, {});
  FlipEngine engine(ps->points(), t.edges());
  if (engine.has_edge(Edge(0, 2))) {
    CHECK(engine.edges_crossing_segment(0, 2).empty());
  }
  auto crossing_13 = engine.edges_crossing_segment(1, 3);
  CHECK_FALSE(crossing_13.empty());
  for (const Edge& e : crossing_13)
    CHECK(segments_properly_cross((*ps)[1], (*ps)[3], (*ps)[e.a], (*ps)[e.b]));
}
