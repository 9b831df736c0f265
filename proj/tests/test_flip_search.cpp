#include <doctest.h>

#include <random>

#include "flipdist/flip_search.hpp"
#include "oracles.hpp"

using namespace flipdist;

namespace {

Point pt(long x, long y) { return Point{Rational(x), Rational(y)}; }

PointSetPtr convex_ngon(int n) {
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) pts.push_back(unit_circle_point(Rational(i + 1, 4 * n)));
  return std::make_shared<PointSet>(std::move(pts));
}

// Fan triangulation of a convex polygon from vertex apex.
Triangulation fan(PointSetPtr ps, int apex) {
  const int n = ps->size();
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  for (int i = 0; i < n; ++i)
    if (i != apex && (i + 1) % n != apex && (apex + 1) % n != i) edges.emplace_back(apex, i);
  return Triangulation(std::move(ps), std::move(edges));
}

bool witness_replays(const Triangulation& from, const Triangulation& to, const FlipSequence& w) {
  Triangulation cur = from;
  for (const FlipStep& s : w) {
    auto [next, step] = cur.apply_flip(s.removed);
    if (!(step.inserted == s.inserted)) return false;
    cur = std::move(next);
  }
  return cur == to;
}

}  // namespace

TEST_CASE("flip_distance trivial and square") {
  auto ps = std::make_shared<PointSet>(
      std::vector<Point>{pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)});
  Triangulation a(ps, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3), Edge(0, 2)});
  Triangulation b(ps, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3), Edge(1, 3)});

  auto same = flip_distance(a, a, 5);
  CHECK_FALSE(same.exceeded);
  CHECK(same.distance == 0);
  CHECK(same.witness.empty());

  auto one = flip_distance(a, b, 5);
  CHECK(one.distance == 1);
  CHECK(witness_replays(a, b, one.witness));

  auto tight = flip_distance(a, b, 0);
  CHECK(tight.exceeded);
}

TEST_CASE("hexagon fan distances match plain BFS") {
  auto ps = convex_ngon(6);
  // Opposite fans share the long diagonal 0-3, so they are only 2 apart;
  // adjacent fans share nothing and sit at distance 3. The diameter-4 pairs
  // of the hexagon are the two pinwheel triangulations.
  Triangulation t1 = fan(ps, 0);
  Triangulation t2 = fan(ps, 3);
  auto bi = flip_distance(t1, t2, 10);
  auto uni = flip_distance_unidirectional(t1, t2, 10);
  CHECK(bi.distance == 2);
  CHECK(uni.distance == 2);
  CHECK(witness_replays(t1, t2, bi.witness));
  CHECK(static_cast<long>(bi.witness.size()) == bi.distance);
  CHECK(flip_distance(t2, t1, 10).distance == 2);

  Triangulation adj = fan(ps, 1);
  CHECK(flip_distance(t1, adj, 10).distance == 3);

  Triangulation pin1(ps, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(3, 4), Edge(4, 5),
                          Edge(0, 5), Edge(0, 2), Edge(2, 4), Edge(0, 4)});
  Triangulation pin2(ps, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(3, 4), Edge(4, 5),
                          Edge(0, 5), Edge(1, 3), Edge(3, 5), Edge(1, 5)});
  auto far = flip_distance(pin1, pin2, 10);
  CHECK(far.distance == 4);
  CHECK(witness_replays(pin1, pin2, far.witness));
}

TEST_CASE("bidirectional equals unidirectional on random instances") {
  std::mt19937 rng(5);
  for (uint32_t seed = 1; seed <= 6; ++seed) {
    auto pts = oracle::random_points(8, seed);
    auto ps = std::make_shared<PointSet>(pts);
    Triangulation t1 = complete_to_triangulation(ps, {});
    Triangulation t2 = t1;
    for (int i = 0; i < 12; ++i) {
      std::vector<Edge> options;
      for (const Edge& e : t2.edges())
        if (t2.apexes(e).count == 2 && t2.flippable(e)) options.push_back(e);
      auto [next, step] = t2.apply_flip(options[rng() % options.size()]);
      t2 = std::move(next);
    }
    auto bi = flip_distance(t1, t2, 12);
    auto uni = flip_distance_unidirectional(t1, t2, 12);
    REQUIRE_FALSE(bi.exceeded);
    REQUIRE_FALSE(uni.exceeded);
    CHECK(bi.distance == uni.distance);
    CHECK(witness_replays(t1, t2, bi.witness));
    CHECK(flip_distance(t2, t1, 12).distance == bi.distance);
    // The admissible bound never exceeds the true distance.
    long h0 = 0;
    {
      std::set<Edge> s1(t1.edges().begin(), t1.edges().end());
      for (const Edge& e : t2.edges())
        if (!s1.count(e)) ++h0;
    }
    CHECK(h0 <= bi.distance);
  }
}

TEST_CASE("enumerate_flip_graph catalan counts") {
  SUBCASE("pentagon is a 5-cycle") {
    FlipGraph g = enumerate_flip_graph(convex_ngon(5), 100);
    CHECK(g.node_keys.size() == 5);
    CHECK(g.adjacency.size() == 5);
    std::vector<int> deg(5, 0);
    for (auto [u, v] : g.adjacency) {
      deg[static_cast<size_t>(u)]++;
      deg[static_cast<size_t>(v)]++;
    }
    for (int d : deg) CHECK(d == 2);
    CHECK(flip_graph_diameter(g) == 2);
  }
  SUBCASE("hexagon has 14 nodes and diameter 4") {
    FlipGraph g = enumerate_flip_graph(convex_ngon(6), 100);
    CHECK(g.node_keys.size() == 14);
    CHECK(flip_graph_diameter(g) == 4);
  }
  SUBCASE("node cap errors out") {
    CHECK_THROWS_WITH((void)enumerate_flip_graph(convex_ngon(6), 5), "flip graph too large");
  }
  SUBCASE("hexagon keys are pairwise distinct") {
    FlipGraph g = enumerate_flip_graph(convex_ngon(6), 100);
    std::set<std::string> keys(g.node_keys.begin(), g.node_keys.end());
    CHECK(keys.size() == 14);
  }
}

TEST_CASE("crossing_count and the upper bound") {
  auto ps = std::make_shared<PointSet>(
      std::vector<Point>{pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)});
  Triangulation a(ps, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3), Edge(0, 2)});
  Triangulation b(ps, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3), Edge(1, 3)});
  CHECK(crossing_count(a, a) == 0);
  CHECK(crossing_count(a, b) == 1);

  std::mt19937 rng(17);
  for (uint32_t seed = 20; seed < 26; ++seed) {
    auto pts = oracle::random_points(8, seed);
    auto ps8 = std::make_shared<PointSet>(pts);
    Triangulation t1 = complete_to_triangulation(ps8, {});
    Triangulation t2 = t1;
    for (int i = 0; i < 10; ++i) {
      std::vector<Edge> options;
      for (const Edge& e : t2.edges())
        if (t2.apexes(e).count == 2 && t2.flippable(e)) options.push_back(e);
      auto [next, step] = t2.apply_flip(options[rng() % options.size()]);
      t2 = std::move(next);
    }
    long cc = crossing_count(t1, t2);
    auto d = flip_distance(t1, t2, cc);
    REQUIRE_FALSE(d.exceeded);  // flip distance is at most the crossing count
    CHECK(d.distance <= cc);
  }
}

TEST_CASE("lawson_to_delaunay") {
  SUBCASE("already Delaunay means empty sequence") {
    auto ps = std::make_shared<PointSet>(
        std::vector<Point>{pt(0, 0), pt(4, 0), pt(2, 3), pt(2, -3)});
    Triangulation t = complete_to_triangulation(ps, {});
    auto [d, seq] = lawson_to_delaunay(t);
    auto [d2, seq2] = lawson_to_delaunay(d);
    CHECK(seq2.empty());
    CHECK(d2 == d);
  }
  SUBCASE("asymmetric quadrilateral needs one flip") {
    // Flat convex quad with the long diagonal chosen; the fourth point lies
    // inside the circumcircle of (0,1,2), so one flip fixes it.
    auto ps = std::make_shared<PointSet>(
        std::vector<Point>{pt(-10, 0), pt(0, 2), pt(10, 0), pt(0, -1)});
    REQUIRE(in_circle((*ps)[0], (*ps)[1], (*ps)[2], (*ps)[3]) == CircleSide::kInside);
    Triangulation t(ps, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3), Edge(0, 2)});
    auto [d, seq] = lawson_to_delaunay(t);
    REQUIRE(seq.size() == 1);
    CHECK(seq[0].removed == Edge(0, 2));
    CHECK(seq[0].inserted == Edge(1, 3));
    CHECK(d.has_edge(Edge(1, 3)));
  }
  SUBCASE("cocircular points are rejected") {
    auto ps = std::make_shared<PointSet>(
        std::vector<Point>{pt(1, 0), pt(0, 1), pt(-1, 0), pt(0, -1)});
    Triangulation t = complete_to_triangulation(ps, {});
    CHECK_THROWS_WITH((void)lawson_to_delaunay(t), "Delaunay not unique");
  }
  SUBCASE("random sets reach the brute-force Delaunay triangulation") {
    int done = 0;
    for (uint32_t seed = 40; done < 6; ++seed) {
      auto pts = oracle::random_points(12, seed);
      auto ps = std::make_shared<PointSet>(pts);
      Triangulation t = complete_to_triangulation(ps, {});
      Triangulation shuffled = t;
      std::mt19937 rng(seed);
      for (int i = 0; i < 15; ++i) {
        std::vector<Edge> options;
        for (const Edge& e : shuffled.edges())
          if (shuffled.apexes(e).count == 2 && shuffled.flippable(e)) options.push_back(e);
        auto [next, step] = shuffled.apply_flip(options[rng() % options.size()]);
        shuffled = std::move(next);
      }
      Triangulation result = shuffled;
      FlipSequence seq;
      try {
        std::tie(result, seq) = lawson_to_delaunay(shuffled);
      } catch (const std::invalid_argument&) {
        continue;  // cocircular sample; skip
      }
      ++done;
      CHECK(static_cast<long>(seq.size()) <= 12 * 12);
      // Exhaustive empty-circumcircle check of every triangle.
      for (const auto& tri : result.triangles()) {
        for (int q = 0; q < ps->size(); ++q) {
          if (q == tri[0] || q == tri[1] || q == tri[2]) continue;
          CHECK(in_circle((*ps)[tri[0]], (*ps)[tri[1]], (*ps)[tri[2]], (*ps)[q]) !=
                CircleSide::kInside);
        }
      }
    }
  }
}
