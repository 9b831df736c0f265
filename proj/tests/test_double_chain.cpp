#include <doctest.h>

#include <random>
#include <set>

#include "flipdist/double_chain.hpp"
#include "flipdist/flip_engine.hpp"
#include "flipdist/flip_search.hpp"
#include "oracles.hpp"

using namespace flipdist;

namespace {

LabelSequence seq_of(const std::string& s) {
  LabelSequence out;
  for (char c : s) out.labels.push_back(c == '1' ? 1 : 0);
  return out;
}

// Point set extended by the canonical kernel Steiner point, with matching
// chain and fan structures.
struct SteinerSetup {
  PointSetPtr ps;
  DoubleChain dc;
  int steiner;
  Triangulation from;
  Triangulation to;
};

SteinerSetup steiner_setup(int n) {
  auto [ps0, dc0] = build_double_chain(n);
  Point s = kernel_point_beyond_mouth(dc0);
  std::vector<Point> pts(ps0->points().begin(), ps0->points().end());
  pts.push_back(s);
  auto ps = std::make_shared<PointSet>(std::move(pts), GpCheck::kFull);
  DoubleChain dc = dc0;
  dc.point_set = ps;
  int steiner = ps->size() - 1;

  auto [t1, t2] = fan_triangulations(dc0);
  std::vector<Edge> m1 = t1.edges();
  std::vector<Edge> m2 = t2.edges();
  m1.emplace_back(steiner, dc.upper.front());
  m1.emplace_back(steiner, dc.lower.front());
  m2.emplace_back(steiner, dc.upper.front());
  m2.emplace_back(steiner, dc.lower.front());
  return SteinerSetup{ps, dc, steiner, complete_to_triangulation(ps, m1),
                      complete_to_triangulation(ps, m2)};
}

}  // namespace

TEST_CASE("build_double_chain shapes") {
  SUBCASE("n=2 gives a convex quadrilateral with nonempty kernel") {
    auto [ps, dc] = build_double_chain(2);
    CHECK(ps->size() == 4);
    CHECK(ps->hull_size() == 4);
    Point origin{Rational(0), Rational(0)};
    CHECK(classify_point(dc, origin).in_kernel);
  }
  SUBCASE("n=3: all nine cross pairs are unobstructed") {
    auto [ps, dc] = build_double_chain(3);
    auto chain = dc.chain_edges();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (const Edge& e : chain)
          CHECK_FALSE(segments_properly_cross(dc.up(i), dc.lo(j), (*ps)[e.a], (*ps)[e.b]));
  }
  SUBCASE("n=10 passes the invariant suite") {
    auto [ps, dc] = build_double_chain(10);
    CHECK(ps->size() == 20);
    CHECK_NOTHROW(validate_double_chain(dc));
    CHECK(ps->hull_size() == 4);
    // Chain edges are unavoidable.
    auto unavoid = unavoidable_edges(*ps);
    std::set<Edge> uset(unavoid.begin(), unavoid.end());
    for (const Edge& e : dc.chain_edges()) CHECK(uset.count(e));
  }
  SUBCASE("n=1 is rejected") { CHECK_THROWS(build_double_chain(1)); }
}

TEST_CASE("fan_triangulations") {
  SUBCASE("n=2: the two quadrilateral triangulations, one flip apart") {
    auto [ps, dc] = build_double_chain(2);
    auto [t1, t2] = fan_triangulations(dc);
    CHECK(validate_triangulation(*ps, t1.edges()).ok);
    CHECK(validate_triangulation(*ps, t2.edges()).ok);
    auto d = flip_distance(t1, t2, 3);
    CHECK(d.distance == 1);
  }
  SUBCASE("label sequences of the fans") {
    auto [ps, dc] = build_double_chain(3);
    auto [t1, t2] = fan_triangulations(dc);
    CHECK(label_sequence(dc, t1) == seq_of("0011"));
    CHECK(label_sequence(dc, t2) == seq_of("1100"));
  }
  SUBCASE("fans validate for n up to 20") {
    for (int n : {4, 7, 12, 20}) {
      auto [ps, dc] = build_double_chain(n);
      auto [t1, t2] = fan_triangulations(dc);
      CHECK(validate_triangulation(*ps, t1.edges()).ok);
      CHECK(validate_triangulation(*ps, t2.edges()).ok);
      CHECK(label_sequence(dc, t1).str() ==
            std::string(static_cast<size_t>(n - 1), '0') + std::string(static_cast<size_t>(n - 1), '1'));
      // T1 and T2 differ only inside P_D.
      std::set<Edge> pd;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) pd.insert(Edge(dc.upper[static_cast<size_t>(i)],
                                                   dc.lower[static_cast<size_t>(j)]));
      std::set<Edge> s1(t1.edges().begin(), t1.edges().end());
      for (const Edge& e : t2.edges()) {
        if (s1.count(e)) continue;
        CHECK(pd.count(e));
      }
    }
  }
}

TEST_CASE("label_sequence flip behaviour") {
  auto [ps, dc] = build_double_chain(4);
  auto [t1, t2] = fan_triangulations(dc);
  // Freeze everything but the P_D interior.
  std::vector<Edge> frozen = dc.polygon_edges();
  for (const Edge& e : t1.edges()) {
    std::set<int> dset(dc.upper.begin(), dc.upper.end());
    dset.insert(dc.lower.begin(), dc.lower.end());
    bool cross_pair = dset.count(e.a) && dset.count(e.b) &&
                      ((e.a < dc.n) != (e.b < dc.n));
    if (!cross_pair) frozen.push_back(e);
  }
  SearchOptions opts;
  opts.frozen_edges = frozen;
  FlipGraph g = enumerate_flip_graph_from(t1, 1000, opts);
  // P_D is non-convex: its triangulations use only cross edges and are in
  // bijection with the label sequences, C(2n-2, n-1) = 20 of them for n=4.
  CHECK(g.node_keys.size() == 20);
  {
    std::set<std::string> sigmas;
    for (const auto& edges : g.node_edges)
      sigmas.insert(label_sequence(dc, Triangulation(ps, edges)).str());
    CHECK(sigmas.size() == 20);
  }

  // Every restricted flip changes the label sequence by exactly one
  // adjacent transposition.
  for (const auto& edges : g.node_edges) {
    Triangulation t(ps, edges);
    LabelSequence before = label_sequence(dc, t);
    for (const Edge& e : t.edges()) {
      if (std::count(frozen.begin(), frozen.end(), e)) continue;
      if (t.apexes(e).count != 2 || !t.flippable(e)) continue;
      auto [next, step] = t.apply_flip(e);
      LabelSequence after = label_sequence(dc, next);
      CHECK(inversion_distance(before, after) == 1);
    }
  }
}

TEST_CASE("figure-3 label sequence transition exists") {
  // The 5-chain configuration whose sequence <11000101> turns into
  // <11001001> by one flip.
  auto [ps, dc] = build_double_chain(5);
  auto [t1, t2] = fan_triangulations(dc);
  std::set<int> dset(dc.upper.begin(), dc.upper.end());
  dset.insert(dc.lower.begin(), dc.lower.end());
  std::vector<Edge> frozen;
  for (const Edge& e : t1.edges()) {
    bool cross_pair = dset.count(e.a) && dset.count(e.b) && ((e.a < dc.n) != (e.b < dc.n));
    bool mouth = e == Edge(dc.upper.front(), dc.lower.front()) ||
                 e == Edge(dc.upper.back(), dc.lower.back());
    if (!cross_pair || mouth) frozen.push_back(e);
  }
  SearchOptions opts;
  opts.frozen_edges = frozen;
  FlipGraph g = enumerate_flip_graph_from(t1, 5000, opts);

  bool found = false;
  for (const auto& edges : g.node_edges) {
    Triangulation t(ps, edges);
    if (label_sequence(dc, t).str() != "11000101") continue;
    for (const Edge& e : t.edges()) {
      if (std::count(frozen.begin(), frozen.end(), e)) continue;
      if (t.apexes(e).count != 2 || !t.flippable(e)) continue;
      auto [next, step] = t.apply_flip(e);
      if (label_sequence(dc, next).str() == "11001001") found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("inversion_distance") {
  CHECK(inversion_distance(seq_of("0101"), seq_of("0101")) == 0);
  CHECK(inversion_distance(seq_of("0011"), seq_of("1100")) == 4);
  CHECK_THROWS_WITH((void)inversion_distance(seq_of("0011"), seq_of("1110")),
                    "label multisets differ");
  CHECK_THROWS((void)inversion_distance(seq_of("01"), seq_of("0")));

  std::mt19937 rng(23);
  for (int it = 0; it < 40; ++it) {
    int len = 2 + static_cast<int>(rng() % 7);
    std::vector<int> a, b;
    for (int i = 0; i < len; ++i) a.push_back(static_cast<int>(rng() % 2));
    b = a;
    std::shuffle(b.begin(), b.end(), rng);
    LabelSequence sa{a}, sb{b};
    CHECK(inversion_distance(sa, sb) == oracle::swap_bfs_distance(a, b));
  }
}

TEST_CASE("classify_point") {
  auto [ps, dc] = build_double_chain(4);
  SUBCASE("far above is outside") {
    RegionFlags f = classify_point(dc, Point{Rational(0), Rational(100)});
    CHECK(f.outside);
    CHECK_FALSE(f.in_kernel);
  }
  SUBCASE("centroid of the extremes is in the kernel") {
    Point c{(dc.up(0).x + dc.up(3).x + dc.lo(0).x + dc.lo(3).x) / Rational(4),
            (dc.up(0).y + dc.up(3).y + dc.lo(0).y + dc.lo(3).y) / Rational(4)};
    RegionFlags f = classify_point(dc, c);
    CHECK(f.in_kernel);
    CHECK_FALSE(f.outside);
  }
  SUBCASE("point beyond the mouth is wedge plus kernel, not polygon") {
    Point s = kernel_point_beyond_mouth(dc);
    RegionFlags f = classify_point(dc, s);
    CHECK(f.in_kernel);
    CHECK(f.in_wedge);
    CHECK_FALSE(f.in_polygon);
    CHECK_FALSE(f.outside);
  }
  SUBCASE("interior polygon point near the middle") {
    RegionFlags f = classify_point(dc, Point{Rational(1, 7), Rational(0)});
    CHECK(f.in_polygon);
    CHECK_FALSE(f.outside);
  }
}

TEST_CASE("local_triangulation") {
  SUBCASE("with all P_D edges present it is the inner sub-triangulation") {
    auto [ps, dc] = build_double_chain(3);
    auto [t1, t2] = fan_triangulations(dc);
    auto local = local_triangulation(dc, t1);
    CHECK(is_polygon_triangulation(dc, local));
    std::set<Edge> lset(local.begin(), local.end());
    // Exactly the P_D boundary plus the fan interior.
    for (const Edge& e : dc.polygon_edges()) CHECK(lset.count(e));
    for (int j = 1; j < 3; ++j)
      CHECK(lset.count(Edge(dc.upper.front(), dc.lower[static_cast<size_t>(j)])));
    CHECK(lset.size() == 9);  // 2n boundary + 2n-3 interior for n=3
  }
  SUBCASE("precondition rejects a non-outside extra point") {
    auto setup = steiner_setup(3);
    CHECK_THROWS_WITH((void)local_triangulation(setup.dc, setup.from),
                      "precondition violated: point not outside the double chain");
  }
}

TEST_CASE("local_triangulation under outside points, exhaustively for n=2") {
  // Double chain n=2 plus one far outside point: every triangulation maps to
  // a triangulation of P_D, and flips move L(T) by at most one flip.
  auto [ps0, dc0] = build_double_chain(2);
  std::vector<Point> pts(ps0->points().begin(), ps0->points().end());
  pts.push_back(Point{Rational(1, 3), Rational(17, 2)});
  auto ps = std::make_shared<PointSet>(std::move(pts), GpCheck::kFull);
  DoubleChain dc = dc0;
  dc.point_set = ps;
  REQUIRE(classify_point(dc, (*ps)[4]).outside);

  FlipGraph g = enumerate_flip_graph(ps, 10000);
  long checked_flips = 0;
  for (size_t i = 0; i < g.node_edges.size(); ++i) {
    Triangulation t(ps, g.node_edges[i]);
    auto local = local_triangulation(dc, t);
    CHECK(is_polygon_triangulation(dc, local));
    for (const Edge& e : t.edges()) {
      if (t.apexes(e).count != 2 || !t.flippable(e)) continue;
      auto [next, step] = t.apply_flip(e);
      auto local2 = local_triangulation(dc, next);
      std::set<Edge> a(local.begin(), local.end());
      std::set<Edge> b(local2.begin(), local2.end());
      std::vector<Edge> delta;
      for (const Edge& x : a)
        if (!b.count(x)) delta.push_back(x);
      for (const Edge& x : b)
        if (!a.count(x)) delta.push_back(x);
      CHECK(delta.size() <= 2);
      ++checked_flips;
    }
  }
  CHECK(checked_flips > 0);
}

TEST_CASE("kernel_steiner_sequence") {
  SUBCASE("n=2 within 4 flips") {
    auto setup = steiner_setup(2);
    FlipSequence seq = kernel_steiner_sequence(setup.dc, setup.steiner, setup.from, setup.to);
    CHECK(seq.size() <= 4);
  }
  SUBCASE("n=5: replay reaches the target and the mouth edge is temporarily flipped") {
    auto setup = steiner_setup(5);
    FlipSequence seq = kernel_steiner_sequence(setup.dc, setup.steiner, setup.from, setup.to);
    CHECK(static_cast<long>(seq.size()) <= 4 * 5 - 4);
    FlipEngine engine(setup.ps->points(), setup.from.edges());
    Edge mouth(setup.dc.upper.front(), setup.dc.lower.front());
    bool removed = false, restored = false;
    for (const FlipStep& s : seq) {
      engine.apply(s);
      if (s.removed == mouth) removed = true;
      if (s.inserted == mouth) restored = true;
    }
    CHECK(engine.edge_list() == setup.to.edges());
    CHECK(setup.from.has_edge(mouth));
    CHECK(setup.to.has_edge(mouth));
    CHECK(removed);
    CHECK(restored);
  }
  SUBCASE("steiner outside the kernel is rejected") {
    auto setup = steiner_setup(3);
    // Upper chain points are not in the kernel.
    CHECK_THROWS_WITH(
        (void)kernel_steiner_sequence(setup.dc, setup.dc.upper[1], setup.from, setup.to),
        "s not in kernel");
  }
}
