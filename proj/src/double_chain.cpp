#include "flipdist/double_chain.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "flipdist/flip_engine.hpp"

namespace flipdist {

std::vector<int> DoubleChain::polygon_indices() const {
  std::vector<int> out = lower;
  out.insert(out.end(), upper.rbegin(), upper.rend());
  return out;
}

std::vector<Edge> DoubleChain::polygon_edges() const {
  std::vector<Edge> out = chain_edges();
  out.emplace_back(upper.front(), lower.front());
  out.emplace_back(upper.back(), lower.back());
  return out;
}

std::vector<Edge> DoubleChain::chain_edges() const {
  std::vector<Edge> out;
  for (int i = 0; i + 1 < n; ++i) {
    out.emplace_back(upper[static_cast<size_t>(i)], upper[static_cast<size_t>(i) + 1]);
    out.emplace_back(lower[static_cast<size_t>(i)], lower[static_cast<size_t>(i) + 1]);
  }
  return out;
}

namespace {

// South-arc parametrization of the circle with center (0, gap + R):
// t = 0 is the lowest point, small |t| stays near it.
Point arc_point(const Rational& t, const Rational& gap, const Rational& radius, bool upper) {
  Rational den = t * t + Rational(1);
  Rational x = Rational(2) * radius * t / den;
  Rational sag = Rational(2) * radius * t * t / den;
  Rational y = upper ? gap + sag : -(gap + sag);
  return Point{x, y};
}

}  // namespace

std::pair<PointSetPtr, DoubleChain> build_double_chain(int n, const DoubleChainFrame& frame) {
  if (n < 2) throw std::invalid_argument("double chain needs n >= 2");
  Rational half_width = frame.half_width.is_zero() ? Rational(n) : frame.half_width;
  Rational gap = frame.half_gap;
  Rational flat = frame.flatness.is_zero() ? Rational(1, 8L * n) : frame.flatness;
  if (half_width.sign() <= 0 || gap.sign() <= 0 || flat.sign() <= 0)
    throw std::invalid_argument("double chain frame values must be positive");

  for (int attempt = 0; attempt < 24; ++attempt) {
    // radius chosen so the arc spans exactly [-half_width, half_width].
    Rational radius = half_width * (flat * flat + Rational(1)) / (Rational(2) * flat);
    std::vector<Point> pts;
    pts.reserve(static_cast<size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
      Rational t = -flat + Rational(2L * i, n - 1) * flat;
      pts.push_back(arc_point(t, gap, radius, true));
    }
    for (int i = 0; i < n; ++i) {
      Rational t = -flat + Rational(2L * i, n - 1) * flat;
      pts.push_back(arc_point(t, gap, radius, false));
    }
    PointSetPtr ps;
    try {
      ps = std::make_shared<PointSet>(std::move(pts), GpCheck::kFull);
    } catch (const std::invalid_argument&) {
      flat = flat * Rational(attempt + 2, attempt + 3);  // flatten and retry
      continue;
    }
    DoubleChain dc;
    dc.n = n;
    dc.point_set = ps;
    for (int i = 0; i < n; ++i) dc.upper.push_back(i);
    for (int i = 0; i < n; ++i) dc.lower.push_back(n + i);
    dc.sep_a = Point{Rational(0), Rational(0)};
    dc.sep_b = Point{Rational(1), Rational(0)};
    validate_double_chain(dc);
    return {ps, dc};
  }
  throw std::logic_error("double chain construction failed to reach general position");
}

void validate_double_chain(const DoubleChain& dc) {
  const PointSet& ps = *dc.point_set;
  const int n = dc.n;
  if (static_cast<int>(dc.upper.size()) != n || static_cast<int>(dc.lower.size()) != n || n < 2)
    throw std::invalid_argument("double chain index lists inconsistent");

  // Separating line with the upper chain strictly on its left.
  for (int i = 0; i < n; ++i) {
    if (orientation(dc.sep_a, dc.sep_b, dc.up(i)) != Orientation::kLeft)
      throw std::invalid_argument("upper chain point not left of the separating line");
    if (orientation(dc.sep_a, dc.sep_b, dc.lo(i)) != Orientation::kRight)
      throw std::invalid_argument("lower chain point not right of the separating line");
  }
  // Chains ordered along the line direction.
  auto along = [&](const Point& p) {
    return (p.x - dc.sep_a.x) * (dc.sep_b.x - dc.sep_a.x) +
           (p.y - dc.sep_a.y) * (dc.sep_b.y - dc.sep_a.y);
  };
  for (int i = 0; i + 1 < n; ++i) {
    if (!(along(dc.up(i)) < along(dc.up(i + 1))))
      throw std::invalid_argument("upper chain not ordered along the separating line");
    if (!(along(dc.lo(i)) < along(dc.lo(i + 1))))
      throw std::invalid_argument("lower chain not ordered along the separating line");
  }
  // Each chain bends toward the other: the upper chain turns left, the
  // lower right, walking left to right.
  for (int i = 1; i + 1 < n; ++i) {
    if (orientation(dc.up(i - 1), dc.up(i), dc.up(i + 1)) != Orientation::kLeft)
      throw std::invalid_argument("upper chain not concave toward the lower chain");
    if (orientation(dc.lo(i - 1), dc.lo(i), dc.lo(i + 1)) != Orientation::kRight)
      throw std::invalid_argument("lower chain not concave toward the upper chain");
  }
  // Mutual visibility, by orientation tests against the chain edges: every
  // point of one chain lies strictly on the convex side of every edge of
  // the other, which puts it in the region seeing the whole chain.
  for (int i = 0; i + 1 < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (orientation(dc.up(i), dc.up(i + 1), dc.lo(j)) != Orientation::kRight)
        throw std::invalid_argument("chains are not mutually visible");
      if (orientation(dc.lo(i), dc.lo(i + 1), dc.up(j)) != Orientation::kLeft)
        throw std::invalid_argument("chains are not mutually visible");
    }
  // Small chains also get the exhaustive segment check.
  if (n <= 24) {
    std::vector<Edge> chain = dc.chain_edges();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (const Edge& e : chain)
          if (segments_properly_cross(dc.up(i), dc.lo(j), ps[e.a], ps[e.b]))
            throw std::invalid_argument("chains are not mutually visible");
  }
}

std::pair<Triangulation, Triangulation> fan_triangulations(const DoubleChain& dc) {
  const int n = dc.n;
  std::vector<Edge> base = dc.polygon_edges();
  std::vector<Edge> m1 = base;
  std::vector<Edge> m2 = base;
  for (int j = 0; j < n; ++j) {
    m1.emplace_back(dc.upper.front(), dc.lower[static_cast<size_t>(j)]);
    m2.emplace_back(dc.lower.front(), dc.upper[static_cast<size_t>(j)]);
  }
  // Inside P_D the rest is forced: the far end of the fanned chain is the
  // only vertex that can triangulate the region behind the fan.
  for (int i = 0; i < n; ++i) {
    m1.emplace_back(dc.lower.back(), dc.upper[static_cast<size_t>(i)]);
    m2.emplace_back(dc.upper.back(), dc.lower[static_cast<size_t>(i)]);
  }
  auto dedupe = [](std::vector<Edge>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedupe(m1);
  dedupe(m2);
  return {complete_to_triangulation(dc.point_set, m1),
          complete_to_triangulation(dc.point_set, m2)};
}

std::string LabelSequence::str() const {
  std::string s;
  for (int v : labels) s += v ? '1' : '0';
  return s;
}

LabelSequence label_sequence(const DoubleChain& dc, const Triangulation& t) {
  for (const Edge& e : dc.polygon_edges())
    if (!t.has_edge(e)) throw std::invalid_argument("P_D boundary edge missing");

  std::set<int> dset(dc.upper.begin(), dc.upper.end());
  dset.insert(dc.lower.begin(), dc.lower.end());
  std::set<int> upset(dc.upper.begin(), dc.upper.end());

  const Point& a = dc.sep_a;
  const Point& b = dc.sep_b;
  auto height = [&](const Point& p) { return cross(a, b, p); };
  auto along = [&](const Point& p) {
    return (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
  };
  // Parameter of the line crossing of segment pq (requires opposite signs).
  auto cross_param = [&](const Point& p, const Point& q) {
    Rational hp = height(p), hq = height(q);
    Rational lam = hp / (hp - hq);
    Point x{p.x + lam * (q.x - p.x), p.y + lam * (q.y - p.y)};
    return along(x);
  };

  const PointSet& ps = t.point_set();
  Rational s_left = cross_param(dc.up(0), dc.lo(0));
  Rational s_right = cross_param(dc.up(dc.n - 1), dc.lo(dc.n - 1));

  std::vector<std::pair<Rational, int>> stabbed;  // (entry parameter, label)
  for (const auto& tri : t.triangles()) {
    int signs[3];
    for (int k = 0; k < 3; ++k) signs[k] = height(ps[tri[static_cast<size_t>(k)]]).sign();
    bool has_pos = signs[0] > 0 || signs[1] > 0 || signs[2] > 0;
    bool has_neg = signs[0] < 0 || signs[1] < 0 || signs[2] < 0;
    if (!has_pos || !has_neg) continue;  // not stabbed

    // Entry interval of the triangle along the line.
    std::vector<Rational> params;
    for (int k = 0; k < 3; ++k) {
      int k2 = (k + 1) % 3;
      if (signs[k] * signs[k2] < 0)
        params.push_back(cross_param(ps[tri[static_cast<size_t>(k)]], ps[tri[static_cast<size_t>(k2)]]));
    }
    Rational lo = params[0], hi = params[0];
    for (const Rational& v : params) {
      lo = min(lo, v);
      hi = max(hi, v);
    }
    Rational mid = (lo + hi) / Rational(2);
    if (!(s_left < mid && mid < s_right)) continue;  // stabbed outside P_D

    int upper_count = 0;
    bool all_chain = true;
    for (int k = 0; k < 3; ++k) {
      int idx = tri[static_cast<size_t>(k)];
      if (!dset.count(idx)) all_chain = false;
      if (upset.count(idx)) ++upper_count;
    }
    if (!all_chain || upper_count == 0 || upper_count == 3)
      throw std::invalid_argument("not a stabbed triangulation");
    stabbed.emplace_back(lo, upper_count == 2 ? 1 : 0);
  }
  std::sort(stabbed.begin(), stabbed.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  LabelSequence seq;
  for (const auto& [pos, label] : stabbed) seq.labels.push_back(label);
  long ones = std::count(seq.labels.begin(), seq.labels.end(), 1);
  long zeros = static_cast<long>(seq.labels.size()) - ones;
  if (ones != dc.n - 1 || zeros != dc.n - 1)
    throw std::invalid_argument("not a stabbed triangulation");
  return seq;
}

long inversion_distance(const LabelSequence& s1, const LabelSequence& s2) {
  if (s1.labels.size() != s2.labels.size())
    throw std::invalid_argument("label multisets differ");
  std::vector<long> a, b;
  for (size_t i = 0; i < s1.labels.size(); ++i) {
    if (s1.labels[i]) a.push_back(static_cast<long>(i));
    if (s2.labels[i]) b.push_back(static_cast<long>(i));
  }
  if (a.size() != b.size()) throw std::invalid_argument("label multisets differ");
  long total = 0;
  for (size_t i = 0; i < a.size(); ++i) total += std::abs(a[i] - b[i]);
  return total;
}

RegionFlags classify_point(const DoubleChain& dc, const Point& p) {
  const int n = dc.n;
  auto side = [&](const Point& u, const Point& v, const Point& q) {
    return orientation_sign(u, v, q);
  };

  // Wedge W_1: the double wedge of the supporting lines of u1u2 and l1l2
  // whose interior is free of chain points: the (inner, inner) and
  // (outer, outer) sign pairs. Same for W_n. Closed.
  auto in_double_wedge = [&](const Point& ua, const Point& ub, const Point& la, const Point& lb) {
    int su = side(ua, ub, p), su_ref = side(ua, ub, la);
    int sl = side(la, lb, p), sl_ref = side(la, lb, ua);
    bool inner = su * su_ref >= 0 && sl * sl_ref >= 0;
    bool outer = su * su_ref <= 0 && sl * sl_ref <= 0;
    return inner || outer;
  };
  RegionFlags f;
  f.in_wedge = in_double_wedge(dc.up(0), dc.up(1), dc.lo(0), dc.lo(1)) ||
               in_double_wedge(dc.up(n - 2), dc.up(n - 1), dc.lo(n - 2), dc.lo(n - 1));

  // Kernel: inner side of all four extreme chain edges, closed.
  auto inner_ok = [&](const Point& ea, const Point& eb, const Point& ref) {
    return side(ea, eb, p) * side(ea, eb, ref) >= 0;
  };
  f.in_kernel = inner_ok(dc.up(0), dc.up(1), dc.lo(0)) &&
                inner_ok(dc.up(n - 2), dc.up(n - 1), dc.lo(n - 1)) &&
                inner_ok(dc.lo(0), dc.lo(1), dc.up(0)) &&
                inner_ok(dc.lo(n - 2), dc.lo(n - 1), dc.up(n - 1));

  std::vector<Point> poly;
  for (int idx : dc.polygon_indices()) poly.push_back((*dc.point_set)[idx]);
  f.in_polygon = point_in_simple_polygon(p, poly);
  f.outside = !f.in_wedge && !f.in_polygon;
  return f;
}

namespace {

// Crossing of segment pq with the open ray from `origin` along `dir`
// (given as the vector origin - toward, i.e. pointing away from the chain).
bool crosses_ray(const Point& p, const Point& q, const Point& origin, const Point& inner) {
  int sp = orientation_sign(inner, origin, p);
  int sq = orientation_sign(inner, origin, q);
  if (sp * sq >= 0) return false;  // must straddle the supporting line
  auto x = line_intersection(p, q, inner, origin);
  if (!x) return false;
  // Strictly beyond origin, away from inner.
  Rational d = (x->x - origin.x) * (origin.x - inner.x) + (x->y - origin.y) * (origin.y - inner.y);
  return d.sign() > 0;
}

}  // namespace

std::vector<Edge> local_triangulation(const DoubleChain& dc, const Triangulation& t) {
  const PointSet& ps = t.point_set();
  const int n = dc.n;
  std::map<int, std::pair<bool, int>> chain_pos;  // index -> (is_upper, position)
  for (int i = 0; i < n; ++i) {
    chain_pos[dc.upper[static_cast<size_t>(i)]] = {true, i};
    chain_pos[dc.lower[static_cast<size_t>(i)]] = {false, i};
  }
  for (int idx = 0; idx < ps.size(); ++idx) {
    if (chain_pos.count(idx)) continue;
    if (!classify_point(dc, ps[idx]).outside)
      throw std::invalid_argument("precondition violated: point not outside the double chain");
  }

  std::set<Edge> out;
  for (const Edge& e : dc.polygon_edges()) out.insert(e);

  for (const Edge& e : t.edges()) {
    auto ia = chain_pos.find(e.a);
    auto ib = chain_pos.find(e.b);
    const Point& pa = ps[e.a];
    const Point& pb = ps[e.b];

    if (ia != chain_pos.end() && ib != chain_pos.end()) {
      // Same chain: only consecutive points give P_D edges (chords live in
      // the pockets, outside P_D). Cross chain: always an edge of P_D.
      if (ia->second.first != ib->second.first) out.insert(e);
      continue;
    }

    // Collect image vertices from D endpoints and boundary crossings.
    std::vector<int> images;
    if (ia != chain_pos.end()) images.push_back(e.a);
    if (ib != chain_pos.end()) images.push_back(e.b);
    for (int i = 0; i + 1 < n; ++i) {
      if (segments_properly_cross(pa, pb, dc.up(i), dc.up(i + 1)))
        images.push_back(dc.upper[static_cast<size_t>(i) + 1]);
      if (segments_properly_cross(pa, pb, dc.lo(i), dc.lo(i + 1)))
        images.push_back(dc.lower[static_cast<size_t>(i) + 1]);
    }
    if (crosses_ray(pa, pb, dc.up(0), dc.up(1))) images.push_back(dc.upper.front());
    if (crosses_ray(pa, pb, dc.up(n - 1), dc.up(n - 2))) images.push_back(dc.upper.back());
    if (crosses_ray(pa, pb, dc.lo(0), dc.lo(1))) images.push_back(dc.lower.front());
    if (crosses_ray(pa, pb, dc.lo(n - 1), dc.lo(n - 2))) images.push_back(dc.lower.back());

    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    if (images.size() < 2) continue;
    if (images.size() > 2) throw std::logic_error("edge mapped to more than two vertices");
    Edge img(images[0], images[1]);
    // Same-chain images can only arise as chain edges (ray + adjacent
    // crossing); anything longer would contradict the mapping.
    auto ca = chain_pos.at(img.a);
    auto cb = chain_pos.at(img.b);
    if (ca.first == cb.first && std::abs(ca.second - cb.second) != 1)
      throw std::logic_error("edge mapped to a non-adjacent same-chain pair");
    out.insert(img);
  }
  return {out.begin(), out.end()};
}

bool is_polygon_triangulation(const DoubleChain& dc, const std::vector<Edge>& edges) {
  const PointSet& ps = *dc.point_set;
  const int n = dc.n;
  std::set<Edge> set(edges.begin(), edges.end());
  for (const Edge& e : dc.polygon_edges())
    if (!set.count(e)) return false;

  std::map<int, std::pair<bool, int>> chain_pos;
  for (int i = 0; i < n; ++i) {
    chain_pos[dc.upper[static_cast<size_t>(i)]] = {true, i};
    chain_pos[dc.lower[static_cast<size_t>(i)]] = {false, i};
  }
  long interior = 0;
  std::vector<Edge> list(set.begin(), set.end());
  for (const Edge& e : list) {
    auto a = chain_pos.find(e.a);
    auto b = chain_pos.find(e.b);
    if (a == chain_pos.end() || b == chain_pos.end()) return false;
    if (a->second.first == b->second.first) {
      if (std::abs(a->second.second - b->second.second) != 1) return false;  // pocket chord
    } else {
      bool mouth = (a->second.second == 0 && b->second.second == 0) ||
                   (a->second.second == n - 1 && b->second.second == n - 1);
      if (!mouth) ++interior;
    }
  }
  for (size_t i = 0; i < list.size(); ++i)
    for (size_t j = i + 1; j < list.size(); ++j)
      if (segments_properly_cross(ps[list[i].a], ps[list[i].b], ps[list[j].a], ps[list[j].b]))
        return false;
  return interior == 2L * n - 3;
}

FlipSequence grow_star(FlipEngine& engine, int steiner, const std::set<int>& region,
                       long max_flips) {
  FlipSequence seq;
  // Candidates are edges between region points facing a triangle at
  // steiner. While such an edge exists its quadrilateral is fixed (the
  // growth never removes steiner edges), so a candidate that fails any test
  // can be dropped for good.
  std::set<Edge> candidates;
  long have = 0;
  {
    std::vector<int32_t> rn;
    for (int32_t v : engine.neighbors(steiner))
      if (region.count(v)) rn.push_back(v);
    have = static_cast<long>(rn.size());
    for (size_t i = 0; i < rn.size(); ++i)
      for (size_t j = i + 1; j < rn.size(); ++j)
        if (engine.has_edge(Edge(rn[i], rn[j]))) candidates.insert(Edge(rn[i], rn[j]));
  }
  const long want = static_cast<long>(region.size());
  while (have < want) {
    bool advanced = false;
    while (!candidates.empty()) {
      Edge e = *candidates.begin();
      candidates.erase(candidates.begin());
      if (!engine.has_edge(e)) continue;
      EdgeApexes ax = engine.apexes(e);
      if (ax.count != 2 || (ax.first != steiner && ax.second != steiner)) continue;
      int32_t far = ax.first == steiner ? ax.second : ax.first;
      if (!region.count(far)) continue;
      if (!engine.flippable(e)) continue;
      seq.push_back(engine.flip(e));
      ++have;
      if (static_cast<long>(seq.size()) > max_flips)
        throw std::logic_error("star growth exceeded its flip budget");
      candidates.insert(Edge(e.a, far));
      candidates.insert(Edge(e.b, far));
      advanced = true;
      break;
    }
    if (!advanced) throw std::logic_error("star growth stuck");
  }
  return seq;
}

Point kernel_point_beyond_mouth(const DoubleChain& dc) {
  const Point& u1 = dc.up(0);
  const Point& l1 = dc.lo(0);
  Point mid{(u1.x + l1.x) / Rational(2), (u1.y + l1.y) / Rational(2)};
  // Step outward along the separating-line direction, away from the chain.
  Rational dx = dc.sep_b.x - dc.sep_a.x;
  Rational dy = dc.sep_b.y - dc.sep_a.y;
  Rational span = abs(dc.up(dc.n - 1).x - u1.x) + abs(dc.up(dc.n - 1).y - u1.y);
  for (int k = 1; k <= 64; ++k) {
    Rational step = span / Rational(2L * k);
    Point s{mid.x - step * dx, mid.y - step * dy};
    RegionFlags f = classify_point(dc, s);
    if (!f.in_kernel || f.in_polygon) continue;
    // Sees only the mouth: strictly inside the hull-edge lines at the ends.
    if (orientation_sign(dc.up(0), dc.up(dc.n - 1), s) !=
        orientation_sign(dc.up(0), dc.up(dc.n - 1), l1))
      continue;
    if (orientation_sign(dc.lo(0), dc.lo(dc.n - 1), s) !=
        orientation_sign(dc.lo(0), dc.lo(dc.n - 1), u1))
      continue;
    // Appending must preserve general position.
    std::vector<Point> pts(dc.point_set->points().begin(), dc.point_set->points().end());
    pts.push_back(s);
    try {
      PointSet probe(std::move(pts), GpCheck::kFull);
    } catch (const std::invalid_argument&) {
      continue;
    }
    return s;
  }
  throw std::logic_error("no kernel point beyond the mouth found");
}

FlipSequence kernel_steiner_sequence(const DoubleChain& dc, int steiner,
                                     const Triangulation& from, const Triangulation& to) {
  const PointSet& ps = from.point_set();
  // Strict kernel membership: strictly on the inner side of all four extreme
  // chain edges (chain points sit on the closed kernel's boundary and are
  // useless as hubs).
  {
    const Point& p = ps[steiner];
    const int n = dc.n;
    auto strict = [&](const Point& ea, const Point& eb, const Point& ref) {
      return orientation_sign(ea, eb, p) * orientation_sign(ea, eb, ref) > 0;
    };
    bool inner = strict(dc.up(0), dc.up(1), dc.lo(0)) &&
                 strict(dc.up(n - 2), dc.up(n - 1), dc.lo(n - 1)) &&
                 strict(dc.lo(0), dc.lo(1), dc.up(0)) &&
                 strict(dc.lo(n - 2), dc.lo(n - 1), dc.up(n - 1));
    if (!inner) throw std::invalid_argument("s not in kernel");
  }
  std::set<int> region(dc.upper.begin(), dc.upper.end());
  region.insert(dc.lower.begin(), dc.lower.end());
  const long cap = 2L * dc.n - 2;

  FlipEngine fwd(ps.points(), from.edges());
  FlipSequence phase1 = grow_star(fwd, steiner, region, cap);

  FlipEngine bwd(ps.points(), to.edges());
  FlipSequence phase2 = grow_star(bwd, steiner, region, cap);

  FlipSequence seq = phase1;
  for (auto it = phase2.rbegin(); it != phase2.rend(); ++it)
    seq.push_back(FlipStep{it->inserted, it->removed});

  // The two stars must agree; replay to the target proves it.
  for (size_t i = phase1.size(); i < seq.size(); ++i) fwd.apply(seq[i]);
  if (!(fwd.edge_list() == to.edges()))
    throw std::logic_error("kernel schedule does not reach the target triangulation");
  return seq;
}

}  // namespace flipdist
