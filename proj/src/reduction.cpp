#include "flipdist/reduction.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "flipdist/collinear_scan.hpp"
#include "flipdist/config.hpp"
#include "flipdist/farey.hpp"
#include "flipdist/planar.hpp"

namespace flipdist {

namespace {

// Stage timing on stderr when FLIPDIST_PROGRESS is set.
struct Progress {
  bool on = std::getenv("FLIPDIST_PROGRESS") != nullptr;
  std::chrono::steady_clock::time_point last = std::chrono::steady_clock::now();
  void operator()(const std::string& what) {
    if (!on) return;
    auto now = std::chrono::steady_clock::now();
    std::cerr << "[assemble] " << what << " ("
              << std::chrono::duration<double>(now - last).count() << "s)\n";
    last = now;
  }
};

Rational sq(const Rational& r) { return r * r; }
Point sub(const Point& a, const Point& b) { return Point{a.x - b.x, a.y - b.y}; }
Point add(const Point& a, const Point& b) { return Point{a.x + b.x, a.y + b.y}; }
Point scale(const Rational& s, const Point& a) { return Point{s * a.x, s * a.y}; }
Point perp(const Point& a) { return Point{-a.y, a.x}; }
Rational vcross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
Rational vdot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
Point midpoint(const Point& a, const Point& b) {
  return Point{(a.x + b.x) / Rational(2), (a.y + b.y) / Rational(2)};
}

Point secant_dir(const Circle& c, const Point& p, const Point& dir) {
  Rational numer = vdot(dir, sub(p, c.center));
  if (numer.is_zero()) throw std::logic_error("tangent secant direction");
  Rational s = Rational(-2) * numer / vdot(dir, dir);
  return add(p, scale(s, dir));
}

// Same ray through coprime integers; directions carry no denominators, which
// keeps the secant coordinates small.
Point reduce_direction(const Point& dir) {
  mpz_class nx = dir.x.num() * dir.y.den();
  mpz_class ny = dir.y.num() * dir.x.den();
  if (nx == 0 && ny == 0) throw std::logic_error("zero direction");
  mpz_class g = gcd(nx, ny);
  if (g == 0) g = 1;
  return Point{Rational(nx / g, mpz_class(1)), Rational(ny / g, mpz_class(1))};
}

// angle(base, a) < angle(base, b) for angles in (0, pi), exact.
bool angle_less(const Point& base, const Point& a, const Point& b) {
  Rational ca = abs(vcross(base, a)), cb = abs(vcross(base, b));
  Rational da = vdot(base, a), db = vdot(base, b);
  int sa = da.sign(), sb = db.sign();
  if (sa > 0 && sb <= 0) return true;
  if (sa <= 0 && sb > 0) return false;
  if (sa > 0) return ca * db < cb * da;
  return ca * db > cb * da;
}

}  // namespace

bool LayoutParams::inequalities_hold(int n, int m) const {
  long base = m * (4 * x + 2 * d) + tau;
  if (!(w >= base + 1)) return false;
  long lhs = (d - 1) * (d - 1);
  long rhs = 2 * (static_cast<long>(n) * (2 * w - 1) + base);
  return lhs > rhs;
}

long ReductionInstance::delta_bound(long k) const {
  const long m = graph.edge_count();
  return 2 * (k * (2 * params.w - 1) + m * (4 * params.x + 2 * params.d) + params.tau);
}

std::vector<Point> embed_polygon(int n) {
  if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  long denom = 1;
  for (int i = 0; i < 5; ++i) denom *= n;

  std::vector<Point> chosen;
  std::vector<Point> crossings;                  // diagonal crossings so far
  std::vector<std::array<int, 4>> members;       // vertices involved per crossing

  auto forbidden = [&](const Point& cand) {
    for (size_t xi = 0; xi < crossings.size(); ++xi)
      for (int v = 0; v < static_cast<int>(chosen.size()); ++v) {
        const auto& mem = members[xi];
        if (v == mem[0] || v == mem[1] || v == mem[2] || v == mem[3]) continue;
        if (orientation_sign(cand, chosen[static_cast<size_t>(v)], crossings[xi]) == 0)
          return true;
      }
    return false;
  };

  for (long i = 1; i <= denom && static_cast<int>(chosen.size()) < n; ++i) {
    Point cand = unit_circle_point(Rational(i, denom));
    if (static_cast<int>(chosen.size()) >= 5 && forbidden(cand)) continue;
    int idx = static_cast<int>(chosen.size());
    for (int a = 0; a < idx; ++a)
      for (int b = 0; b < idx; ++b)
        for (int c = b + 1; c < idx; ++c) {
          if (a == b || a == c) continue;
          if (!segments_properly_cross(chosen[static_cast<size_t>(a)], cand,
                                       chosen[static_cast<size_t>(b)],
                                       chosen[static_cast<size_t>(c)]))
            continue;
          crossings.push_back(*line_intersection(chosen[static_cast<size_t>(a)], cand,
                                                 chosen[static_cast<size_t>(b)],
                                                 chosen[static_cast<size_t>(c)]));
          members.push_back({a, idx, b, c});
        }
    chosen.push_back(cand);
  }
  if (static_cast<int>(chosen.size()) < n)
    throw std::logic_error("polygon candidate pool exhausted");
  return chosen;
}

std::pair<Rational, Rational> compute_clearances(const std::vector<Point>& polygon) {
  const int n = static_cast<int>(polygon.size());
  auto coord_gap = [](const Point& a, const Point& b) {
    return max(abs(a.x - b.x), abs(a.y - b.y));
  };
  auto pt = [&](int i) -> const Point& { return polygon[static_cast<size_t>(i)]; };

  std::optional<Rational> delta_e;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = a + 1; c < n; ++c)
        for (int e = c + 1; e < n; ++e) {
          if (c == b || e == b) continue;
          if (!segments_properly_cross(pt(a), pt(b), pt(c), pt(e))) continue;
          Point x = *line_intersection(pt(a), pt(b), pt(c), pt(e));
          for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
              if ((p == a && q == b) || (p == c && q == e)) continue;
              Rational len2 = dist2(pt(p), pt(q));
              Rational t = vdot(sub(pt(q), pt(p)), sub(x, pt(p))) / len2;
              Point nearest = t.sign() <= 0
                                  ? pt(p)
                                  : (t >= Rational(1) ? pt(q)
                                                      : add(pt(p), scale(t, sub(pt(q), pt(p)))));
              if (nearest == x) throw std::logic_error("three concurrent diagonals");
              Rational est = coord_gap(x, nearest);
              if (!delta_e || est < *delta_e) delta_e = est;
            }
        }

  std::optional<Rational> delta_v;
  std::optional<Rational> delta_n;
  for (int i = 0; i < n; ++i) {
    const Point& u = pt((i + n - 1) % n);
    const Point& v = pt(i);
    const Point& w = pt((i + 1) % n);
    Rational ev = coord_gap(v, foot_on_line(v, u, w));
    if (!delta_v || ev < *delta_v) delta_v = ev;
    Point nv = add(v, perp(v));  // |v| = 1, so perp(v) is a unit direction
    for (const Point& nb : {u, w}) {
      Rational en = coord_gap(nb, foot_on_line(nb, v, nv));
      if (!delta_n || en < *delta_n) delta_n = en;
    }
  }

  std::optional<Rational> delta_r;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rational gx = abs(pt(i).x - pt(j).x);
      Rational gy = abs(pt(i).y - pt(j).y);
      if (gx.is_zero() || gy.is_zero())
        throw std::logic_error("repeated coordinate among polygon vertices");
      Rational g = min(gx, gy);
      if (!delta_r || g < *delta_r) delta_r = g;
    }

  Rational delta = min(min(*delta_e / Rational(3), *delta_v), min(*delta_n, *delta_r));
  // Rebase to a small-denominator value slightly below; shrinking a
  // clearance is always safe.
  Rational simple = simplest_between(delta * Rational(3, 4), delta);
  return {simple, simple / Rational(6)};
}

DrawingInfo analyze_drawing(const CubicGraph& g, const std::vector<Point>& polygon) {
  const int m = g.edge_count();
  DrawingInfo info;
  info.crossing_params.resize(static_cast<size_t>(m));
  auto pt = [&](int i) -> const Point& { return polygon[static_cast<size_t>(i)]; };
  for (int e = 0; e < m; ++e) {
    auto [a, b] = g.edges[static_cast<size_t>(e)];
    for (int f = 0; f < m; ++f) {
      if (f == e) continue;
      auto [c, d] = g.edges[static_cast<size_t>(f)];
      if (!segments_properly_cross(pt(a), pt(b), pt(c), pt(d))) continue;
      Point x = *line_intersection(pt(a), pt(b), pt(c), pt(d));
      info.crossing_params[static_cast<size_t>(e)].push_back(
          vdot(sub(pt(b), pt(a)), sub(x, pt(a))) / dist2(pt(a), pt(b)));
    }
    auto& params = info.crossing_params[static_cast<size_t>(e)];
    std::sort(params.begin(), params.end());
    info.x_prime = std::max(info.x_prime, static_cast<long>(params.size()));
  }
  if (info.x_prime > m - 5) throw std::logic_error("x' exceeds m - 5");
  info.x = std::max<long>(1, (info.x_prime + 1) / 2);

  for (int e = 0; e < m; ++e) {
    const auto& params = info.crossing_params[static_cast<size_t>(e)];
    const long k = static_cast<long>(params.size());
    long j = k / 2;
    Rational lo = j == 0 ? Rational(0) : params[static_cast<size_t>(j - 1)];
    Rational hi = j == k ? Rational(1) : params[static_cast<size_t>(j)];
    info.center_param.push_back((lo + hi) / Rational(2));
  }
  return info;
}

std::pair<long, long> solve_parameters(int n, int m, long x, long tau) {
  for (long d = 2;; ++d) {
    long w = m * (4 * x + 2 * d) + tau + 1;
    long lhs = (d - 1) * (d - 1);
    long rhs = 2 * (static_cast<long>(n) * (2 * w - 1) + m * (4 * x + 2 * d) + tau);
    if (lhs > rhs) return {d, w};
    if (d > 2'000'000) throw std::logic_error("parameter search diverged");
  }
}

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

namespace {

struct Regen {
  std::function<Point(long)> make;              // candidate slot -> point
  std::function<bool(const Point&)> acceptable;  // gadget-local constraints
  long slot = 0;
  long max_slot = 0;
};

struct Builder {
  const CubicGraph& graph;
  AssembleOptions opts;
  int n, m;
  std::vector<Point> pts;
  std::vector<int> specials;
  std::map<int, Regen> movable;

  std::vector<Point> polygon;
  DrawingInfo drawing;
  LayoutParams params;
  std::vector<VertexGadget> vgs;
  std::vector<EdgeGadget> egs;

  int add(Point p) {
    pts.push_back(std::move(p));
    return static_cast<int>(pts.size()) - 1;
  }
  const Point& at(int i) const { return pts[static_cast<size_t>(i)]; }

  bool collinear_with_specials(const Point& p) const {
    for (size_t i = 0; i < specials.size(); ++i)
      for (size_t j = i + 1; j < specials.size(); ++j)
        if (orientation_sign(p, at(specials[i]), at(specials[j])) == 0) return true;
    return false;
  }
  // Per-candidate special-line checks are exhaustive on small graphs; large
  // instances rely on structural circle carriers plus the post-hoc scan.
  bool check_candidates() const { return n <= 6; }
};

int make_tunnel_port(Builder& b, int from_v, int to_v, int side) {
  const Point pf = b.polygon[static_cast<size_t>(from_v)];
  const Point pt_ = b.polygon[static_cast<size_t>(to_v)];
  const Rational rv = b.params.r_v;
  const int sigma = pt_.x > pf.x ? 1 : -1;
  const Rational dx_abs = abs(pt_.x - pf.x);

  auto chart = [pf, rv, sigma](const Rational& t) {
    Rational den = t * t + Rational(1);
    return Point{pf.x + rv * Rational(sigma) * (Rational(1) - t * t) / den,
                 pf.y + rv * (t + t) / den};
  };
  auto y_hit = [pf, dx_abs](const Rational& t) {
    return pf.y + dx_abs * (t + t) / (Rational(1) - t * t);
  };
  auto window_t = [&](const Rational& wlo, const Rational& whi) {
    Rational ylo = pt_.y + rv * wlo;
    Rational yhi = pt_.y + rv * whi;
    auto inside = [&](const Rational& s) {
      Rational t = s + s - Rational(1);
      Rational y = y_hit(t);
      return ylo < y && y < yhi;
    };
    auto below = [&](const Rational& s) { return y_hit(s + s - Rational(1)) <= ylo; };
    mpz_class cap = farey_step_cap(rv / (Rational(64) * dx_abs));
    Rational s = farey_search(inside, below, cap);
    return s + s - Rational(1);
  };

  Rational t_far, t_near;
  if (side > 0) {
    t_far = window_t(Rational(7, 8), Rational(1));
    t_near = window_t(Rational(4, 8), Rational(5, 8));
  } else {
    t_far = window_t(Rational(-1), Rational(-7, 8));
    t_near = window_t(Rational(-5, 8), Rational(-4, 8));
  }
  Rational lo = min(t_far, t_near), hi = max(t_far, t_near);
  Rational mid = (lo + hi) / Rational(2);
  Rational lo2 = simplest_between(lo, mid);
  Rational hi2 = simplest_between(mid, hi);

  const long M = 128;
  for (long k = 1; k <= M; ++k) {
    Rational t = lo2 + Rational(k, M + 1) * (hi2 - lo2);
    Point cand = chart(t);
    if (b.collinear_with_specials(cand)) continue;
    int id = b.add(cand);
    b.specials.push_back(id);
    return id;
  }
  throw std::logic_error("tunnel port candidates exhausted");
}

// Points on a shallow circular arc over the wall (A, B), chosen through
// rational-slope secants from A, constrained by `inside`. `along` orders
// points from A to B. Returns ids in that order plus the arc circle.
struct ArcChainSpec {
  Point a;
  Point b;
  Point far_center;                // tangent-ray candidate through the far wire center
  int interior_sign;               // side of A->B holding the tunnel interior
  std::function<bool(const Point&)> inside;
  std::function<Rational(const Point&)> along;
  Rational along_span;             // along(B)
  Rational window_lo;              // feasible along-window (the region R)
  Rational window_hi;
  long count;
};

struct ArcChainResult {
  Circle arc;
  std::vector<int> ids;
};

ArcChainResult make_arc_chain(Builder& b, const ArcChainSpec& spec) {
  const Point base = sub(spec.b, spec.a);

  std::optional<Point> ray;
  for (Point cand : {Point{Rational(1), Rational(0)}, Point{Rational(1), Rational(1)},
                     Point{Rational(0), Rational(1)}, Point{Rational(1), Rational(-1)},
                     Point{Rational(-1), Rational(1)}, Point{Rational(0), Rational(-1)},
                     Point{Rational(-1), Rational(-1)}, Point{Rational(-1), Rational(0)}}) {
    if ((vcross(base, cand).sign()) * spec.interior_sign <= 0) continue;
    if (!ray || angle_less(base, cand, *ray)) ray = cand;
  }
  if (!ray) throw std::logic_error("no axis ray on the interior side");
  Point w_dir = sub(spec.far_center, spec.a);
  Point s_dir = *ray;
  if (vcross(base, w_dir).sign() * spec.interior_sign > 0 && angle_less(base, w_dir, s_dir))
    s_dir = w_dir;

  Point mid = midpoint(spec.a, spec.b);
  auto center = line_intersection(mid, add(mid, perp(base)), spec.a, add(spec.a, perp(s_dir)));
  if (!center) throw std::logic_error("arc center construction degenerate");
  Circle arc{*center, dist2(*center, spec.a)};
  if (!on_circle(arc, spec.b)) throw std::logic_error("arc misses the far wall endpoint");

  // Reduced directions with matched magnitudes: the sweep speed along the
  // arc stays comparable to the along-fraction, which the farey cap assumes.
  Point d0 = reduce_direction(s_dir);
  Point d1 = reduce_direction(base);
  {
    auto bits = [](const Point& p) {
      return std::max(mpz_sizeinbase(p.x.num().get_mpz_t(), 2),
                      mpz_sizeinbase(p.y.num().get_mpz_t(), 2));
    };
    size_t b0 = bits(d0), b1 = bits(d1);
    if (b0 < b1) {
      mpz_class f = mpz_class(1) << (b1 - b0);
      d0 = Point{d0.x * Rational(f, mpz_class(1)), d0.y * Rational(f, mpz_class(1))};
    } else if (b1 < b0) {
      mpz_class f = mpz_class(1) << (b0 - b1);
      d1 = Point{d1.x * Rational(f, mpz_class(1)), d1.y * Rational(f, mpz_class(1))};
    }
  }
  const Point anchor = spec.a;
  auto point_at = [arc, anchor, d0, d1](const Rational& t) {
    Point dir{d0.x + t * (d1.x - d0.x), d0.y + t * (d1.y - d0.y)};
    return secant_dir(arc, anchor, dir);
  };

  // Bracket the feasible window with one search in each half of the
  // along-interval; the secant sweep is monotone in `along`, so "below" is
  // decidable from the along-position alone.
  const Rational mid_along = (spec.window_lo + spec.window_hi) / Rational(2);
  auto inside_left = [&](const Rational& t) {
    Point p = point_at(t);
    return spec.inside(p) && spec.along(p) < mid_along;
  };
  auto below_left = [&](const Rational& t) {
    Point p = point_at(t);
    if (spec.along(p) <= spec.window_lo) return true;
    return !spec.inside(p) && spec.along(p) < mid_along;
  };
  auto inside_right = [&](const Rational& t) {
    Point p = point_at(t);
    return spec.inside(p) && spec.along(p) > mid_along;
  };
  auto below_right = [&](const Rational& t) { return spec.along(point_at(t)) <= mid_along; };
  mpz_class cap = farey_step_cap((spec.window_hi - spec.window_lo) / (Rational(8) * spec.along_span));
  Rational t_lo = farey_search(inside_left, below_left, cap);
  Rational t_hi = farey_search(inside_right, below_right, cap);
  if (t_hi < t_lo) std::swap(t_lo, t_hi);
  Rational tm = (t_lo + t_hi) / Rational(2);
  Rational ta = simplest_between(t_lo, tm);
  Rational tb = simplest_between(tm, t_hi);

  long M = spec.count + 16;
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<std::pair<long, Point>> picked;
    for (long k = 1; k <= M && static_cast<long>(picked.size()) < spec.count; ++k) {
      Rational t = ta + Rational(k, M + 1) * (tb - ta);
      Point cand = point_at(t);
      if (!spec.inside(cand)) continue;
      if (b.check_candidates() && b.collinear_with_specials(cand)) continue;
      picked.emplace_back(k, cand);
    }
    if (static_cast<long>(picked.size()) < spec.count) {
      M *= 4;
      continue;
    }
    ArcChainResult out{arc, {}};
    const long MM = M;
    for (auto& [slot, p] : picked) {
      int id = b.add(p);
      out.ids.push_back(id);
      b.movable.emplace(id, Regen{[point_at, ta, tb, MM](long s) {
                                    Rational t = ta + Rational(s, MM + 1) * (tb - ta);
                                    return point_at(t);
                                  },
                                  spec.inside, slot, MM});
    }
    return out;
  }
  throw std::logic_error("arc chain candidates exhausted");
}

void build_tunnels(Builder& b) {
  b.egs.resize(static_cast<size_t>(b.m));
  for (int e = 0; e < b.m; ++e) {
    auto [a, c] = b.graph.edges[static_cast<size_t>(e)];
    int west = b.polygon[static_cast<size_t>(a)].x < b.polygon[static_cast<size_t>(c)].x ? a : c;
    int east = west == a ? c : a;
    EdgeGadget& eg = b.egs[static_cast<size_t>(e)];
    eg.gv = west;
    eg.gw = east;
    eg.pv = make_tunnel_port(b, west, east, +1);
    eg.qv = make_tunnel_port(b, west, east, -1);
    eg.pw = make_tunnel_port(b, east, west, +1);
    eg.qw = make_tunnel_port(b, east, west, -1);
  }
}

// Wall crossing bookkeeping: exact intersection points of wall segments of
// different tunnels, before perturbation.
struct WallCross {
  int e, f;          // tunnel pair, e < f
  int we, wf;        // wall selector: 0 = upper (p), 1 = lower (q)
  Point x;           // exact crossing
  int id = -1;       // point id after perturbation
};

std::pair<int, int> wall_ports(const EdgeGadget& eg, int wall) {
  return wall == 0 ? std::make_pair(eg.pv, eg.pw) : std::make_pair(eg.qv, eg.qw);
}

std::vector<WallCross> wall_crossings(const Builder& b) {
  std::vector<WallCross> out;
  for (int e = 0; e < b.m; ++e)
    for (int f = e + 1; f < b.m; ++f)
      for (int we = 0; we < 2; ++we)
        for (int wf = 0; wf < 2; ++wf) {
          auto [ea, eb] = wall_ports(b.egs[static_cast<size_t>(e)], we);
          auto [fa, fb] = wall_ports(b.egs[static_cast<size_t>(f)], wf);
          if (!segments_properly_cross(b.at(ea), b.at(eb), b.at(fa), b.at(fb))) continue;
          Point x = *line_intersection(b.at(ea), b.at(eb), b.at(fa), b.at(fb));
          out.push_back(WallCross{e, f, we, wf, x, -1});
        }
  return out;
}

void build_edge_centers(Builder& b, const std::vector<WallCross>& crossings) {
  for (int e = 0; e < b.m; ++e) {
    EdgeGadget& eg = b.egs[static_cast<size_t>(e)];
    const Point pv_c = b.polygon[static_cast<size_t>(eg.gv)];
    const Point pw_c = b.polygon[static_cast<size_t>(eg.gw)];
    const Rational rv2 = sq(b.params.r_v);
    const Rational center_param = b.drawing.center_param[static_cast<size_t>(e)];
    const Point c_e = add(pv_c, scale(center_param, sub(pw_c, pv_c)));

    for (int wall = 0; wall < 2; ++wall) {
      auto [ia, ib] = wall_ports(eg, wall);
      const Point A = b.at(ia);
      const Point B = b.at(ib);
      const Point base = sub(B, A);
      const Rational span = vdot(base, base);
      auto along = [A, base](const Point& p) { return vdot(sub(p, A), base); };

      // Opposite wall reference for the interior side.
      auto [oa, ob] = wall_ports(eg, 1 - wall);
      const Point OA = b.at(oa);
      const Point OB = b.at(ob);
      const int interior = orientation_sign(A, B, OA);

      // Flanking cuts from this tunnel's wall crossings around c_e.
      Rational s_c = along(c_e);
      Rational lo_bound(0), hi_bound = span;
      for (const WallCross& wc : crossings) {
        bool mine = (wc.e == e && wc.we == wall) || (wc.f == e && wc.wf == wall);
        if (!mine) continue;
        Rational s = along(wc.x);
        if (s < s_c && s > lo_bound) lo_bound = s;
        if (s > s_c && s < hi_bound) hi_bound = s;
      }
      const Rational lo_cut = lo_bound + (s_c - lo_bound) / Rational(4);
      const Rational hi_cut = hi_bound - (hi_bound - s_c) / Rational(4);
      if (!(lo_cut < hi_cut)) throw std::logic_error("tunnel too crowded");

      auto inside = [A, B, OA, OB, interior, lo_cut, hi_cut, pv_c, pw_c, rv2,
                     along](const Point& p) {
        if (orientation_sign(A, B, p) != interior) return false;
        if (orientation_sign(OA, OB, p) != orientation_sign(OA, OB, A)) return false;
        Rational s = along(p);
        if (!(lo_cut < s && s < hi_cut)) return false;
        if (dist2(p, pv_c) <= rv2 || dist2(p, pw_c) <= rv2) return false;
        return true;
      };

      ArcChainSpec spec{A,
                        B,
                        pw_c,
                        interior,
                        inside,
                        along,
                        span,
                        lo_cut,
                        hi_cut,
                        b.params.d};
      ArcChainResult chain = make_arc_chain(b, spec);
      if (wall == 0) {
        eg.arc_upper = chain.arc;
        eg.dc.upper = chain.ids;
      } else {
        eg.arc_lower = chain.arc;
        eg.dc.lower = chain.ids;
      }
    }
    eg.dc.n = static_cast<int>(b.params.d);
    eg.dc.sep_a = pv_c;
    eg.dc.sep_b = pw_c;
    // The upper chain must be left of sep_a -> sep_b; swap walls if needed.
    if (orientation_sign(pv_c, pw_c, b.at(eg.dc.upper.front())) < 0) {
      std::swap(eg.dc.upper, eg.dc.lower);
      std::swap(eg.arc_upper, eg.arc_lower);
      std::swap(eg.pv, eg.qv);
      std::swap(eg.pw, eg.qw);
    }
  }
}

void build_crossings(Builder& b, std::vector<WallCross>& crossings) {
  // Group the wall crossings per tunnel pair; each pair has exactly four.
  std::map<std::pair<int, int>, std::vector<int>> groups;
  for (size_t i = 0; i < crossings.size(); ++i)
    groups[{crossings[i].e, crossings[i].f}].push_back(static_cast<int>(i));

  for (auto& [pair_key, group] : groups) {
    if (group.size() != 4) throw std::logic_error("tunnel pair with partial wall crossings");
    Point centroid{Rational(0), Rational(0)};
    for (int gi : group) centroid = add(centroid, crossings[static_cast<size_t>(gi)].x);
    centroid = scale(Rational(1, 4), centroid);

    // Wedge lines of the two involved edge centers.
    std::vector<std::array<Point, 2>> wedge_lines;
    for (int eid : {pair_key.first, pair_key.second}) {
      const DoubleChain& dc = b.egs[static_cast<size_t>(eid)].dc;
      auto up = [&](int i) { return b.at(dc.upper[static_cast<size_t>(i)]); };
      auto lo = [&](int i) { return b.at(dc.lower[static_cast<size_t>(i)]); };
      int dd = dc.n;
      wedge_lines.push_back({up(0), up(1)});
      wedge_lines.push_back({up(dd - 2), up(dd - 1)});
      wedge_lines.push_back({lo(0), lo(1)});
      wedge_lines.push_back({lo(dd - 2), lo(dd - 1)});
    }

    // Wall neighbourhood of each crossing: nearest other crossing or port
    // along each of its two walls, for order preservation.
    auto wall_gap = [&](const WallCross& wc, bool first_tunnel) {
      int eid = first_tunnel ? wc.e : wc.f;
      int wall = first_tunnel ? wc.we : wc.wf;
      auto [ia, ib] = wall_ports(b.egs[static_cast<size_t>(eid)], wall);
      Point A = b.at(ia), B = b.at(ib);
      Point base = sub(B, A);
      Rational s = vdot(sub(wc.x, A), base);
      Rational lo(0), hi = vdot(base, base);
      for (const WallCross& other : crossings) {
        if (&other == &wc) continue;
        bool same_wall = (other.e == eid && other.we == wall) || (other.f == eid && other.wf == wall);
        if (!same_wall) continue;
        Rational so = vdot(sub(other.x, A), base);
        if (so < s && so > lo) lo = so;
        if (so > s && so < hi) hi = so;
      }
      return std::make_tuple(A, base, s, lo, hi);
    };

    for (int k = 3;; ++k) {
      if (k > 200) throw std::logic_error("crossing perturbation failed");
      bool all_ok = true;
      std::vector<Point> perturbed;
      for (int gi : group) {
        const WallCross& wc = crossings[static_cast<size_t>(gi)];
        Point dir = sub(centroid, wc.x);
        Point cand = add(wc.x, scale(Rational(1, 1L << k), dir));
        // Strictly inside both tunnels.
        for (auto [eid, wall] : {std::pair<int, int>{wc.e, wc.we}, {wc.f, wc.wf}}) {
          auto [ia, ib] = wall_ports(b.egs[static_cast<size_t>(eid)], wall);
          auto [oa, ob] = wall_ports(b.egs[static_cast<size_t>(eid)], 1 - wall);
          int want = orientation_sign(b.at(ia), b.at(ib), b.at(oa));
          if (orientation_sign(b.at(ia), b.at(ib), cand) != want) all_ok = false;
          if (orientation_sign(b.at(oa), b.at(ob), cand) !=
              orientation_sign(b.at(oa), b.at(ob), b.at(ia)))
            all_ok = false;
        }
        // Same side of every wedge line as the original crossing.
        for (const auto& wl : wedge_lines) {
          int was = orientation_sign(wl[0], wl[1], wc.x);
          if (was == 0 || orientation_sign(wl[0], wl[1], cand) != was) all_ok = false;
        }
        // Order along both walls preserved with margin, and the radial
        // order around the wire centers kept via the midpoint lines.
        for (bool first : {true, false}) {
          auto [A, base, s, lo, hi] = wall_gap(wc, first);
          Rational sc = vdot(sub(cand, A), base);
          Rational margin_lo = lo + (s - lo) / Rational(4);
          Rational margin_hi = hi - (hi - s) / Rational(4);
          if (!(margin_lo < sc && sc < margin_hi)) all_ok = false;

          int eid = first ? wc.e : wc.f;
          const EdgeGadget& eg2 = b.egs[static_cast<size_t>(eid)];
          for (int center : {eg2.gv, eg2.gw}) {
            const Point& cp = b.polygon[static_cast<size_t>(center)];
            for (const Rational& nb_s : {lo, hi}) {
              Point nb = add(A, scale(nb_s / vdot(base, base), base));
              Point mid2 = midpoint(wc.x, nb);
              int was = orientation_sign(cp, mid2, wc.x);
              if (was == 0 || orientation_sign(cp, mid2, cand) != was) all_ok = false;
            }
          }
        }
        if (b.check_candidates() && b.collinear_with_specials(cand)) all_ok = false;
        if (!all_ok) break;
        perturbed.push_back(cand);
      }
      if (!all_ok) continue;
      for (size_t t = 0; t < group.size(); ++t) {
        const WallCross& wc = crossings[static_cast<size_t>(group[t])];
        Point x = wc.x;
        Point g = centroid;
        int id = b.add(perturbed[t]);
        crossings[static_cast<size_t>(group[t])].id = id;
        b.movable.emplace(id, Regen{[x, g](long s) {
                                      return add(x, scale(Rational(1, 1L << (s + 3)), sub(g, x)));
                                    },
                                    [](const Point&) { return true; }, k - 3, 60});
      }
      break;
    }

    // Record the quadrilateral on both gadgets, corners in ccw order.
    std::array<int, 4> quad{};
    for (size_t t = 0; t < 4; ++t) quad[t] = crossings[static_cast<size_t>(group[t])].id;
    Point g2 = centroid;
    auto ccw_less = [&](int lhs, int rhs) {
      Point da = sub(b.at(lhs), g2);
      Point db = sub(b.at(rhs), g2);
      auto half = [](const Point& d) {
        int sy = d.y.sign();
        if (sy != 0) return sy > 0 ? 0 : 1;
        return d.x.sign() > 0 ? 0 : 1;
      };
      int ha = half(da), hb = half(db);
      if (ha != hb) return ha < hb;
      return vcross(da, db).sign() > 0;
    };
    std::sort(quad.begin(), quad.end(), ccw_less);
    b.egs[static_cast<size_t>(pair_key.first)].crossing_quads.push_back(quad);
    b.egs[static_cast<size_t>(pair_key.second)].crossing_quads.push_back(quad);
  }
}

// Angle of (p - v) around v measured ccw from the outward direction v-hat
// (the polygon vertices sit on the unit circle, so v itself is the outward
// unit vector). Comparator for sorting circle points.
struct AroundVertexLess {
  const Point v;  // center == outward direction
  bool operator()(const Point& a, const Point& b) const {
    Point da{a.x - v.x, a.y - v.y};
    Point db{b.x - v.x, b.y - v.y};
    auto half = [&](const Point& d) {
      int s = vcross(v, d).sign();
      if (s != 0) return s > 0 ? 0 : 1;
      return vdot(v, d).sign() > 0 ? 0 : 1;
    };
    int ha = half(da), hb = half(db);
    if (ha != hb) return ha < hb;
    return vcross(da, db).sign() > 0;
  }
};

void build_wiring(Builder& b) {
  b.vgs.resize(static_cast<size_t>(b.n));
  const Rational rv = b.params.r_v;
  for (int v = 0; v < b.n; ++v) {
    VertexGadget& vg = b.vgs[static_cast<size_t>(v)];
    vg.center = v;  // polygon vertices were added first, ids 0..n-1
    const Point vc = b.polygon[static_cast<size_t>(v)];
    vg.circle = Circle{vc, sq(rv)};

    for (int e = 0; e < b.m; ++e) {
      const EdgeGadget& eg = b.egs[static_cast<size_t>(e)];
      if (eg.gv == v) {
        vg.ports.push_back(eg.pv);
        vg.ports.push_back(eg.qv);
      } else if (eg.gw == v) {
        vg.ports.push_back(eg.pw);
        vg.ports.push_back(eg.qw);
      }
    }
    AroundVertexLess less{vc};
    std::sort(vg.ports.begin(), vg.ports.end(),
              [&](int x, int y) { return less(b.at(x), b.at(y)); });
    for (int p : vg.ports)
      if (vdot(sub(b.at(p), vc), vc).sign() >= 0)
        throw std::logic_error("tunnel port on the wrong side of n_ov");

    const Point n_a = add(vc, scale(rv, perp(vc)));   // +90 degrees from v-hat
    const Point n_b = sub(vc, scale(rv, perp(vc)));   // 270 degrees
    const Point first_port = b.at(vg.ports.front());
    const Point last_port = b.at(vg.ports.back());

    // Secants from an n_ov endpoint sweep the arc toward its port; kappa
    // caps the sweep so both chains hug the n_ov endpoints. The chains must
    // be tight enough that every l-r chord separates the center from the
    // rest of the construction; the depth test below decides exactly.
    auto chain_chart = [&](const Point& anchor, const Point& target) {
      Point chord = reduce_direction(sub(target, anchor));
      Point tangent = perp(sub(anchor, vc));
      if (vdot(tangent, chord).sign() < 0) tangent = scale(Rational(-1), tangent);
      tangent = reduce_direction(tangent);
      const Circle circle = vg.circle;
      const Point anch = anchor;
      const Point t0 = tangent, t1 = chord;
      return std::function<Point(const Rational&)>(
          [circle, anch, t0, t1](const Rational& t) {
            Point dir{t0.x + t * (t1.x - t0.x), t0.y + t * (t1.y - t0.y)};
            return secant_dir(circle, anch, dir);
          });
    };
    auto chart_l = chain_chart(n_a, first_port);
    auto chart_r = chain_chart(n_b, last_port);

    // Conservative exact separation bound: with arc depth at most h below
    // the n_ov line and perp spread at least r_v/2, a point at axis offset
    // U < 0 and perp offset P is o-side of every chain chord whenever
    // U + h + (|P| + r_v) * 2h / r_v < 0, i.e. h < -U r_v / (3 r_v + 2P).
    // One pass computes the binding h over every separation target; other
    // vertices are fattened by r_v to cover their whole gadget disks.
    std::optional<Rational> h_allowed;
    {
      auto fold = [&](const Point& q, bool fatten) {
        Rational u = vdot(sub(q, vc), vc);
        Rational p = abs(vcross(vc, sub(q, vc)));
        if (fatten) {
          u += rv;
          p += rv;
        }
        if (u.sign() >= 0) throw std::logic_error("separation target outward of n_ov");
        Rational bound = -u * rv / (Rational(3) * rv + Rational(2) * p);
        if (!h_allowed || bound < *h_allowed) h_allowed = bound;
      };
      for (int ov = 0; ov < b.n; ++ov)
        if (ov != v) fold(b.polygon[static_cast<size_t>(ov)], true);
      for (int q = 0; q < static_cast<int>(b.pts.size()); ++q)
        if (q != v) fold(b.at(q), false);
    }

    bool built = false;
    for (int kexp = 4; kexp <= 160 && !built; kexp += 8) {
      Rational kappa(mpz_class(1), mpz_class(1) << kexp);
      Rational depth = max(abs(vdot(sub(chart_l(kappa), vc), vc)),
                           abs(vdot(sub(chart_r(kappa), vc), vc)));
      if (!(depth < *h_allowed)) continue;

      auto collect = [&](const std::function<Point(const Rational&)>& chart,
                         std::vector<std::pair<long, Point>>& out, long& M_used) {
        long M = b.params.w + 16;
        for (int attempt = 0; attempt < 8; ++attempt) {
          out.clear();
          for (long k = 1; k <= M && static_cast<long>(out.size()) < b.params.w; ++k) {
            Point cand = chart(kappa * Rational(k, M + 1));
            if (b.check_candidates() && b.collinear_with_specials(cand)) continue;
            out.emplace_back(k, cand);
          }
          if (static_cast<long>(out.size()) == b.params.w) {
            M_used = M;
            return true;
          }
          M *= 4;
        }
        return false;
      };
      std::vector<std::pair<long, Point>> cl, cr;
      long ml = 0, mr = 0;
      if (!collect(chart_l, cl, ml) || !collect(chart_r, cr, mr)) continue;

      auto commit = [&](const std::function<Point(const Rational&)>& chart,
                        std::vector<std::pair<long, Point>>& picked, long M_used,
                        std::vector<int>& ids) {
        const Rational kap = kappa;
        for (auto& [slot, p] : picked) {
          int id = b.add(p);
          ids.push_back(id);
          b.movable.emplace(id, Regen{[chart, kap, M_used](long s) {
                                        return chart(kap * Rational(s, M_used + 1));
                                      },
                                      [](const Point&) { return true; }, slot, M_used});
        }
      };
      commit(chart_l, cl, ml, vg.chain_l);
      commit(chart_r, cr, mr, vg.chain_r);
      built = true;
    }
    if (!built) throw std::logic_error("wiring chains cannot be tightened enough");

    // Ring in ccw order: l_1..l_w, ports, r_w..r_1.
    vg.ring = vg.chain_l;
    vg.ring.insert(vg.ring.end(), vg.ports.begin(), vg.ports.end());
    vg.ring.insert(vg.ring.end(), vg.chain_r.rbegin(), vg.chain_r.rend());

    for (long i = 0; i + 1 < 2 * b.params.w; ++i) {
      int ci = i % 2 == 0 ? vg.chain_l[static_cast<size_t>(i / 2)]
                          : vg.chain_r[static_cast<size_t>(i / 2)];
      int cn = (i + 1) % 2 == 0 ? vg.chain_l[static_cast<size_t>((i + 1) / 2)]
                                : vg.chain_r[static_cast<size_t>((i + 1) / 2)];
      vg.zigzag.emplace_back(ci, cn);
    }
  }
}

std::vector<int> wall_polyline(const Builder& b, const std::vector<WallCross>& crossings, int e,
                               int wall) {
  const EdgeGadget& eg = b.egs[static_cast<size_t>(e)];
  auto [ia, ib] = wall_ports(eg, wall);
  const Point A = b.at(ia);
  const Point base = sub(b.at(ib), A);
  std::vector<std::pair<Rational, int>> mids;
  const std::vector<int>& chain = wall == 0 ? eg.dc.upper : eg.dc.lower;
  for (int id : chain) mids.emplace_back(vdot(sub(b.at(id), A), base), id);
  for (const WallCross& wc : crossings) {
    bool mine = (wc.e == e && wc.we == wall) || (wc.f == e && wc.wf == wall);
    if (!mine) continue;
    mids.emplace_back(vdot(sub(b.at(wc.id), A), base), wc.id);
  }
  std::sort(mids.begin(), mids.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<int> out{ia};
  for (auto& [s, id] : mids) out.push_back(id);
  out.push_back(ib);
  return out;
}

}  // namespace

ReductionInstance assemble(const CubicGraph& g, const AssembleOptions& opts) {
  g.validate();
  if (!g.is_connected()) throw std::invalid_argument("reduction requires a connected graph");

  Progress progress;
  Builder b{g, opts, g.vertex_count, g.edge_count(), {}, {}, {}, {}, {}, {}, {}, {}};
  b.polygon = embed_polygon(b.n);
  progress("polygon");
  for (int i = 0; i < b.n; ++i) {
    b.add(b.polygon[static_cast<size_t>(i)]);
    b.specials.push_back(i);
  }
  b.drawing = analyze_drawing(g, b.polygon);
  auto [delta, rv] = compute_clearances(b.polygon);
  b.params.delta = delta;
  b.params.r_v = rv;
  b.params.x_prime = b.drawing.x_prime;
  b.params.x = b.drawing.x;

  build_tunnels(b);
  progress("tunnels");

  // c: interior edges of the deterministically completed port pocket,
  // measured from the realized gadget (ports + the two chain ends, a convex
  // circular polygon, contributes #vertices - 3 chords).
  long c = 0;
  for (int v = 0; v < b.n; ++v) {
    long ports = 2 * static_cast<long>(g.incident_edges(v).size());
    c = std::max(c, ports + 2 - 3);
  }
  b.params.c = c;
  b.params.tau = c * b.n;
  if (opts.d_override > 0 || opts.w_override > 0) {
    b.params.d = opts.d_override > 0 ? opts.d_override : 3;
    b.params.w = opts.w_override > 0 ? opts.w_override : 2;
    b.params.overridden = true;
  } else {
    auto [d, w] = solve_parameters(b.n, b.m, b.params.x, b.params.tau);
    b.params.d = d;
    b.params.w = w;
    if (!b.params.inequalities_hold(b.n, b.m))
      throw std::logic_error("parameter inequalities failed after solving");
  }

  std::vector<WallCross> crossings = wall_crossings(b);
  build_edge_centers(b, crossings);
  progress("edge centers");
  build_crossings(b, crossings);
  progress("crossings");
  build_wiring(b);
  progress("wiring (" + std::to_string(b.pts.size()) + " points)");

  // Full collinearity scan with deterministic candidate repair.
  if (opts.collinearity_scan &&
      static_cast<long>(b.pts.size()) <= config::kInstanceFullScanLimit) {
    for (int round = 0; round < 64; ++round) {
      auto triple = collinear_scan(b.pts);
      if (!triple) break;
      int moved = -1;
      for (int k = 2; k >= 0 && moved < 0; --k) {
        int id = (*triple)[static_cast<size_t>(k)];
        auto it = b.movable.find(id);
        if (it == b.movable.end()) continue;
        Regen& re = it->second;
        while (re.slot < re.max_slot) {
          ++re.slot;
          Point cand = re.make(re.slot);
          if (!re.acceptable(cand)) continue;
          b.pts[static_cast<size_t>(id)] = cand;
          moved = id;
          break;
        }
      }
      if (moved < 0) throw std::logic_error("collinear triple with no movable point");
      if (round == 63) throw std::logic_error("collinearity repair did not converge");
    }
    progress("collinearity scan");
  }

  ReductionInstance inst;
  inst.graph = g;
  inst.params = b.params;
  inst.points = std::make_shared<PointSet>(b.pts, GpCheck::kSkip);
  inst.vertex_gadgets = b.vgs;
  inst.edge_gadgets = b.egs;
  for (auto& eg : inst.edge_gadgets) {
    eg.dc.point_set = inst.points;
    eg.wall_upper = wall_polyline(b, crossings, static_cast<int>(&eg - inst.edge_gadgets.data()), 0);
    eg.wall_lower = wall_polyline(b, crossings, static_cast<int>(&eg - inst.edge_gadgets.data()), 1);
  }
  if (opts.points_only) return inst;

  // Mandated edges shared by T1 and T2.
  std::set<Edge> common;
  for (const VertexGadget& vg : inst.vertex_gadgets) {
    for (size_t i = 0; i + 1 < vg.ring.size(); ++i) common.insert(Edge(vg.ring[i], vg.ring[i + 1]));
    common.insert(Edge(vg.ring.back(), vg.ring.front()));
    for (const Edge& z : vg.zigzag) common.insert(z);
    common.insert(Edge(vg.center, vg.chain_l.front()));
    common.insert(Edge(vg.center, vg.chain_r.front()));
  }
  for (const EdgeGadget& eg : inst.edge_gadgets) {
    for (const auto* wall : {&eg.wall_upper, &eg.wall_lower})
      for (size_t i = 0; i + 1 < wall->size(); ++i) common.insert(Edge((*wall)[i], (*wall)[i + 1]));
    common.insert(Edge(eg.dc.upper.front(), eg.dc.lower.front()));
    common.insert(Edge(eg.dc.upper.back(), eg.dc.lower.back()));
    for (const auto& q : eg.crossing_quads)
      common.insert(std::min(Edge(q[0], q[2]), Edge(q[1], q[3])));
  }

  auto with_fans = [&](bool source) {
    std::set<Edge> out = common;
    for (const EdgeGadget& eg : inst.edge_gadgets) {
      const auto& up = eg.dc.upper;
      const auto& lo = eg.dc.lower;
      int dd = eg.dc.n;
      int hub_u = source ? up.front() : up.back();
      int hub_l = source ? lo.back() : lo.front();
      for (int j = 0; j < dd; ++j) out.insert(Edge(hub_u, lo[static_cast<size_t>(j)]));
      for (int i = 0; i < dd; ++i) out.insert(Edge(hub_l, up[static_cast<size_t>(i)]));
    }
    return out;
  };
  std::set<Edge> t1_set = with_fans(true);
  std::set<Edge> t2_set = with_fans(false);

  std::vector<Edge> t1_partial(t1_set.begin(), t1_set.end());
  progress("mandated edges (" + std::to_string(t1_partial.size()) + ")");
  std::vector<Edge> added =
      complete_plane_graph(inst.points->points(), t1_partial, inst.points->hull());
  progress("completion (" + std::to_string(added.size()) + " added)");
  inst.t1_edges = t1_partial;
  inst.t1_edges.insert(inst.t1_edges.end(), added.begin(), added.end());
  inst.t2_edges.assign(t2_set.begin(), t2_set.end());
  inst.t2_edges.insert(inst.t2_edges.end(), added.begin(), added.end());
  std::sort(inst.t1_edges.begin(), inst.t1_edges.end());
  std::sort(inst.t2_edges.begin(), inst.t2_edges.end());

  const long expect = 3L * inst.points->size() - inst.points->hull_size() - 3;
  if (static_cast<long>(inst.t1_edges.size()) != expect ||
      static_cast<long>(inst.t2_edges.size()) != expect)
    throw std::logic_error("assembled triangulations have wrong edge counts");
  return inst;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

void check(std::vector<CheckResult>& out, const std::string& name, bool pass,
           const std::string& detail = std::string()) {
  out.push_back(CheckResult{name, pass, detail});
}

}  // namespace

std::vector<CheckResult> validate_instance(const ReductionInstance& inst, ValidateLevel level) {
  std::vector<CheckResult> out;
  const PointSet& ps = *inst.points;
  const int n = inst.graph.vertex_count;
  const int m = inst.graph.edge_count();
  const LayoutParams& par = inst.params;

  check(out, "parameter-inequalities",
        par.overridden || par.inequalities_hold(n, m),
        par.overridden ? "skipped: parameters overridden for testing" : "");
  check(out, "x-prime-bound", par.x_prime <= m - 5);

  // Polygon vertices: exactly on the unit circle, denominators within the
  // O(n^10) scale (numerator and denominator of t = i/n^5 squared).
  {
    bool on = true, denom_ok = true;
    mpz_class cap = 1;
    for (int i = 0; i < 10; ++i) cap *= n;
    cap = 2 * cap + 2;  // q^2 + p^2 <= 2 n^10
    for (int v = 0; v < n; ++v) {
      const Point& p = ps[v];
      if (!(p.x * p.x + p.y * p.y == Rational(1))) on = false;
      if (p.x.den() > cap || p.y.den() > cap) denom_ok = false;
    }
    check(out, "polygon-on-unit-circle", on);
    check(out, "polygon-denominator-cap", denom_ok);
  }

  // No three polygon diagonals concurrent.
  {
    bool ok = true;
    std::vector<std::pair<Point, std::array<int, 4>>> xs;
    for (int a = 0; a < n && ok; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = a + 1; c < n; ++c)
          for (int e = c + 1; e < n; ++e) {
            if (c == b || e == b) continue;
            if (!segments_properly_cross(ps[a], ps[b], ps[c], ps[e])) continue;
            Point x = *line_intersection(ps[a], ps[b], ps[c], ps[e]);
            for (auto& [prev, mem] : xs)
              if (prev == x) ok = false;
            xs.push_back({x, {a, b, c, e}});
          }
    check(out, "no-three-diagonals-concurrent", ok);
  }

  // Circle separation and hull avoidance.
  {
    bool sep = true, hullok = true;
    Rational rv2 = sq(par.r_v);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (dist2(ps[a], ps[b]) < Rational(36) * rv2) sep = false;
        for (int c = 0; c < n; ++c) {
          if (c == a || c == b) continue;
          if (dist2_point_segment(ps[c], ps[a], ps[b]) <= Rational(4) * rv2) hullok = false;
        }
      }
    check(out, "circle-separation-4rv", sep);
    check(out, "circle-avoids-hull-of-two", hullok);
  }

  // Tunnel geometry per edge gadget.
  {
    bool on_circle_ok = true, convex_ok = true, ports_side_ok = true;
    for (const EdgeGadget& eg : inst.edge_gadgets) {
      const Point& v = ps[eg.gv];
      const Point& w = ps[eg.gw];
      Rational rv2 = sq(par.r_v);
      for (int id : {eg.pv, eg.qv})
        if (!(dist2(ps[id], v) == rv2)) on_circle_ok = false;
      for (int id : {eg.pw, eg.qw})
        if (!(dist2(ps[id], w) == rv2)) on_circle_ok = false;
      // p_v strictly left of v->p_w and quadrilateral p_v v w p_w convex per side.
      if (orientation(v, ps[eg.pw], ps[eg.pv]) != Orientation::kLeft) convex_ok = false;
      if (orientation(w, ps[eg.pv], ps[eg.pw]) != Orientation::kRight) convex_ok = false;
      if (orientation(v, ps[eg.qw], ps[eg.qv]) != Orientation::kRight) convex_ok = false;
      if (orientation(w, ps[eg.qv], ps[eg.qw]) != Orientation::kLeft) convex_ok = false;
    }
    for (const VertexGadget& vg : inst.vertex_gadgets) {
      const Point& v = ps[vg.center];
      for (int p : vg.ports)
        if (vdot(sub(ps[p], v), v).sign() >= 0) ports_side_ok = false;
    }
    check(out, "tunnel-ports-on-circles", on_circle_ok);
    check(out, "tunnel-quadrilaterals-convex", convex_ok);
    check(out, "ports-on-origin-side-of-nov", ports_side_ok);
  }

  // Edge centers: points exactly on their arcs, chains separated by the
  // edge line, double-chain invariants, kernel containment.
  {
    bool arcs_ok = true, sep_ok = true, dc_ok = true, kernel_ok = true, outside_ok = true;
    for (const EdgeGadget& eg : inst.edge_gadgets) {
      for (int id : eg.dc.upper)
        if (!on_circle(eg.arc_upper, ps[id])) arcs_ok = false;
      for (int id : eg.dc.lower)
        if (!on_circle(eg.arc_lower, ps[id])) arcs_ok = false;
      for (int id : eg.dc.upper)
        if (orientation(eg.dc.sep_a, eg.dc.sep_b, ps[id]) != Orientation::kLeft) sep_ok = false;
      for (int id : eg.dc.lower)
        if (orientation(eg.dc.sep_a, eg.dc.sep_b, ps[id]) != Orientation::kRight) sep_ok = false;
      try {
        validate_double_chain(eg.dc);
      } catch (const std::exception&) {
        dc_ok = false;
      }
      RegionFlags fv = classify_point(eg.dc, ps[eg.gv]);
      RegionFlags fw = classify_point(eg.dc, ps[eg.gw]);
      if (!fv.in_kernel || !fw.in_kernel) kernel_ok = false;

      std::set<int> own(eg.dc.upper.begin(), eg.dc.upper.end());
      own.insert(eg.dc.lower.begin(), eg.dc.lower.end());
      own.insert(eg.gv);
      own.insert(eg.gw);
      // The polygon part of the outsideness sweep is gated by the P_D
      // bounding box; the wedge part is a handful of sign tests per point.
      Rational bx0 = ps[eg.dc.upper.front()].x, bx1 = bx0;
      Rational by0 = ps[eg.dc.upper.front()].y, by1 = by0;
      for (const auto* chain : {&eg.dc.upper, &eg.dc.lower})
        for (int id : *chain) {
          bx0 = min(bx0, ps[id].x);
          bx1 = max(bx1, ps[id].x);
          by0 = min(by0, ps[id].y);
          by1 = max(by1, ps[id].y);
        }
      std::vector<Point> poly;
      for (int idx : eg.dc.polygon_indices()) poly.push_back(ps[idx]);
      const int nn = eg.dc.n;
      auto side_pair = [&](const Point& ua, const Point& ub, const Point& la, const Point& lb,
                           const Point& p) {
        int su = orientation_sign(ua, ub, p), su_ref = orientation_sign(ua, ub, la);
        int sl = orientation_sign(la, lb, p), sl_ref = orientation_sign(la, lb, ua);
        bool inner = su * su_ref >= 0 && sl * sl_ref >= 0;
        bool outer = su * su_ref <= 0 && sl * sl_ref <= 0;
        return inner || outer;
      };
      for (int q = 0; q < ps.size(); ++q) {
        if (own.count(q)) continue;
        const Point& p = ps[q];
        bool in_wedge =
            side_pair(eg.dc.up(0), eg.dc.up(1), eg.dc.lo(0), eg.dc.lo(1), p) ||
            side_pair(eg.dc.up(nn - 2), eg.dc.up(nn - 1), eg.dc.lo(nn - 2), eg.dc.lo(nn - 1), p);
        if (in_wedge) {
          outside_ok = false;
          continue;
        }
        if (p.x < bx0 || p.x > bx1 || p.y < by0 || p.y > by1) continue;
        if (point_in_simple_polygon(p, poly)) outside_ok = false;
      }
    }
    check(out, "chain-points-on-arcs", arcs_ok);
    check(out, "chains-separated-by-edge-line", sep_ok);
    check(out, "double-chain-invariants", dc_ok);
    check(out, "edge-endpoints-in-kernel", kernel_ok);
    check(out, "all-other-points-outside-centers", outside_ok);
  }

  // Wirings: points exactly on the circles, the extreme chord separates the
  // center from everything else, zig-zag consistency.
  {
    bool on_ok = true, sep_ok = true, zig_ok = true;
    for (const VertexGadget& vg : inst.vertex_gadgets) {
      for (int id : vg.ring)
        if (!on_circle(vg.circle, ps[id])) on_ok = false;
      int l1 = vg.chain_l.front(), r1 = vg.chain_r.front();
      int vside = orientation_sign(ps[l1], ps[r1], ps[vg.center]);
      if (vside == 0) sep_ok = false;
      for (int q = 0; q < ps.size(); ++q) {
        if (q == vg.center || q == l1 || q == r1) continue;
        if (orientation_sign(ps[l1], ps[r1], ps[q]) == vside) sep_ok = false;
      }
      if (static_cast<long>(vg.zigzag.size()) != 2 * par.w - 1) zig_ok = false;
    }
    check(out, "wiring-points-on-circles", on_ok);
    check(out, "wiring-chord-separates-center", sep_ok);
    check(out, "zigzag-length", zig_ok);
  }

  // Crossing quadrilaterals: convex, inside both tunnels, wall order sane.
  {
    bool quad_ok = true, order_ok = true;
    for (const EdgeGadget& eg : inst.edge_gadgets) {
      for (const auto& q : eg.crossing_quads) {
        for (int i = 0; i < 4; ++i) {
          const Point& a = ps[q[static_cast<size_t>(i)]];
          const Point& b2 = ps[q[static_cast<size_t>((i + 1) % 4)]];
          const Point& c2 = ps[q[static_cast<size_t>((i + 2) % 4)]];
          if (orientation(a, b2, c2) != Orientation::kLeft) quad_ok = false;
        }
      }
      for (const auto* wall : {&eg.wall_upper, &eg.wall_lower}) {
        const Point& A = ps[wall->front()];
        const Point& B = ps[wall->back()];
        Point base = sub(B, A);
        Rational prev(-1);
        for (int id : *wall) {
          Rational s = vdot(sub(ps[id], A), base);
          if (!(prev < s) && id != wall->front()) order_ok = false;
          prev = s;
        }
      }
    }
    check(out, "crossing-quads-convex", quad_ok);
    check(out, "wall-order-monotone", order_ok);
  }

  // Perturbed crossing points keep their order around the wire centers: the
  // exact crossings are collinear on the wall segment, so consecutive turns
  // around any center share one sign, and perturbation must not break that.
  {
    bool radial_ok = true;
    std::set<int> crossing_ids;
    for (const EdgeGadget& eg : inst.edge_gadgets)
      for (const auto& q : eg.crossing_quads) crossing_ids.insert(q.begin(), q.end());
    for (const EdgeGadget& eg : inst.edge_gadgets) {
      for (const auto* wall : {&eg.wall_upper, &eg.wall_lower}) {
        std::vector<int> on_wall;
        for (int id : *wall)
          if (crossing_ids.count(id)) on_wall.push_back(id);
        if (on_wall.size() < 2) continue;
        for (int endpoint : {eg.gv, eg.gw}) {
          const Point& c = ps[endpoint];
          int dir = 0;
          for (size_t i = 0; i + 1 < on_wall.size(); ++i) {
            int s = orientation_sign(c, ps[on_wall[i]], ps[on_wall[i + 1]]);
            if (s == 0) radial_ok = false;
            if (dir == 0) dir = s;
            if (s != dir) radial_ok = false;
          }
        }
      }
    }
    check(out, "crossing-radial-order", radial_ok);
  }

  // Denominator growth cap: polynomial in the graph size.
  {
    mpz_class cap = 1;
    long bits_cap = config::kDenominatorBitCapCoeff * static_cast<long>(n) * n * n;
    bool ok = true;
    size_t max_bits = 0;
    for (int i = 0; i < ps.size(); ++i) {
      max_bits = std::max(max_bits, mpz_sizeinbase(ps[i].x.den().get_mpz_t(), 2));
      max_bits = std::max(max_bits, mpz_sizeinbase(ps[i].y.den().get_mpz_t(), 2));
    }
    if (static_cast<long>(max_bits) > bits_cap) ok = false;
    check(out, "denominator-bit-cap", ok,
          "max denominator bits: " + std::to_string(max_bits));
    (void)cap;
  }

  if (!inst.t1_edges.empty()) {
    const long expect = 3L * ps.size() - ps.hull_size() - 3;
    check(out, "t1-edge-count", static_cast<long>(inst.t1_edges.size()) == expect);
    check(out, "t2-edge-count", static_cast<long>(inst.t2_edges.size()) == expect);

    // T1 and T2 differ only inside edge centers.
    std::set<int> center_points;
    for (const EdgeGadget& eg : inst.edge_gadgets) {
      center_points.insert(eg.dc.upper.begin(), eg.dc.upper.end());
      center_points.insert(eg.dc.lower.begin(), eg.dc.lower.end());
    }
    std::set<Edge> s1(inst.t1_edges.begin(), inst.t1_edges.end());
    std::set<Edge> s2(inst.t2_edges.begin(), inst.t2_edges.end());
    bool confined = true;
    for (const Edge& e : s1)
      if (!s2.count(e) && !(center_points.count(e.a) && center_points.count(e.b)))
        confined = false;
    for (const Edge& e : s2)
      if (!s1.count(e) && !(center_points.count(e.a) && center_points.count(e.b)))
        confined = false;
    check(out, "t1-t2-difference-confined", confined);
  }

  if (level == ValidateLevel::kFull) {
    if (ps.size() <= config::kInstanceFullScanLimit) {
      auto triple = collinear_scan(ps.points());
      check(out, "general-position-scan", !triple,
            triple ? "collinear triple " + std::to_string((*triple)[0]) + "," +
                         std::to_string((*triple)[1]) + "," + std::to_string((*triple)[2])
                   : "");
    } else {
      check(out, "general-position-scan", false,
            "skipped: instance above the full-scan size limit");
    }
  }
  return out;
}

bool all_pass(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

}  // namespace flipdist


