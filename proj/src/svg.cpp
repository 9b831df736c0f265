#include "flipdist/svg.hpp"

#include <set>
#include <sstream>

namespace flipdist {

namespace {

// Fixed 4-decimal rendering of a rational by integer division (truncated
// toward zero). Never reads floating point, so output is reproducible.
std::string decimal4(const Rational& r) {
  mpz_class scaled = r.num() * 10000 / r.den();
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  mpz_class ip = scaled / 10000;
  mpz_class fp = scaled % 10000;
  std::string frac = fp.get_str();
  frac.insert(frac.begin(), 4 - frac.size(), '0');
  return (neg ? "-" : "") + ip.get_str() + "." + frac;
}

struct Projector {
  Rational sx, sy, ox, oy;
  std::string px(const Point& p) const { return decimal4(sx * p.x + ox); }
  std::string py(const Point& p) const { return decimal4(sy * p.y + oy); }
};

void edge_lines(std::ostringstream& out, const PointSet& ps, const Projector& pr,
                const std::vector<Edge>& edges, const std::set<Edge>& skip,
                const char* style) {
  for (const Edge& e : edges) {
    if (skip.count(e)) continue;
    out << "<line x1=\"" << pr.px(ps[e.a]) << "\" y1=\"" << pr.py(ps[e.a]) << "\" x2=\""
        << pr.px(ps[e.b]) << "\" y2=\"" << pr.py(ps[e.b]) << "\" " << style << "/>\n";
  }
}

}  // namespace

std::string render_svg(const PointSet& ps, const std::vector<Edge>* t1,
                       const std::vector<Edge>* t2, const std::vector<Edge>* highlights,
                       const DoubleChain* chain, const SvgOptions& opts) {
  Rational min_x = ps[0].x, max_x = ps[0].x, min_y = ps[0].y, max_y = ps[0].y;
  for (int i = 1; i < ps.size(); ++i) {
    min_x = min(min_x, ps[i].x);
    max_x = max(max_x, ps[i].x);
    min_y = min(min_y, ps[i].y);
    max_y = max(max_y, ps[i].y);
  }
  Rational span_x = max_x - min_x;
  Rational span_y = max_y - min_y;
  if (span_x.is_zero()) span_x = Rational(1);
  if (span_y.is_zero()) span_y = Rational(1);
  const Rational margin(40);
  Rational sx = (Rational(opts.width) - Rational(2) * margin) / span_x;
  Rational sy = (Rational(opts.height) - Rational(2) * margin) / span_y;
  Rational s = min(sx, sy);
  // y axis points down in SVG.
  Projector pr{s, -s, margin - s * min_x, margin + s * max_y};

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\""
      << opts.height << "\" viewBox=\"0 0 " << opts.width << ' ' << opts.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  std::set<Edge> shared;
  if (t1 && t2) {
    std::set<Edge> s1(t1->begin(), t1->end());
    for (const Edge& e : *t2)
      if (s1.count(e)) shared.insert(e);
  }
  if (t1 && t2)
    edge_lines(out, ps, pr, std::vector<Edge>(shared.begin(), shared.end()), {},
               "stroke=\"#888888\" stroke-width=\"1\"");
  if (t1) edge_lines(out, ps, pr, *t1, shared, "stroke=\"black\" stroke-width=\"1.5\"");
  if (t2)
    edge_lines(out, ps, pr, *t2, shared,
               "stroke=\"#cc2222\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"");
  if (highlights)
    edge_lines(out, ps, pr, *highlights, {}, "stroke=\"#2266cc\" stroke-width=\"2.5\"");

  for (int i = 0; i < ps.size(); ++i)
    out << "<circle cx=\"" << pr.px(ps[i]) << "\" cy=\"" << pr.py(ps[i])
        << "\" r=\"2.5\" fill=\"black\"/>\n";

  if (opts.label_triangles && chain && t1) {
    Triangulation t(chain->point_set, *t1);
    LabelSequence seq = label_sequence(*chain, t);
    // Re-derive the stabbed triangles for positioning, in the same order.
    // One text node per label at the triangle centroid.
    std::vector<std::array<int32_t, 3>> tris = t.triangles();
    // label_sequence orders by the crossing position; recompute positions.
    const Point& a = chain->sep_a;
    const Point& b = chain->sep_b;
    std::vector<std::pair<Rational, std::array<int32_t, 3>>> stabbed;
    for (const auto& tri : tris) {
      int pos = 0, neg = 0;
      Rational cx(0), cy(0);
      for (int k = 0; k < 3; ++k) {
        const Point& p = ps[tri[static_cast<size_t>(k)]];
        int sgn = cross(a, b, p).sign();
        if (sgn > 0) ++pos;
        if (sgn < 0) ++neg;
        cx += p.x;
        cy += p.y;
      }
      if (!pos || !neg) continue;
      bool all_chain = true;
      std::set<int> dset(chain->upper.begin(), chain->upper.end());
      dset.insert(chain->lower.begin(), chain->lower.end());
      for (int k = 0; k < 3; ++k)
        if (!dset.count(tri[static_cast<size_t>(k)])) all_chain = false;
      if (!all_chain) continue;
      stabbed.push_back({cx / Rational(3), tri});
    }
    std::sort(stabbed.begin(), stabbed.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (size_t i = 0; i < stabbed.size() && i < seq.labels.size(); ++i) {
      Rational cx(0), cy(0);
      for (int k = 0; k < 3; ++k) {
        const Point& p = ps[stabbed[i].second[static_cast<size_t>(k)]];
        cx += p.x;
        cy += p.y;
      }
      Point centroid{cx / Rational(3), cy / Rational(3)};
      out << "<text x=\"" << pr.px(centroid) << "\" y=\"" << pr.py(centroid)
          << "\" font-size=\"12\" text-anchor=\"middle\">" << seq.labels[i] << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace flipdist
