#include "flipdist/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "flipdist/config.hpp"

namespace flipdist {

namespace {

std::runtime_error line_error(const char* what, long line) {
  return std::runtime_error(std::string(what) + " at line " + std::to_string(line));
}

}  // namespace

PointSetPtr parse_point_set(const std::string& text, GpCheck mode) {
  std::istringstream in(text);
  long n = 0;
  if (!(in >> n)) throw std::runtime_error("point set header malformed");
  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) {
    std::string xs, ys;
    if (!(in >> xs >> ys)) throw line_error("point line malformed", i + 2);
    pts.push_back(Point{Rational::parse(xs), Rational::parse(ys)});
  }
  return std::make_shared<PointSet>(std::move(pts), mode);
}

std::string serialize_point_set(const PointSet& ps) {
  std::ostringstream out;
  out << ps.size() << '\n';
  for (int i = 0; i < ps.size(); ++i) out << ps[i].x.str() << ' ' << ps[i].y.str() << '\n';
  return out.str();
}

std::vector<Edge> parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  long n = 0;
  if (!(in >> n)) throw std::runtime_error("edge list header malformed");
  std::vector<Edge> out;
  out.reserve(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) {
    int a = 0, b = 0;
    if (!(in >> a >> b)) throw line_error("edge line malformed", i + 2);
    out.emplace_back(a, b);
  }
  return out;
}

std::string serialize_edge_list(const std::vector<Edge>& edges) {
  std::ostringstream out;
  out << edges.size() << '\n';
  for (const Edge& e : edges) out << e.a << ' ' << e.b << '\n';
  return out.str();
}

FlipSequence parse_flip_sequence(const std::string& text) {
  std::istringstream in(text);
  FlipSequence seq;
  std::string kw1, kw2;
  int a, b, c, d;
  long line = 1;
  while (in >> kw1) {
    if (!(in >> a >> b >> kw2 >> c >> d) || kw1 != "remove" || kw2 != "insert")
      throw line_error("flip step malformed", line);
    seq.push_back(FlipStep{Edge(a, b), Edge(c, d)});
    ++line;
  }
  return seq;
}

std::string serialize_flip_sequence(const FlipSequence& seq) {
  std::ostringstream out;
  for (const FlipStep& s : seq)
    out << "remove " << s.removed.a << ' ' << s.removed.b << " insert " << s.inserted.a << ' '
        << s.inserted.b << '\n';
  return out.str();
}

std::string serialize_params(const LayoutParams& p) {
  std::ostringstream out;
  out << "x_prime=" << p.x_prime << '\n'
      << "x=" << p.x << '\n'
      << "d=" << p.d << '\n'
      << "w=" << p.w << '\n'
      << "tau=" << p.tau << '\n'
      << "c=" << p.c << '\n'
      << "delta_num=" << p.delta.num().get_str() << '\n'
      << "delta_den=" << p.delta.den().get_str() << '\n'
      << "overridden=" << (p.overridden ? 1 : 0) << '\n';
  return out.str();
}

LayoutParams parse_params(const std::string& text) {
  LayoutParams p;
  std::istringstream in(text);
  std::string line;
  mpz_class delta_num = 0, delta_den = 1;
  while (std::getline(in, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    if (key == "x_prime") p.x_prime = std::stol(val);
    else if (key == "x") p.x = std::stol(val);
    else if (key == "d") p.d = std::stol(val);
    else if (key == "w") p.w = std::stol(val);
    else if (key == "tau") p.tau = std::stol(val);
    else if (key == "c") p.c = std::stol(val);
    else if (key == "delta_num") delta_num = mpz_class(val);
    else if (key == "delta_den") delta_den = mpz_class(val);
    else if (key == "overridden") p.overridden = val == "1";
  }
  p.delta = Rational(delta_num, delta_den);
  p.r_v = p.delta / Rational(6);
  return p;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

namespace {

std::string serialize_gadgets(const ReductionInstance& inst) {
  std::ostringstream out;
  auto list = [&](const std::vector<int>& v) {
    for (size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
    out << '\n';
  };
  out << "vertex_gadgets " << inst.vertex_gadgets.size() << '\n';
  for (const VertexGadget& vg : inst.vertex_gadgets) {
    out << "center " << vg.center << '\n';
    out << "ports ";
    list(vg.ports);
    out << "chain_l ";
    list(vg.chain_l);
    out << "chain_r ";
    list(vg.chain_r);
    out << "ring ";
    list(vg.ring);
  }
  out << "edge_gadgets " << inst.edge_gadgets.size() << '\n';
  for (const EdgeGadget& eg : inst.edge_gadgets) {
    out << "ends " << eg.gv << ' ' << eg.gw << '\n';
    out << "ports " << eg.pv << ' ' << eg.qv << ' ' << eg.pw << ' ' << eg.qw << '\n';
    out << "arc_upper " << eg.arc_upper.center.x.str() << ' ' << eg.arc_upper.center.y.str()
        << ' ' << eg.arc_upper.radius_squared.str() << '\n';
    out << "arc_lower " << eg.arc_lower.center.x.str() << ' ' << eg.arc_lower.center.y.str()
        << ' ' << eg.arc_lower.radius_squared.str() << '\n';
    out << "upper ";
    list(eg.dc.upper);
    out << "lower ";
    list(eg.dc.lower);
    out << "wall_upper ";
    list(eg.wall_upper);
    out << "wall_lower ";
    list(eg.wall_lower);
    out << "quads " << eg.crossing_quads.size() << '\n';
    for (const auto& q : eg.crossing_quads)
      out << q[0] << ' ' << q[1] << ' ' << q[2] << ' ' << q[3] << '\n';
  }
  return out.str();
}

std::vector<int> read_list(std::istringstream& in, const std::string& expect) {
  std::string tag;
  in >> tag;
  if (tag != expect) throw std::runtime_error("gadget file: expected " + expect + ", got " + tag);
  std::string rest;
  std::getline(in, rest);
  std::istringstream ls(rest);
  std::vector<int> out;
  int v;
  while (ls >> v) out.push_back(v);
  return out;
}

Circle read_circle(std::istringstream& in, const std::string& expect) {
  std::string tag, cx, cy, r2;
  in >> tag >> cx >> cy >> r2;
  if (tag != expect) throw std::runtime_error("gadget file: expected " + expect);
  return Circle{Point{Rational::parse(cx), Rational::parse(cy)}, Rational::parse(r2)};
}

void parse_gadgets(const std::string& text, ReductionInstance& inst) {
  std::istringstream in(text);
  std::string tag;
  size_t count = 0;
  in >> tag >> count;
  if (tag != "vertex_gadgets") throw std::runtime_error("gadget file malformed");
  inst.vertex_gadgets.resize(count);
  for (VertexGadget& vg : inst.vertex_gadgets) {
    in >> tag >> vg.center;
    if (tag != "center") throw std::runtime_error("gadget file malformed");
    vg.ports = read_list(in, "ports");
    vg.chain_l = read_list(in, "chain_l");
    vg.chain_r = read_list(in, "chain_r");
    vg.ring = read_list(in, "ring");
    vg.circle = Circle{(*inst.points)[vg.center], inst.params.r_v * inst.params.r_v};
    for (size_t i = 0; i + 1 < 2 * vg.chain_l.size(); ++i) {
      int ci = i % 2 == 0 ? vg.chain_l[i / 2] : vg.chain_r[i / 2];
      int cn = (i + 1) % 2 == 0 ? vg.chain_l[(i + 1) / 2] : vg.chain_r[(i + 1) / 2];
      vg.zigzag.emplace_back(ci, cn);
    }
  }
  in >> tag >> count;
  if (tag != "edge_gadgets") throw std::runtime_error("gadget file malformed");
  inst.edge_gadgets.resize(count);
  for (EdgeGadget& eg : inst.edge_gadgets) {
    in >> tag >> eg.gv >> eg.gw;
    if (tag != "ends") throw std::runtime_error("gadget file malformed");
    in >> tag >> eg.pv >> eg.qv >> eg.pw >> eg.qw;
    if (tag != "ports") throw std::runtime_error("gadget file malformed");
    eg.arc_upper = read_circle(in, "arc_upper");
    eg.arc_lower = read_circle(in, "arc_lower");
    eg.dc.upper = read_list(in, "upper");
    eg.dc.lower = read_list(in, "lower");
    eg.wall_upper = read_list(in, "wall_upper");
    eg.wall_lower = read_list(in, "wall_lower");
    eg.dc.n = static_cast<int>(eg.dc.upper.size());
    eg.dc.point_set = inst.points;
    eg.dc.sep_a = (*inst.points)[eg.gv];
    eg.dc.sep_b = (*inst.points)[eg.gw];
    size_t quads = 0;
    in >> tag >> quads;
    if (tag != "quads") throw std::runtime_error("gadget file malformed");
    for (size_t q = 0; q < quads; ++q) {
      std::array<int, 4> quad{};
      in >> quad[0] >> quad[1] >> quad[2] >> quad[3];
      eg.crossing_quads.push_back(quad);
    }
  }
}

}  // namespace

void save_instance(const ReductionInstance& inst, const std::string& prefix) {
  write_file(prefix + "points.txt", serialize_point_set(*inst.points));
  write_file(prefix + "t1.txt", serialize_edge_list(inst.t1_edges));
  write_file(prefix + "t2.txt", serialize_edge_list(inst.t2_edges));
  write_file(prefix + "params.txt", serialize_params(inst.params));
  write_file(prefix + "graph.txt", inst.graph.serialize());
  write_file(prefix + "gadgets.txt", serialize_gadgets(inst));
}

ReductionInstance load_instance(const std::string& prefix) {
  ReductionInstance inst;
  inst.graph = CubicGraph::parse(read_file(prefix + "graph.txt"));
  inst.params = parse_params(read_file(prefix + "params.txt"));
  inst.points = parse_point_set(read_file(prefix + "points.txt"), GpCheck::kSkip);
  inst.t1_edges = parse_edge_list(read_file(prefix + "t1.txt"));
  inst.t2_edges = parse_edge_list(read_file(prefix + "t2.txt"));
  parse_gadgets(read_file(prefix + "gadgets.txt"), inst);
  return inst;
}

namespace {

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

ReductionInstance assemble_cached(const CubicGraph& g, const AssembleOptions& opts) {
  const char* env = std::getenv(config::kCacheDirEnv);
  std::filesystem::path dir = env ? env : ".flipdist-cache";
  std::ostringstream key;
  key << "v3|" << g.serialize() << '|' << opts.points_only << '|' << opts.d_override << '|'
      << opts.w_override;
  std::string prefix =
      (dir / ("inst_" + std::to_string(fnv1a(key.str())) + "_")).string();
  if (std::filesystem::exists(prefix + "points.txt")) {
    try {
      return load_instance(prefix);
    } catch (const std::exception&) {
      // fall through to a rebuild on any cache corruption
    }
  }
  ReductionInstance inst = assemble(g, opts);
  std::filesystem::create_directories(dir);
  save_instance(inst, prefix);
  return inst;
}

ValidateRunReport run_validate(const std::string& prefix, ValidateLevel level) {
  ValidateRunReport rep;
  ReductionInstance inst = load_instance(prefix);
  rep.checks = validate_instance(inst, level);
  std::ostringstream out;
  for (const CheckResult& c : rep.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << "  (" << c.detail << ')';
    out << '\n';
  }
  rep.ok = all_pass(rep.checks);
  rep.text = out.str();
  return rep;
}

}  // namespace flipdist
