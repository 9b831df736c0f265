// flipdist: triangulation flip-distance toolkit.
//
// Subcommands: gen (double-chain / reduction / random-points), solve
// (distance), verify (sequence), compile (cover-to-flips), extract
// (flips-to-cover), validate, render. Exit codes: 0 success, 1 domain
// error, 2 usage error.

#include <CLI11.hpp>

#include <iostream>
#include <random>

#include "flipdist/double_chain.hpp"
#include "flipdist/flip_search.hpp"
#include "flipdist/io.hpp"
#include "flipdist/svg.hpp"

using namespace flipdist;

namespace {

int run(int argc, char** argv) {
  CLI::App app{"triangulation flip distance toolkit"};
  app.require_subcommand(1);

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate point sets and instances");
  gen->require_subcommand(1);

  auto* gen_dc = gen->add_subcommand("double-chain", "double chain and its fan triangulations");
  int dc_n = 4;
  std::string dc_out, dc_t1, dc_t2;
  gen_dc->add_option("--n", dc_n, "chain length")->required();
  gen_dc->add_option("--out", dc_out, "point set file")->required();
  gen_dc->add_option("--t1", dc_t1, "source fan triangulation file");
  gen_dc->add_option("--t2", dc_t2, "target fan triangulation file");
  gen_dc->callback([&] {
    auto [ps, dc] = build_double_chain(dc_n);
    write_file(dc_out, serialize_point_set(*ps));
    if (!dc_t1.empty() || !dc_t2.empty()) {
      auto [t1, t2] = fan_triangulations(dc);
      if (!dc_t1.empty()) write_file(dc_t1, serialize_edge_list(t1.edges()));
      if (!dc_t2.empty()) write_file(dc_t2, serialize_edge_list(t2.edges()));
    }
  });

  auto* gen_red = gen->add_subcommand("reduction", "APX-hardness reduction instance");
  std::string red_graph, red_prefix;
  bool red_points_only = false;
  bool red_no_cache = false;
  long red_d = 0, red_w = 0;
  gen_red->add_option("--graph", red_graph, "cubic graph file")->required();
  gen_red->add_option("--out-prefix", red_prefix, "output file prefix")->required();
  gen_red->add_flag("--points-only", red_points_only, "skip triangulation synthesis");
  gen_red->add_flag("--no-cache", red_no_cache, "always rebuild");
  gen_red->add_option("--override-d", red_d, "testing: force edge-center half size");
  gen_red->add_option("--override-w", red_w, "testing: force wiring chain length");
  gen_red->callback([&] {
    CubicGraph g = CubicGraph::parse(read_file(red_graph));
    AssembleOptions opts;
    opts.points_only = red_points_only;
    opts.d_override = red_d;
    opts.w_override = red_w;
    ReductionInstance inst = red_no_cache ? assemble(g, opts) : assemble_cached(g, opts);
    save_instance(inst, red_prefix);
    std::cout << "instance: " << inst.points->size() << " points, d=" << inst.params.d
              << " w=" << inst.params.w << " x=" << inst.params.x << " tau=" << inst.params.tau
              << "\n";
  });

  auto* gen_rand = gen->add_subcommand("random-points", "seeded random point set");
  int rp_n = 8;
  unsigned rp_seed = 1;
  std::string rp_out;
  gen_rand->add_option("--n", rp_n, "point count")->required();
  gen_rand->add_option("--seed", rp_seed, "rng seed");
  gen_rand->add_option("--out", rp_out, "point set file")->required();
  gen_rand->callback([&] {
    std::mt19937 rng(rp_seed);
    std::uniform_int_distribution<long> coord(-1000, 1000);
    std::uniform_int_distribution<long> den(1, 7);
    std::vector<Point> pts;
    while (static_cast<int>(pts.size()) < rp_n) {
      Point p{Rational(coord(rng), den(rng)), Rational(coord(rng), den(rng))};
      bool dup = false;
      for (const Point& q : pts)
        if (q == p) dup = true;
      if (dup) continue;
      pts.push_back(p);
      if (static_cast<int>(pts.size()) >= 3 && general_position(pts)) pts.pop_back();
    }
    PointSet ps(pts);
    write_file(rp_out, serialize_point_set(ps));
  });

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "exact search");
  solve->require_subcommand(1);
  auto* solve_dist = solve->add_subcommand("distance", "exact flip distance");
  std::string sd_points, sd_t1, sd_t2, sd_witness;
  long sd_budget = 0;
  solve_dist->add_option("--points", sd_points)->required();
  solve_dist->add_option("--t1", sd_t1)->required();
  solve_dist->add_option("--t2", sd_t2)->required();
  solve_dist->add_option("--budget", sd_budget, "flip budget (mandatory)")->required();
  solve_dist->add_option("--emit-witness", sd_witness, "write the witness sequence here");
  solve_dist->callback([&] {
    PointSetPtr ps = parse_point_set(read_file(sd_points));
    Triangulation t1(ps, parse_edge_list(read_file(sd_t1)));
    Triangulation t2(ps, parse_edge_list(read_file(sd_t2)));
    DistanceResult res = flip_distance(t1, t2, sd_budget);
    if (res.exceeded) {
      std::cout << "exceeded budget " << sd_budget << " (nodes expanded: " << res.nodes_expanded
                << ")\n";
      throw CLI::RuntimeError(1);
    }
    std::cout << "distance " << res.distance << " (nodes expanded: " << res.nodes_expanded
              << ")\n";
    if (!sd_witness.empty()) write_file(sd_witness, serialize_flip_sequence(res.witness));
  });

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "replay checks");
  verify->require_subcommand(1);
  auto* verify_seq = verify->add_subcommand("sequence", "replay a flip sequence");
  std::string vs_points, vs_from, vs_seq, vs_expect;
  verify_seq->add_option("--points", vs_points)->required();
  verify_seq->add_option("--from", vs_from)->required();
  verify_seq->add_option("--sequence", vs_seq)->required();
  verify_seq->add_option("--expect", vs_expect, "required end triangulation");
  verify_seq->callback([&] {
    PointSetPtr ps = parse_point_set(read_file(vs_points));
    Triangulation t(ps, parse_edge_list(read_file(vs_from)));
    FlipSequence seq = parse_flip_sequence(read_file(vs_seq));
    Triangulation cur = t;
    for (const FlipStep& s : seq) {
      auto [next, step] = cur.apply_flip(s.removed);
      if (!(step.inserted == s.inserted)) {
        std::cout << "step mismatch at remove " << s.removed.a << ' ' << s.removed.b << "\n";
        throw CLI::RuntimeError(1);
      }
      cur = std::move(next);
    }
    if (!vs_expect.empty()) {
      std::vector<Edge> want = parse_edge_list(read_file(vs_expect));
      std::sort(want.begin(), want.end());
      if (!(cur.edges() == want)) {
        std::cout << "sequence valid but ends elsewhere\n";
        throw CLI::RuntimeError(1);
      }
    }
    std::cout << "sequence valid (" << seq.size() << " flips)\n";
  });

  // ---- compile / extract ----
  auto* compile = app.add_subcommand("compile", "cover to flip sequence");
  compile->require_subcommand(1);
  auto* c2f = compile->add_subcommand("cover-to-flips", "");
  std::string cf_prefix, cf_cover, cf_out;
  c2f->add_option("--instance", cf_prefix, "instance file prefix")->required();
  c2f->add_option("--cover", cf_cover, "comma-separated vertex list")->required();
  c2f->add_option("--out", cf_out, "sequence output file");
  c2f->callback([&] {
    ReductionInstance inst = load_instance(cf_prefix);
    std::vector<int> cover;
    std::stringstream ss(cf_cover);
    for (std::string item; std::getline(ss, item, ',');) cover.push_back(std::stoi(item));
    FlipSequence seq = cover_to_flips(inst, cover);
    std::cout << "sequence length " << seq.size() << " (bound "
              << inst.delta_bound(static_cast<long>(cover.size())) << ")\n";
    if (!cf_out.empty()) write_file(cf_out, serialize_flip_sequence(seq));
  });

  auto* extract = app.add_subcommand("extract", "flip sequence to cover");
  extract->require_subcommand(1);
  auto* f2c = extract->add_subcommand("flips-to-cover", "");
  std::string fc_prefix, fc_seq;
  f2c->add_option("--instance", fc_prefix, "instance file prefix")->required();
  f2c->add_option("--sequence", fc_seq, "flip sequence file")->required();
  f2c->callback([&] {
    ReductionInstance inst = load_instance(fc_prefix);
    FlipSequence seq = parse_flip_sequence(read_file(fc_seq));
    std::vector<int> cover = flips_to_cover(inst, seq);
    std::cout << "cover size " << cover.size() << ":";
    for (int v : cover) std::cout << ' ' << v;
    std::cout << "\n";
  });

  // ---- validate ----
  auto* validate = app.add_subcommand("validate", "instance invariant report");
  std::string val_prefix;
  bool val_full = false;
  validate->add_option("--instance", val_prefix, "instance file prefix")->required();
  validate->add_flag("--full", val_full, "include the full collinearity scan");
  validate->callback([&] {
    ValidateRunReport rep =
        run_validate(val_prefix, val_full ? ValidateLevel::kFull : ValidateLevel::kGadgets);
    std::cout << rep.text;
    if (!rep.ok) throw CLI::RuntimeError(1);
  });

  // ---- render ----
  auto* render = app.add_subcommand("render", "SVG figure export");
  std::string r_points, r_t1, r_t2, r_out;
  bool r_labels = false;
  render->add_option("--points", r_points)->required();
  render->add_option("--t1", r_t1);
  render->add_option("--t2", r_t2);
  render->add_option("--out", r_out)->required();
  render->add_flag("--labels", r_labels, "0/1 triangle labels for double-chain inputs");
  render->callback([&] {
    PointSetPtr ps = parse_point_set(read_file(r_points));
    std::optional<std::vector<Edge>> t1, t2;
    if (!r_t1.empty()) t1 = parse_edge_list(read_file(r_t1));
    if (!r_t2.empty()) t2 = parse_edge_list(read_file(r_t2));
    SvgOptions opts;
    opts.label_triangles = r_labels;
    std::optional<DoubleChain> chain;
    if (r_labels) {
      // Labels assume the canonical double-chain layout of gen double-chain.
      int n = ps->size() / 2;
      DoubleChain dc;
      dc.n = n;
      dc.point_set = ps;
      for (int i = 0; i < n; ++i) dc.upper.push_back(i);
      for (int i = 0; i < n; ++i) dc.lower.push_back(n + i);
      dc.sep_a = Point{Rational(0), Rational(0)};
      dc.sep_b = Point{Rational(1), Rational(0)};
      chain = dc;
    }
    std::string svg = render_svg(*ps, t1 ? &*t1 : nullptr, t2 ? &*t2 : nullptr, nullptr,
                                 chain ? &*chain : nullptr, opts);
    write_file(r_out, svg);
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::RuntimeError& e) {
    return e.get_exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
