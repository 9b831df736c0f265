#pragma once

#include <filesystem>
#include <string>

#include "flipdist/reduction.hpp"
#include "flipdist/triangulation.hpp"

namespace flipdist {

// Text formats. All values whitespace-separated, indices 0-based, rationals
// in the p/q scalar format.
//   point set:      "n" then n lines "x y"
//   triangulation:  "n_edges" then lines "a b"
//   flip sequence:  lines "remove a b insert c d"
//   cubic graph:    "n m" then m lines "u v"
//   params:         key=value lines

PointSetPtr parse_point_set(const std::string& text, GpCheck mode = GpCheck::kAuto);
std::string serialize_point_set(const PointSet& ps);

std::vector<Edge> parse_edge_list(const std::string& text);
std::string serialize_edge_list(const std::vector<Edge>& edges);

FlipSequence parse_flip_sequence(const std::string& text);
std::string serialize_flip_sequence(const FlipSequence& seq);

std::string serialize_params(const LayoutParams& p);
LayoutParams parse_params(const std::string& text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

// Instance files under a path prefix: <prefix>points.txt, t1.txt, t2.txt,
// params.txt, graph.txt, gadgets.txt.
void save_instance(const ReductionInstance& inst, const std::string& prefix);
ReductionInstance load_instance(const std::string& prefix);

// Assembly with a disk cache keyed by the graph text, the parameter
// overrides and a format version; directory from FLIPDIST_CACHE_DIR or
// .flipdist-cache.
ReductionInstance assemble_cached(const CubicGraph& g, const AssembleOptions& opts = {});

// Validation driver: loads <prefix>* and reports one PASS/FAIL line per
// invariant.
struct ValidateRunReport {
  std::vector<CheckResult> checks;
  std::string text;  // one line per check
  bool ok = false;
};
ValidateRunReport run_validate(const std::string& prefix, ValidateLevel level);

}  // namespace flipdist
