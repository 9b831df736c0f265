#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flipdist/double_chain.hpp"
#include "flipdist/triangulation.hpp"

namespace flipdist {

// Static figure export. Coordinates are projected to fixed-precision
// decimals with exact integer arithmetic, so identical inputs produce
// byte-identical SVG.
struct SvgOptions {
  long width = 800;
  long height = 800;
  bool label_triangles = false;   // 0/1 labels from the separating line
};

std::string render_svg(const PointSet& ps, const std::vector<Edge>* t1,
                       const std::vector<Edge>* t2, const std::vector<Edge>* highlights,
                       const DoubleChain* chain, const SvgOptions& opts = {});

}  // namespace flipdist
