#pragma once

// SVG 1.1 drawings of geodesic polygons in the Poincare disc.

#include <string>
#include <vector>

#include "toledo/core.hpp"

namespace toledo {

/// Images of the polygon under distinct elements given by reduced words of
/// length <= depth in the pairings and their inverses, starting with the
/// polygon itself.
std::vector<std::vector<ProjPoint>> tiling_copies(const std::vector<ProjPoint>& polygon,
                                                  const std::vector<Isometry>& pairings, int depth);

/// The unit circle, one path per polygon (the first drawn as the base
/// polygon) and a dot per marked point.
std::string render_svg(const std::vector<std::vector<ProjPoint>>& polygons,
                       const std::vector<ProjPoint>& marks = {}, int size = 600);

}  // namespace toledo
