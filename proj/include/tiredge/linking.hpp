#pragma once

#include <vector>

#include "tiredge/contours.hpp"
#include "tiredge/corners.hpp"

namespace tiredge {

struct LinkConfig {
  double gap_link = 3.0;  // pixels; pairs strictly closer than this link
};

/// Contours plus corner list after linking, with the adjacency recorded by
/// T-junction links.
struct EdgeGraph {
  ContourSet edges;
  std::vector<Corner> corners;
  std::vector<std::vector<int>> adjacency;  // symmetric, no self entries
  int bridge_points_inserted = 0;
};

/// Alg-style edge linking, run to a fixed point. Three rules, nearest pair
/// first (ties to the lowest edge/point index):
///   ending-to-ending of two edges  -> concatenate with bridge pixels,
///     the junction becomes an interior corner;
///   ending-to-interior of another  -> record adjacency and add a corner on
///     the host edge;
///   ending-to-own-beginning        -> the edge becomes a loop and its
///     endpoint corners are dropped.
EdgeGraph link_edges(const ContourSet& set, const std::vector<Corner>& corners,
                     const LinkConfig& cfg = {});

}  // namespace tiredge
