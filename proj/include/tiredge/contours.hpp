#pragma once

#include <vector>

#include "tiredge/image.hpp"

namespace tiredge {

enum class ContourMode { line, loop };
enum class EndTag { endpoint, t_junction };

/// Ordered pixel path traced from a binary edge map.
struct Contour {
  std::vector<Point> points;
  ContourMode mode = ContourMode::line;
  EndTag start_tag = EndTag::endpoint;
  EndTag end_tag = EndTag::endpoint;
  std::vector<int> bridged;  // sorted indices of interpolated gap-fill points

  int size() const { return static_cast<int>(points.size()); }
};

struct ContourSet {
  std::vector<Contour> contours;
  int source_width = 0;
  int source_height = 0;
};

/// Trace every edge pixel into 8-connected paths. Dead ends look for an
/// unvisited edge pixel within gap_fill_radius and bridge to it with
/// interpolated points; paths ending against another contour are tagged
/// t_junction; pixels whose neighborhood splits into 3+ connected arms
/// terminate the trace as a junction. Contours shorter than min_length
/// pixels are dropped.
ContourSet extract_contours(const BinaryMap& map, int gap_fill_radius = 2, int min_length = 5);

/// Closed iff the endpoints are closer than loop_threshold; updates and
/// returns the mode.
ContourMode classify_mode(Contour& contour, double loop_threshold);

}  // namespace tiredge
