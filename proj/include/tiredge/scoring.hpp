#pragma once

#include <vector>

#include "tiredge/linking.hpp"

namespace tiredge {

/// f(t) = a t^3 + b t^2 + c t + d over the dominant axis of the segment.
struct CubicFit {
  double a = 0, b = 0, c = 0, d = 0;
  enum class Axis { x_major, y_major } axis = Axis::x_major;
};

/// All factors of the edge score for one edge.
struct ScoredEdge {
  int edge_index = -1;
  int n = 0;        // pixel count
  int m = 0;        // corner count
  long long nprime = 0;  // n plus pixel counts of adjacent edges
  double phi = 1.0;
  double rss = 0.0;
  double ar = 0.0;  // rss / n
  double es = 0.0;
};

struct ScoreConfig {
  double phi_line = 1.0;
  double phi_loop = 2.0;
  int et = 30;  // how many strongest edges to keep
};

/// Per-edge corner index lists (into graph.corners), ordered along the edge.
/// Every edge must carry at least two corners.
std::vector<std::vector<int>> assign_corners(const EdgeGraph& graph);

/// Least-squares cubic over the wider-span axis (ties pick x). Segments with
/// up to four points of distinct abscissae fit exactly. Returns the fit and
/// the residual sum of squares.
std::pair<CubicFit, double> fit_cubic(const std::vector<Point>& points);

/// Fit every adjacent-corner span of an edge and accumulate the residuals;
/// second value is the average residual rss/n.
std::pair<double, double> edge_rss(const std::vector<Point>& points,
                                   const std::vector<int>& corner_positions);

/// ES = (AR * W * L * M^2) / (N^2 * N' * phi); smaller is stronger.
double edge_score(const ScoredEdge& e, int image_width, int image_height);

/// Ascending score order (ties by edge index).
std::vector<int> rank_edges(const std::vector<ScoredEdge>& scored);

/// The et strongest edges, or all of them when et covers the whole set.
std::vector<int> rank_and_filter(const std::vector<ScoredEdge>& scored, int et);

}  // namespace tiredge
