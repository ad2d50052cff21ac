#include "tiredge/scoring.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "tiredge/errors.hpp"

namespace tiredge {

std::vector<std::vector<int>> assign_corners(const EdgeGraph& graph) {
  std::vector<std::vector<int>> lists(graph.edges.contours.size());
  for (int i = 0; i < static_cast<int>(graph.corners.size()); ++i) {
    const Corner& c = graph.corners[static_cast<std::size_t>(i)];
    if (c.contour_index < 0 ||
        c.contour_index >= static_cast<int>(lists.size()))
      throw ProcessError("assign_corners: corner references missing edge");
    lists[static_cast<std::size_t>(c.contour_index)].push_back(i);
  }
  for (std::size_t e = 0; e < lists.size(); ++e) {
    auto& list = lists[e];
    std::sort(list.begin(), list.end(), [&](int a, int b) {
      return graph.corners[static_cast<std::size_t>(a)].point_index <
             graph.corners[static_cast<std::size_t>(b)].point_index;
    });
    if (list.size() < 2)
      throw ProcessError("assign_corners: edge " + std::to_string(e) +
                         " carries fewer than two corners");
  }
  return lists;
}

namespace {

// Solve the symmetric system G c = r by Gaussian elimination with partial
// pivoting; dim <= 4.
std::array<double, 4> solve(std::array<std::array<double, 4>, 4> g,
                            std::array<double, 4> r, int dim) {
  for (int col = 0; col < dim; ++col) {
    int pivot = col;
    for (int row = col + 1; row < dim; ++row)
      if (std::abs(g[row][col]) > std::abs(g[pivot][col])) pivot = row;
    if (g[pivot][col] == 0.0) throw ProcessError("fit_cubic: singular system");
    std::swap(g[col], g[pivot]);
    std::swap(r[col], r[pivot]);
    for (int row = col + 1; row < dim; ++row) {
      double f = g[row][col] / g[col][col];
      for (int k = col; k < dim; ++k) g[row][k] -= f * g[col][k];
      r[row] -= f * r[col];
    }
  }
  std::array<double, 4> c{};
  for (int row = dim - 1; row >= 0; --row) {
    double acc = r[row];
    for (int k = row + 1; k < dim; ++k) acc -= g[row][k] * c[k];
    c[row] = acc / g[row][row];
  }
  return c;
}

}  // namespace

std::pair<CubicFit, double> fit_cubic(const std::vector<Point>& points) {
  if (points.size() < 2) throw Error("fit_cubic: need at least two points");

  int min_x = points[0].x, max_x = points[0].x;
  int min_y = points[0].y, max_y = points[0].y;
  for (const Point& p : points) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  if (min_x == max_x && min_y == max_y)
    throw Error("fit_cubic: all points coincide");

  bool x_major = max_x - min_x >= max_y - min_y;
  std::vector<double> t(points.size()), z(points.size());
  std::set<int> distinct;
  for (std::size_t i = 0; i < points.size(); ++i) {
    t[i] = x_major ? points[i].x : points[i].y;
    z[i] = x_major ? points[i].y : points[i].x;
    distinct.insert(x_major ? points[i].x : points[i].y);
  }
  int degree = std::min<int>(3, static_cast<int>(distinct.size()) - 1);
  int dim = degree + 1;

  double tm = 0.0;
  for (double v : t) tm += v;
  tm /= static_cast<double>(t.size());

  // Normal equations in the centered abscissa s = t - tm.
  std::array<std::array<double, 4>, 4> gram{};
  std::array<double, 4> rhs{};
  for (std::size_t i = 0; i < t.size(); ++i) {
    double s = t[i] - tm;
    std::array<double, 7> pw{1, 0, 0, 0, 0, 0, 0};
    for (int p = 1; p <= 2 * degree; ++p) pw[static_cast<std::size_t>(p)] = pw[static_cast<std::size_t>(p - 1)] * s;
    for (int p = 0; p < dim; ++p) {
      rhs[static_cast<std::size_t>(p)] += z[i] * pw[static_cast<std::size_t>(p)];
      for (int q = 0; q < dim; ++q)
        gram[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] += pw[static_cast<std::size_t>(p + q)];
    }
  }
  std::array<double, 4> c = solve(gram, rhs, dim);

  double rss = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double s = t[i] - tm;
    double fit = ((c[3] * s + c[2]) * s + c[1]) * s + c[0];
    double r = z[i] - fit;
    rss += r * r;
  }

  // Expand f(t) = sum c_j (t-tm)^j into plain coefficients.
  CubicFit fit;
  fit.axis = x_major ? CubicFit::Axis::x_major : CubicFit::Axis::y_major;
  fit.a = c[3];
  fit.b = c[2] - 3.0 * c[3] * tm;
  fit.c = c[1] - 2.0 * c[2] * tm + 3.0 * c[3] * tm * tm;
  fit.d = c[0] - c[1] * tm + c[2] * tm * tm - c[3] * tm * tm * tm;
  return {fit, rss};
}

std::pair<double, double> edge_rss(const std::vector<Point>& points,
                                   const std::vector<int>& corner_positions) {
  if (corner_positions.size() < 2)
    throw ProcessError("edge_rss: fewer than two corners");
  if (points.empty()) throw ProcessError("edge_rss: empty edge");
  for (std::size_t j = 0; j + 1 < corner_positions.size(); ++j)
    if (corner_positions[j] > corner_positions[j + 1])
      throw ProcessError("edge_rss: corner positions out of order");
  if (corner_positions.front() < 0 ||
      corner_positions.back() >= static_cast<int>(points.size()))
    throw ProcessError("edge_rss: corner position out of range");

  double rss = 0.0;
  for (std::size_t j = 0; j + 1 < corner_positions.size(); ++j) {
    int i0 = corner_positions[j], i1 = corner_positions[j + 1];
    if (i1 - i0 < 1) continue;  // coincident corners span no curve
    std::vector<Point> segment(points.begin() + i0, points.begin() + i1 + 1);
    rss += fit_cubic(segment).second;
  }
  return {rss, rss / static_cast<double>(points.size())};
}

double edge_score(const ScoredEdge& e, int image_width, int image_height) {
  if (e.n <= 0) throw ProcessError("edge_score: empty edge");
  if (e.nprime <= 0) throw ProcessError("edge_score: zero connectivity count");
  if (!(e.phi > 0.0)) throw ProcessError("edge_score: phi must be positive");
  if (image_width <= 0 || image_height <= 0)
    throw ProcessError("edge_score: bad image dimensions");
  double n = e.n;
  double numerator = e.ar * image_width * image_height *
                     (static_cast<double>(e.m) * e.m);
  double denominator = n * n * static_cast<double>(e.nprime) * e.phi;
  return numerator / denominator;
}

std::vector<int> rank_edges(const std::vector<ScoredEdge>& scored) {
  std::vector<int> order(scored.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const ScoredEdge& ea = scored[static_cast<std::size_t>(a)];
    const ScoredEdge& eb = scored[static_cast<std::size_t>(b)];
    if (ea.es != eb.es) return ea.es < eb.es;
    return ea.edge_index < eb.edge_index;
  });
  std::vector<int> ranked(order.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    ranked[i] = scored[static_cast<std::size_t>(order[i])].edge_index;
  return ranked;
}

std::vector<int> rank_and_filter(const std::vector<ScoredEdge>& scored, int et) {
  if (et < 1) throw ConfigError("rank_and_filter: et must be at least 1");
  std::vector<int> ranked = rank_edges(scored);
  if (static_cast<int>(ranked.size()) > et) ranked.resize(static_cast<std::size_t>(et));
  return ranked;
}

}  // namespace tiredge
