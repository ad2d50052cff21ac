#include "tiredge/contours.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>

#include "tiredge/errors.hpp"

namespace tiredge {

namespace {

// 4-adjacent continuations are preferred over diagonal ones so staircase
// corners are consumed in path order; within each class, reading order.
constexpr int kStep[8][2] = {{0, -1}, {-1, 0}, {1, 0}, {0, 1},
                             {-1, -1}, {1, -1}, {-1, 1}, {1, 1}};

struct Tracer {
  const BinaryMap& map;
  int w, h, radius;
  std::vector<int> degree;       // 8-neighbor edge count per pixel
  std::vector<int> arms;         // connected neighbor groups per pixel
  std::vector<int> owner;        // contour id, -1 free
  std::vector<std::uint8_t> visited;
  int current = -1;

  explicit Tracer(const BinaryMap& m, int gap_fill_radius)
      : map(m), w(m.width), h(m.height), radius(gap_fill_radius) {
    std::size_t n = static_cast<std::size_t>(w) * h;
    degree.assign(n, 0);
    arms.assign(n, 0);
    owner.assign(n, -1);
    visited.assign(n, 0);
    // Ring order around a pixel; arm count = 0->1 transitions walking it.
    // Raw degree overcounts at staircase elbows where the two path arms touch
    // diagonally around the corner, so junctions go by arms instead.
    constexpr int kRing[8][2] = {{0, -1}, {1, -1}, {1, 0},  {1, 1},
                                 {0, 1},  {-1, 1}, {-1, 0}, {-1, -1}};
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        if (!map.at(x, y)) continue;
        int d = 0, transitions = 0;
        for (int k = 0; k < 8; ++k) {
          bool here = edge(x + kRing[k][0], y + kRing[k][1]);
          bool next = edge(x + kRing[(k + 1) % 8][0], y + kRing[(k + 1) % 8][1]);
          if (here) ++d;
          if (!here && next) ++transitions;
        }
        degree[idx(x, y)] = d;
        arms[idx(x, y)] = d == 8 ? 1 : transitions;
      }
  }

  std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * w + x; }
  bool edge(int x, int y) const { return map.in_bounds(x, y) && map.at(x, y); }
  bool junction(Point p) const { return arms[idx(p.x, p.y)] >= 3; }

  void claim(Point p) {
    visited[idx(p.x, p.y)] = 1;
    owner[idx(p.x, p.y)] = current;
  }

  bool next_to_foreign_junction(Point p) const {
    for (auto& s : kStep) {
      int nx = p.x + s[0], ny = p.y + s[1];
      if (!map.in_bounds(nx, ny)) continue;
      std::size_t i = idx(nx, ny);
      if (visited[i] && owner[i] != current && edge(nx, ny) && arms[i] >= 3)
        return true;
    }
    return false;
  }

  bool next_to_foreign_interior(Point p) const {
    for (auto& s : kStep) {
      int nx = p.x + s[0], ny = p.y + s[1];
      if (!map.in_bounds(nx, ny)) continue;
      std::size_t i = idx(nx, ny);
      if (visited[i] && owner[i] >= 0 && owner[i] != current) return true;
    }
    return false;
  }

  bool next_to_visited(int x, int y) const {
    for (auto& s : kStep) {
      int nx = x + s[0], ny = y + s[1];
      if (map.in_bounds(nx, ny) && visited[idx(nx, ny)]) return true;
    }
    return false;
  }

  // Strictly-interior pixels of the segment a-b.
  static std::vector<Point> between(Point a, Point b) {
    std::vector<Point> out;
    int dx = std::abs(b.x - a.x), dy = -std::abs(b.y - a.y);
    int sx = a.x < b.x ? 1 : -1, sy = a.y < b.y ? 1 : -1;
    int err = dx + dy;
    int x = a.x, y = a.y;
    while (true) {
      int e2 = 2 * err;
      if (e2 >= dy) { err += dy; x += sx; }
      if (e2 <= dx) { err += dx; y += sy; }
      if (x == b.x && y == b.y) break;
      out.push_back({x, y});
    }
    return out;
  }

  // Nearest bridgeable pixel in the gap window around c, or nullopt.
  std::optional<Point> gap_target(Point c) const {
    std::optional<Point> best;
    double best_d2 = 0.0;
    for (int dy = -radius; dy <= radius; ++dy)
      for (int dx = -radius; dx <= radius; ++dx) {
        if (std::max(std::abs(dx), std::abs(dy)) < 2) continue;
        int x = c.x + dx, y = c.y + dy;
        if (!edge(x, y) || visited[idx(x, y)]) continue;
        if (next_to_visited(x, y)) continue;  // already reachable elsewhere
        bool blocked = false;
        for (Point m : between(c, {x, y}))
          if (map.in_bounds(m.x, m.y) && visited[idx(m.x, m.y)]) {
            blocked = true;
            break;
          }
        if (blocked) continue;
        double d2 = static_cast<double>(dx) * dx + static_cast<double>(dy) * dy;
        if (!best || d2 < best_d2) {
          best = Point{x, y};
          best_d2 = d2;
        }
      }
    return best;
  }

  // Grow path at its back until a junction rule or dead end stops it.
  EndTag extend(std::vector<Point>& path, std::vector<int>& bridged) {
    while (true) {
      Point c = path.back();
      if (path.size() > 1 && junction(c)) return EndTag::t_junction;
      if (next_to_foreign_junction(c)) return EndTag::t_junction;

      bool stepped = false;
      for (auto& s : kStep) {
        int nx = c.x + s[0], ny = c.y + s[1];
        if (!edge(nx, ny) || visited[idx(nx, ny)]) continue;
        path.push_back({nx, ny});
        claim({nx, ny});
        stepped = true;
        break;
      }
      if (stepped) continue;

      if (auto target = gap_target(c)) {
        for (Point m : between(c, *target)) {
          bridged.push_back(static_cast<int>(path.size()));
          path.push_back(m);
          if (map.in_bounds(m.x, m.y)) claim(m);
        }
        path.push_back(*target);
        claim(*target);
        continue;
      }
      return next_to_foreign_interior(c) ? EndTag::t_junction : EndTag::endpoint;
    }
  }

  Contour trace(Point s, int id) {
    current = id;
    Contour contour;
    std::vector<Point> path = {s};
    claim(s);
    if (junction(s)) {
      contour.points = std::move(path);
      contour.start_tag = contour.end_tag = EndTag::t_junction;
      return contour;
    }
    std::vector<int> bridged;
    EndTag tag_fwd = extend(path, bridged);
    std::reverse(path.begin(), path.end());
    for (int& b : bridged) b = static_cast<int>(path.size()) - 1 - b;
    EndTag tag_bwd = extend(path, bridged);
    std::sort(bridged.begin(), bridged.end());
    contour.points = std::move(path);
    contour.bridged = std::move(bridged);
    contour.start_tag = tag_fwd;  // path now runs forward-end .. backward-end
    contour.end_tag = tag_bwd;
    return contour;
  }
};

}  // namespace

ContourSet extract_contours(const BinaryMap& map, int gap_fill_radius,
                            int min_length) {
  if (gap_fill_radius < 0) throw ConfigError("extract_contours: negative gap radius");
  if (min_length < 1) throw ConfigError("extract_contours: min_length < 1");

  ContourSet set;
  set.source_width = map.width;
  set.source_height = map.height;
  if (map.empty()) return set;

  Tracer tracer(map, gap_fill_radius);
  int next_id = 0;
  // Endpoint-like pixels first, then the rest (rings, leftovers); row-major.
  for (int pass = 0; pass < 2; ++pass)
    for (int y = 0; y < map.height; ++y)
      for (int x = 0; x < map.width; ++x) {
        if (!map.at(x, y) || tracer.visited[tracer.idx(x, y)]) continue;
        if (pass == 0 && tracer.degree[tracer.idx(x, y)] > 1) continue;
        Contour c = tracer.trace({x, y}, next_id);
        ++next_id;
        if (static_cast<int>(c.points.size()) >= min_length)
          set.contours.push_back(std::move(c));
      }
  return set;
}

ContourMode classify_mode(Contour& contour, double loop_threshold) {
  if (contour.points.size() < 2) throw Error("classify_mode: contour too short");
  Point a = contour.points.front(), b = contour.points.back();
  double dx = a.x - b.x, dy = a.y - b.y;
  contour.mode = std::sqrt(dx * dx + dy * dy) < loop_threshold ? ContourMode::loop
                                                               : ContourMode::line;
  return contour.mode;
}

}  // namespace tiredge
