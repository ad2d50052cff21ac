#include "tiredge/linking.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <set>

#include "tiredge/errors.hpp"

namespace tiredge {

namespace {

// Strictly-interior pixels of the segment a-b (same rasterization as the
// contour tracer's gap bridges).
std::vector<Point> between(Point a, Point b) {
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

long long dist2(Point a, Point b) {
  long long dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

struct Candidate {
  long long d2 = 0;
  int e1 = -1, i1 = -1, e2 = -1, i2 = -1;
  int type = 0;  // 1 merge, 2 t-junction, 3 self-closure

  bool operator<(const Candidate& o) const {
    if (d2 != o.d2) return d2 < o.d2;
    if (e1 != o.e1) return e1 < o.e1;
    if (i1 != o.i1) return i1 < o.i1;
    if (e2 != o.e2) return e2 < o.e2;
    if (i2 != o.i2) return i2 < o.i2;
    return type < o.type;
  }
};

struct Linker {
  std::vector<Contour> edges;
  std::vector<Corner> corners;
  std::vector<std::set<int>> adjacency;
  int bridges = 0;
  long long gap2_limit;  // squared distances strictly below link

  Linker(const ContourSet& set, const std::vector<Corner>& cs, double gap_link)
      : edges(set.contours), corners(cs), adjacency(set.contours.size()) {
    // strict <: the largest admissible integer squared distance
    double g2 = gap_link * gap_link;
    gap2_limit = static_cast<long long>(std::floor(g2)) - (std::floor(g2) == g2 ? 1 : 0);
  }

  bool adjacent(int a, int b) const {
    return adjacency[static_cast<std::size_t>(a)].count(b) > 0;
  }

  bool corner_at(int e, int idx) const {
    return std::any_of(corners.begin(), corners.end(), [&](const Corner& k) {
      return k.contour_index == e && k.point_index == idx;
    });
  }

  void reverse_edge(int e) {
    Contour& c = edges[static_cast<std::size_t>(e)];
    int n = c.size();
    std::reverse(c.points.begin(), c.points.end());
    for (int& b : c.bridged) b = n - 1 - b;
    std::sort(c.bridged.begin(), c.bridged.end());
    std::swap(c.start_tag, c.end_tag);
    for (Corner& corner : corners)
      if (corner.contour_index == e) corner.point_index = n - 1 - corner.point_index;
  }

  // Angle at a merged or T-junction corner, from short tangent fits.
  double junction_angle(const Contour& c, int idx) const {
    bool loop = c.mode == ContourMode::loop;
    int n = c.size();
    int l1 = loop ? std::min(5, n - 1) : std::min(5, n - 1 - idx);
    int l2 = loop ? std::min(5, n - 1) : std::min(5, idx);
    if (l1 < 1 || l2 < 1) return 0.0;
    return corner_angle(c, idx, l1, l2);
  }

  std::optional<Candidate> best_candidate() const {
    std::optional<Candidate> best;
    auto consider = [&](const Candidate& c) {
      if (c.d2 > gap2_limit) return;
      if (!best || c < *best) best = c;
    };

    int ne = static_cast<int>(edges.size());
    for (int a = 0; a < ne; ++a) {
      const Contour& ea = edges[static_cast<std::size_t>(a)];
      if (ea.points.empty()) continue;
      // A closed curve keeps its former endpoints at the seam; those still
      // count as junction probes so re-linking a linked graph rediscovers
      // the adjacency a pre-closure ending established. Merging and closing
      // stay reserved for open curves.
      bool a_line = ea.mode == ContourMode::line;
      int enda[2] = {0, ea.size() - 1};
      // Type 3: own extremities close up.
      if (a_line && ea.size() >= 3)
        consider({dist2(ea.points.front(), ea.points.back()), a, 0, a, ea.size() - 1, 3});

      for (int ia : enda) {
        Point p = ea.points[static_cast<std::size_t>(ia)];
        for (int b = 0; b < ne; ++b) {
          if (b == a) continue;
          const Contour& eb = edges[static_cast<std::size_t>(b)];
          if (eb.points.empty()) continue;
          // Type 1: ending to ending (count each unordered pair once).
          if (a_line && b > a && eb.mode == ContourMode::line) {
            for (int ib : {0, eb.size() - 1})
              consider({dist2(p, eb.points[static_cast<std::size_t>(ib)]), a, ia, b, ib, 1});
          }
          // Type 2: ending (or seam) to interior of another edge. Viable
          // only while applying it would still change state, so repeated
          // linking settles instead of stacking junction corners.
          {
            bool host_loop = eb.mode == ContourMode::loop;
            int lo = host_loop ? 0 : 1;
            int hi = host_loop ? eb.size() - 1 : eb.size() - 2;
            Candidate local;
            for (int j = lo; j <= hi; ++j) {
              long long d2 = dist2(p, eb.points[static_cast<std::size_t>(j)]);
              if (local.e1 < 0 || d2 < local.d2)
                local = {d2, a, ia, b, j, 2};
            }
            if (local.e1 >= 0 && (!adjacent(a, b) || !corner_at(b, local.i2)))
              consider(local);
          }
        }
      }
    }
    return best;
  }

  void apply_type1(const Candidate& c) {
    int e1 = c.e1, e2 = c.e2;
    if (c.i1 == 0) reverse_edge(e1);
    if (c.i2 != 0) reverse_edge(e2);
    Contour& a = edges[static_cast<std::size_t>(e1)];
    Contour& b = edges[static_cast<std::size_t>(e2)];
    int n1 = a.size();

    std::vector<Point> bridge = between(a.points.back(), b.points.front());
    for (std::size_t k = 0; k < bridge.size(); ++k) {
      a.bridged.push_back(n1 + static_cast<int>(k));
      a.points.push_back(bridge[k]);
    }
    bridges += static_cast<int>(bridge.size());
    int off = a.size();
    a.points.insert(a.points.end(), b.points.begin(), b.points.end());
    for (int idx : b.bridged) a.bridged.push_back(idx + off);
    a.end_tag = b.end_tag;

    // Replace the two endpoint corners at the seam with one interior corner.
    std::erase_if(corners, [&](const Corner& k) {
      return (k.contour_index == e1 && k.point_index == n1 - 1 &&
              k.kind == CornerKind::endpoint) ||
             (k.contour_index == e2 && k.point_index == 0 &&
              k.kind == CornerKind::endpoint);
    });
    for (Corner& k : corners) {
      if (k.contour_index == e2) {
        k.contour_index = e1;
        k.point_index += off;
      } else if (k.contour_index > e2) {
        --k.contour_index;
      }
    }
    if (!corner_at(e1, n1 - 1))
      corners.push_back({e1, n1 - 1, junction_angle(a, n1 - 1), CornerKind::curvature});

    // Fold e2's adjacency into e1, then squeeze the index space.
    std::set<int> merged = adjacency[static_cast<std::size_t>(e1)];
    merged.insert(adjacency[static_cast<std::size_t>(e2)].begin(),
                  adjacency[static_cast<std::size_t>(e2)].end());
    merged.erase(e1);
    merged.erase(e2);
    adjacency[static_cast<std::size_t>(e1)] = merged;
    adjacency.erase(adjacency.begin() + e2);
    for (auto& others : adjacency) {
      std::set<int> next;
      for (int v : others) {
        if (v == e2) v = e1;
        next.insert(v > e2 ? v - 1 : v);
      }
      others = std::move(next);
    }
    adjacency[static_cast<std::size_t>(e1)].erase(e1);  // e2>e1 always, index kept
    edges.erase(edges.begin() + e2);
  }

  void apply_type2(const Candidate& c) {
    adjacency[static_cast<std::size_t>(c.e1)].insert(c.e2);
    adjacency[static_cast<std::size_t>(c.e2)].insert(c.e1);
    if (!corner_at(c.e2, c.i2)) {
      const Contour& host = edges[static_cast<std::size_t>(c.e2)];
      corners.push_back(
          {c.e2, c.i2, junction_angle(host, c.i2), CornerKind::curvature});
    }
  }

  void apply_type3(const Candidate& c) {
    Contour& e = edges[static_cast<std::size_t>(c.e1)];
    e.mode = ContourMode::loop;
    std::erase_if(corners, [&](const Corner& k) {
      return k.contour_index == c.e1 && k.kind == CornerKind::endpoint;
    });
  }

  void run() {
    while (auto c = best_candidate()) {
      switch (c->type) {
        case 1: apply_type1(*c); break;
        case 2: apply_type2(*c); break;
        case 3: apply_type3(*c); break;
      }
    }
    std::sort(corners.begin(), corners.end(), [](const Corner& a, const Corner& b) {
      if (a.contour_index != b.contour_index) return a.contour_index < b.contour_index;
      return a.point_index < b.point_index;
    });
  }
};

}  // namespace

EdgeGraph link_edges(const ContourSet& set, const std::vector<Corner>& corners,
                     const LinkConfig& cfg) {
  if (cfg.gap_link < 0.0) throw ConfigError("link_edges: negative gap");
  for (const Corner& c : corners) {
    if (c.contour_index < 0 || c.contour_index >= static_cast<int>(set.contours.size()))
      throw Error("link_edges: corner references missing edge");
    if (c.point_index < 0 ||
        c.point_index >= set.contours[static_cast<std::size_t>(c.contour_index)].size())
      throw Error("link_edges: corner point out of range");
  }

  Linker linker(set, corners, cfg.gap_link);
  linker.run();

  EdgeGraph graph;
  graph.edges.contours = std::move(linker.edges);
  graph.edges.source_width = set.source_width;
  graph.edges.source_height = set.source_height;
  graph.corners = std::move(linker.corners);
  graph.adjacency.resize(graph.edges.contours.size());
  for (std::size_t i = 0; i < linker.adjacency.size(); ++i)
    graph.adjacency[i].assign(linker.adjacency[i].begin(), linker.adjacency[i].end());
  graph.bridge_points_inserted = linker.bridges;
  return graph;
}

}  // namespace tiredge
