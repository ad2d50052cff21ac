#include "tiredge/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <variant>

#include "json.hpp"
#include "tiredge/errors.hpp"

namespace tiredge {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Loops carry no endpoint corners, so a smooth loop can leave linking with
// fewer than the two corners scoring requires; its traversal seam stands in.
void ensure_two_corners(EdgeGraph& graph) {
  std::vector<int> count(graph.edges.contours.size(), 0);
  for (const Corner& c : graph.corners) ++count[static_cast<std::size_t>(c.contour_index)];
  bool added = false;
  for (int e = 0; e < static_cast<int>(graph.edges.contours.size()); ++e) {
    if (count[static_cast<std::size_t>(e)] >= 2) continue;
    int n = graph.edges.contours[static_cast<std::size_t>(e)].size();
    if (n < 2) throw ProcessError("pipeline: degenerate one-point edge");
    for (int idx : {0, n - 1}) {
      bool exists = std::any_of(
          graph.corners.begin(), graph.corners.end(), [&](const Corner& c) {
            return c.contour_index == e && c.point_index == idx;
          });
      if (!exists) {
        graph.corners.push_back({e, idx, 0.0, CornerKind::endpoint});
        added = true;
      }
    }
  }
  if (added)
    std::sort(graph.corners.begin(), graph.corners.end(),
              [](const Corner& a, const Corner& b) {
                if (a.contour_index != b.contour_index)
                  return a.contour_index < b.contour_index;
                return a.point_index < b.point_index;
              });
}

// Stages downstream of denoising, shared by run_pipeline and the comparison
// harness (which pre-denoises once for every detector).
PipelineResult run_from_denoised(const FloatFrame& denoised, const PipelineConfig& cfg,
                                 std::vector<std::pair<std::string, double>> timings) {
  PipelineResult result;
  result.report.config = cfg;

  auto t0 = Clock::now();
  CannyConfig cc = cfg.canny;
  cc.denoiser = DenoiserSpec::none();
  BinaryMap edges = canny(denoised, cc);
  timings.emplace_back("canny", ms_since(t0));

  t0 = Clock::now();
  ContourSet set = extract_contours(edges, cfg.contour.gap_fill_radius,
                                    cfg.contour.min_length);
  for (Contour& c : set.contours) classify_mode(c, cfg.contour.loop_threshold);
  timings.emplace_back("contours", ms_since(t0));

  t0 = Clock::now();
  std::vector<Corner> corners = detect_corners(set, cfg.glcp);
  timings.emplace_back("corners", ms_since(t0));

  t0 = Clock::now();
  EdgeGraph graph = link_edges(set, corners, cfg.link);
  ensure_two_corners(graph);
  timings.emplace_back("linking", ms_since(t0));

  t0 = Clock::now();
  std::vector<ScoredEdge> scored;
  std::vector<std::vector<int>> corner_lists;
  if (!graph.edges.contours.empty()) {
    corner_lists = assign_corners(graph);
    scored.resize(graph.edges.contours.size());
    for (int e = 0; e < static_cast<int>(graph.edges.contours.size()); ++e) {
      const Contour& contour = graph.edges.contours[static_cast<std::size_t>(e)];
      ScoredEdge& s = scored[static_cast<std::size_t>(e)];
      s.edge_index = e;
      s.n = contour.size();
      s.m = static_cast<int>(corner_lists[static_cast<std::size_t>(e)].size());
      std::vector<int> positions;
      positions.reserve(corner_lists[static_cast<std::size_t>(e)].size());
      for (int ci : corner_lists[static_cast<std::size_t>(e)])
        positions.push_back(graph.corners[static_cast<std::size_t>(ci)].point_index);
      auto [rss, ar] = edge_rss(contour.points, positions);
      s.rss = rss;
      s.ar = ar;
      s.nprime = s.n;
      for (int other : graph.adjacency[static_cast<std::size_t>(e)])
        s.nprime += graph.edges.contours[static_cast<std::size_t>(other)].size();
      s.phi = contour.mode == ContourMode::loop ? cfg.score.phi_loop
                                                : cfg.score.phi_line;
      s.es = edge_score(s, graph.edges.source_width, graph.edges.source_height);
    }
  }
  std::vector<int> kept = scored.empty()
                              ? std::vector<int>{}
                              : rank_and_filter(scored, cfg.score.et);
  std::vector<int> ranked = scored.empty() ? std::vector<int>{} : rank_edges(scored);
  timings.emplace_back("scoring", ms_since(t0));

  t0 = Clock::now();
  result.map = render_edges(graph, kept, graph.edges.source_width,
                            graph.edges.source_height);
  timings.emplace_back("render", ms_since(t0));

  std::vector<int> rank_of(scored.size(), 0);
  for (int pos = 0; pos < static_cast<int>(ranked.size()); ++pos)
    rank_of[static_cast<std::size_t>(ranked[static_cast<std::size_t>(pos)])] = pos + 1;
  std::vector<bool> is_kept(scored.size(), false);
  for (int e : kept) is_kept[static_cast<std::size_t>(e)] = true;

  result.report.edges.reserve(scored.size());
  for (std::size_t e = 0; e < scored.size(); ++e) {
    const ScoredEdge& s = scored[e];
    EdgeRecord record;
    record.id = s.edge_index;
    record.n = s.n;
    record.m = s.m;
    record.nprime = s.nprime;
    record.phi = s.phi;
    record.rss = s.rss;
    record.ar = s.ar;
    record.es = s.es;
    record.rank = rank_of[e];
    record.kept = is_kept[e];
    record.points = graph.edges.contours[e].points;
    for (int ci : corner_lists[e])
      record.corners.push_back(graph.corners[static_cast<std::size_t>(ci)]);
    result.report.edges.push_back(std::move(record));
  }
  result.report.timings_ms = std::move(timings);
  return result;
}

}  // namespace

PipelineResult run_pipeline(const GrayFrame& input, const PipelineConfig& cfg) {
  if (input.empty()) throw ProcessError("pipeline: empty frame");
  std::vector<std::pair<std::string, double>> timings;
  auto t0 = Clock::now();
  FloatFrame denoised = denoise(to_float(input), cfg.denoiser);
  timings.emplace_back("denoise", ms_since(t0));
  return run_from_denoised(denoised, cfg, std::move(timings));
}

PipelineResult run_pipeline(const PgmFrame& input, const PipelineConfig& cfg) {
  if (std::holds_alternative<GrayFrame>(input))
    return run_pipeline(std::get<GrayFrame>(input), cfg);

  const RawFrame& raw = std::get<RawFrame>(input);
  if (raw.empty()) throw ProcessError("pipeline: empty frame");
  std::vector<std::pair<std::string, double>> timings;
  auto t0 = Clock::now();
  GrayFrame scaled = scale_dpg(raw, cfg.scale);
  timings.emplace_back("scale", ms_since(t0));

  t0 = Clock::now();
  FloatFrame denoised = denoise(to_float(scaled), cfg.denoiser);
  timings.emplace_back("denoise", ms_since(t0));
  return run_from_denoised(denoised, cfg, std::move(timings));
}

BinaryMap render_edges(const EdgeGraph& graph, const std::vector<int>& kept,
                       int width, int height) {
  if (width <= 0 || height <= 0) throw ProcessError("render_edges: bad dimensions");
  BinaryMap map(width, height);
  for (int e : kept) {
    if (e < 0 || e >= static_cast<int>(graph.edges.contours.size()))
      throw ProcessError("render_edges: edge index out of range");
    for (const Point& p : graph.edges.contours[static_cast<std::size_t>(e)].points) {
      if (!map.in_bounds(p.x, p.y))
        throw ProcessError("render_edges: point outside the map");
      map.at(p.x, p.y) = 1;
    }
  }
  return map;
}

namespace {

nlohmann::ordered_json denoiser_json(const DenoiserSpec& d) {
  nlohmann::ordered_json j;
  switch (d.kind) {
    case DenoiserSpec::Kind::none:
      j["kind"] = "none";
      break;
    case DenoiserSpec::Kind::gaussian:
      j["kind"] = "gaussian";
      j["size"] = d.size;
      if (d.sigma)
        j["sigma"] = *d.sigma;
      else
        j["sigma"] = nullptr;  // fixed 5x5 preset
      break;
    case DenoiserSpec::Kind::nlmeans:
      j["kind"] = "nlmeans";
      j["patch"] = d.patch;
      j["search"] = d.search;
      j["h"] = d.h;
      break;
  }
  return j;
}

const char* corner_kind_name(CornerKind kind) {
  return kind == CornerKind::curvature ? "curvature" : "endpoint";
}

}  // namespace

std::string report_to_json(const EdgeReport& report, int indent) {
  nlohmann::ordered_json j;
  const PipelineConfig& c = report.config;
  j["config"] = {
      {"scale", {{"factor", c.scale.factor}, {"offset", c.scale.offset}}},
      {"denoiser", denoiser_json(c.denoiser)},
      {"canny", {{"low", c.canny.low}, {"high", c.canny.high}}},
      {"contour",
       {{"gap_fill_radius", c.contour.gap_fill_radius},
        {"min_length", c.contour.min_length},
        {"loop_threshold", c.contour.loop_threshold}}},
      {"glcp",
       {{"axis_ratio", c.glcp.axis_ratio},
        {"theta_obtuse", c.glcp.theta_obtuse},
        {"smooth_sigma", c.glcp.smooth_sigma}}},
      {"link", {{"gap_link", c.link.gap_link}}},
      {"score",
       {{"phi_line", c.score.phi_line},
        {"phi_loop", c.score.phi_loop},
        {"et", c.score.et}}},
  };
  j["timings_ms"] = nlohmann::ordered_json::object();
  for (const auto& [name, ms] : report.timings_ms) j["timings_ms"][name] = ms;
  j["edges"] = nlohmann::ordered_json::array();
  for (const EdgeRecord& e : report.edges) {
    nlohmann::ordered_json je;
    je["id"] = e.id;
    je["n"] = e.n;
    je["m"] = e.m;
    je["nprime"] = e.nprime;
    je["phi"] = e.phi;
    je["rss"] = e.rss;
    je["ar"] = e.ar;
    je["es"] = e.es;
    je["rank"] = e.rank;
    je["kept"] = e.kept;
    je["points"] = nlohmann::ordered_json::array();
    for (const Point& p : e.points) je["points"].push_back({p.x, p.y});
    je["corners"] = nlohmann::ordered_json::array();
    for (const Corner& k : e.corners)
      je["corners"].push_back({{"point_index", k.point_index},
                               {"angle", k.angle},
                               {"kind", corner_kind_name(k.kind)}});
    j["edges"].push_back(std::move(je));
  }
  return j.dump(indent);
}

CompareKind parse_compare_kind(const std::string& name) {
  if (name == "prewitt") return CompareKind::prewitt;
  if (name == "roberts") return CompareKind::roberts;
  if (name == "sobel") return CompareKind::sobel;
  if (name == "log") return CompareKind::log;
  if (name == "canny") return CompareKind::canny;
  if (name == "proposed") return CompareKind::proposed;
  throw ConfigError("unknown detector kind: " + name);
}

std::string to_string(CompareKind kind) {
  switch (kind) {
    case CompareKind::prewitt: return "prewitt";
    case CompareKind::roberts: return "roberts";
    case CompareKind::sobel: return "sobel";
    case CompareKind::log: return "log";
    case CompareKind::canny: return "canny";
    case CompareKind::proposed: return "proposed";
  }
  return "?";
}

std::vector<CompareResult> compare_detectors(const FloatFrame& frame,
                                             const std::vector<CompareKind>& kinds,
                                             const PipelineConfig& cfg,
                                             double baseline_threshold) {
  if (frame.empty()) throw ProcessError("compare: empty frame");
  FloatFrame denoised = denoise(frame, cfg.denoiser);

  std::vector<CompareResult> results;
  results.reserve(kinds.size());
  for (CompareKind kind : kinds) {
    CompareResult r;
    r.kind = kind;
    switch (kind) {
      case CompareKind::prewitt:
        r.map = baseline_detect(denoised, BaselineKind::prewitt, baseline_threshold);
        break;
      case CompareKind::roberts:
        r.map = baseline_detect(denoised, BaselineKind::roberts, baseline_threshold);
        break;
      case CompareKind::sobel:
        r.map = baseline_detect(denoised, BaselineKind::sobel, baseline_threshold);
        break;
      case CompareKind::log:
        r.map = baseline_detect(denoised, BaselineKind::log, baseline_threshold);
        break;
      case CompareKind::canny: {
        CannyConfig cc = cfg.canny;
        cc.denoiser = DenoiserSpec::none();
        r.map = canny(denoised, cc);
        break;
      }
      case CompareKind::proposed:
        r.map = run_from_denoised(denoised, cfg, {}).map;
        break;
    }
    r.edge_pixels = r.map.count();
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace tiredge
