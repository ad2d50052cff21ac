#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"
#include "tiredge/errors.hpp"
#include "tiredge/pipeline.hpp"
#include "tiredge/scale.hpp"

using namespace tiredge;

namespace {

// Filled rectangle plus two bars: enough separated structures for a
// multi-edge report.
GrayFrame scene_with_strokes() {
  GrayFrame g{96, 72, std::vector<std::uint8_t>(96 * 72, 40)};
  auto paint = [&](int x0, int y0, int x1, int y1) {
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x)
        g.data[static_cast<std::size_t>(y) * 96 + static_cast<std::size_t>(x)] = 210;
  };
  paint(14, 15, 58, 45);
  paint(8, 58, 88, 60);
  paint(74, 8, 76, 30);
  return g;
}

PipelineConfig fast_config() {
  PipelineConfig cfg;
  cfg.denoiser = DenoiserSpec::gaussian_preset();
  return cfg;
}

nlohmann::json parse_without_timings(const EdgeReport& report) {
  nlohmann::json j = nlohmann::json::parse(report_to_json(report));
  j.erase("timings_ms");
  return j;
}

std::set<std::pair<int, int>> map_pixels(const BinaryMap& map) {
  std::set<std::pair<int, int>> out;
  for (int y = 0; y < map.height; ++y)
    for (int x = 0; x < map.width; ++x)
      if (map.at(x, y)) out.insert({x, y});
  return out;
}

std::vector<std::string> timing_labels(const EdgeReport& report) {
  std::vector<std::string> names;
  for (const auto& [name, ms] : report.timings_ms) names.push_back(name);
  return names;
}

}  // namespace

TEST_CASE("empty frames are rejected up front") {
  CHECK_THROWS_AS(run_pipeline(GrayFrame{}), ProcessError);
  CHECK_THROWS_AS(run_pipeline(PgmFrame{RawFrame{}}), ProcessError);
  CHECK_THROWS_AS(compare_detectors(FloatFrame{}, {CompareKind::canny}, {}),
                  ProcessError);
}

TEST_CASE("a featureless frame yields an empty result") {
  GrayFrame flat{64, 48, std::vector<std::uint8_t>(64 * 48, 90)};
  PipelineResult r = run_pipeline(flat, fast_config());
  CHECK(r.map.count() == 0);
  CHECK(r.report.edges.empty());
}

TEST_CASE("two runs of the pipeline are identical") {
  GrayFrame g = synth::rect_scene(120, 90, 30, 24, 92, 66, 110, 190, 6.0, 11);
  PipelineConfig cfg;  // default NL-means denoiser
  PipelineResult a = run_pipeline(g, cfg);
  PipelineResult b = run_pipeline(g, cfg);
  CHECK(a.map == b.map);
  CHECK(parse_without_timings(a.report) == parse_without_timings(b.report));
}

TEST_CASE("the raw path equals scaling followed by the gray path") {
  GrayFrame g = scene_with_strokes();
  RawFrame raw{96, 72, std::vector<std::uint16_t>(96 * 72, 0), 0.01};
  for (std::size_t i = 0; i < g.data.size(); ++i)
    raw.data[i] = static_cast<std::uint16_t>(2200 + 4 * g.data[i]);

  PipelineConfig cfg = fast_config();
  PipelineResult via_raw = run_pipeline(PgmFrame{raw}, cfg);
  PipelineResult via_gray = run_pipeline(scale_dpg(raw, cfg.scale), cfg);
  CHECK(via_raw.map == via_gray.map);
  CHECK(parse_without_timings(via_raw.report) ==
        parse_without_timings(via_gray.report));

  PipelineResult wrapped = run_pipeline(PgmFrame{g}, cfg);
  PipelineResult direct = run_pipeline(g, cfg);
  CHECK(wrapped.map == direct.map);
  CHECK(parse_without_timings(wrapped.report) ==
        parse_without_timings(direct.report));
}

TEST_CASE("the report agrees with itself and with the rendered map") {
  PipelineConfig cfg = fast_config();
  cfg.score.et = 2;
  PipelineResult r = run_pipeline(scene_with_strokes(), cfg);
  REQUIRE(r.report.edges.size() >= 3);

  std::vector<int> ranks;
  std::set<std::pair<int, int>> kept_pixels;
  for (const EdgeRecord& e : r.report.edges) {
    CHECK(e.n == static_cast<int>(e.points.size()));
    CHECK(e.m == static_cast<int>(e.corners.size()));
    CHECK(e.m >= 2);
    CHECK(e.nprime >= e.n);
    CHECK((e.phi == cfg.score.phi_line || e.phi == cfg.score.phi_loop));
    CHECK(std::abs(e.ar - e.rss / e.n) <= 1e-12 * std::max(1.0, e.ar));

    ScoredEdge s;
    s.edge_index = e.id;
    s.n = e.n;
    s.m = e.m;
    s.nprime = e.nprime;
    s.phi = e.phi;
    s.rss = e.rss;
    s.ar = e.ar;
    CHECK(std::abs(e.es - edge_score(s, 96, 72)) <= 1e-12 * std::max(1.0, e.es));

    ranks.push_back(e.rank);
    CHECK(e.kept == (e.rank <= cfg.score.et));
    if (e.kept)
      for (const Point& p : e.points) kept_pixels.insert({p.x, p.y});
    for (const Corner& c : e.corners) {
      CHECK(c.point_index >= 0);
      CHECK(c.point_index < e.n);
    }
  }

  std::sort(ranks.begin(), ranks.end());
  for (std::size_t i = 0; i < ranks.size(); ++i)
    CHECK(ranks[i] == static_cast<int>(i) + 1);

  CHECK(static_cast<std::size_t>(std::count_if(
            r.report.edges.begin(), r.report.edges.end(),
            [](const EdgeRecord& e) { return e.kept; })) == 2);
  CHECK(map_pixels(r.map) == kept_pixels);
}

TEST_CASE("a budget of one keeps exactly the strongest edge") {
  PipelineConfig cfg = fast_config();
  cfg.score.et = 1;
  PipelineResult r = run_pipeline(scene_with_strokes(), cfg);
  const EdgeRecord* kept = nullptr;
  for (const EdgeRecord& e : r.report.edges) {
    if (e.kept) {
      CHECK(kept == nullptr);
      kept = &e;
      CHECK(e.rank == 1);
    }
  }
  REQUIRE(kept != nullptr);
  std::set<std::pair<int, int>> pixels;
  for (const Point& p : kept->points) pixels.insert({p.x, p.y});
  CHECK(map_pixels(r.map) == pixels);
}

TEST_CASE("render_edges draws the requested contours and nothing else") {
  auto a = synth::make_contour(synth::bresenham_line({2, 3}, {12, 3}));
  auto b = synth::make_contour(synth::bresenham_line({5, 10}, {5, 20}));
  EdgeGraph g;
  g.edges = synth::make_set({a, b}, 32, 32);
  g.adjacency.assign(2, {});

  BinaryMap only_b = render_edges(g, {1}, 32, 32);
  std::set<std::pair<int, int>> want;
  for (const Point& p : b.points) want.insert({p.x, p.y});
  CHECK(map_pixels(only_b) == want);

  CHECK(render_edges(g, {}, 32, 32).count() == 0);
  CHECK_THROWS_AS(render_edges(g, {5}, 32, 32), ProcessError);
  CHECK_THROWS_AS(render_edges(g, {0}, 0, 32), ProcessError);
  CHECK_THROWS_AS(render_edges(g, {0, 1}, 10, 10), ProcessError);
}

TEST_CASE("timing labels follow the stage order") {
  GrayFrame g = scene_with_strokes();
  RawFrame raw{96, 72, std::vector<std::uint16_t>(96 * 72, 0), 0.01};
  for (std::size_t i = 0; i < g.data.size(); ++i)
    raw.data[i] = static_cast<std::uint16_t>(2000 + 5 * g.data[i]);

  PipelineConfig cfg = fast_config();
  std::vector<std::string> want = {"scale",   "denoise", "canny",   "contours",
                                   "corners", "linking", "scoring", "render"};
  CHECK(timing_labels(run_pipeline(PgmFrame{raw}, cfg).report) == want);

  want.erase(want.begin());
  CHECK(timing_labels(run_pipeline(g, cfg).report) == want);
}

TEST_CASE("the json report carries config, timings and edges") {
  PipelineConfig cfg = fast_config();
  PipelineResult r = run_pipeline(scene_with_strokes(), cfg);
  nlohmann::json j = nlohmann::json::parse(report_to_json(r.report));

  REQUIRE(j.contains("config"));
  REQUIRE(j.contains("timings_ms"));
  REQUIRE(j.contains("edges"));
  for (const char* key : {"scale", "denoiser", "canny", "contour", "glcp", "link", "score"})
    CHECK(j["config"].contains(key));
  CHECK(j["config"]["denoiser"]["kind"] == "gaussian");
  CHECK(j["config"]["denoiser"]["sigma"].is_null());
  CHECK(j["config"]["score"]["et"] == 30);
  CHECK(j["timings_ms"].size() == 7);

  REQUIRE(!j["edges"].empty());
  const nlohmann::json& e = j["edges"][0];
  for (const char* key : {"id", "n", "m", "nprime", "phi", "rss", "ar", "es",
                          "rank", "kept", "points", "corners"})
    CHECK(e.contains(key));
  REQUIRE(!e["points"].empty());
  CHECK(e["points"][0].size() == 2);
  REQUIRE(!e["corners"].empty());
  for (const char* key : {"point_index", "angle", "kind"})
    CHECK(e["corners"][0].contains(key));
}

TEST_CASE("compare_detectors matches the standalone detectors") {
  GrayFrame g = scene_with_strokes();
  FloatFrame f = to_float(g);
  PipelineConfig cfg = fast_config();
  FloatFrame denoised = denoise(f, cfg.denoiser);

  auto results =
      compare_detectors(f, {CompareKind::canny, CompareKind::sobel, CompareKind::proposed}, cfg);
  REQUIRE(results.size() == 3);
  CHECK(results[0].kind == CompareKind::canny);
  CHECK(results[1].kind == CompareKind::sobel);
  CHECK(results[2].kind == CompareKind::proposed);

  CannyConfig cc = cfg.canny;
  cc.denoiser = DenoiserSpec::none();
  CHECK(results[0].map == canny(denoised, cc));
  CHECK(results[1].map == baseline_detect(denoised, BaselineKind::sobel, 0.15));
  CHECK(results[2].map == run_pipeline(g, cfg).map);
  for (const CompareResult& r : results)
    CHECK(r.edge_pixels == r.map.count());
}

TEST_CASE("compare_detectors is silent on a flat frame") {
  FloatFrame flat(40, 30, 77.0);
  std::vector<CompareKind> kinds = {CompareKind::prewitt, CompareKind::roberts,
                                    CompareKind::sobel,   CompareKind::log,
                                    CompareKind::canny,   CompareKind::proposed};
  for (const CompareResult& r : compare_detectors(flat, kinds, fast_config()))
    CHECK(r.map.count() == 0);
}

TEST_CASE("the ranked detector stays cleanest on a noisy rectangle") {
  GrayFrame g = synth::rect_scene(140, 100, 30, 25, 110, 75, 110, 190, 8.0, 5);
  PipelineConfig cfg;
  cfg.score.et = 1;
  cfg.denoiser = DenoiserSpec::nlmeans(7, 21, 12.0);  // ~1.5x the noise sigma
  cfg.canny.low = 0.10;
  cfg.canny.high = 0.30;
  cfg.link.gap_link = 5.0;
  cfg.contour.min_length = 20;
  std::vector<CompareKind> kinds = {CompareKind::prewitt, CompareKind::roberts,
                                    CompareKind::sobel,   CompareKind::log,
                                    CompareKind::canny,   CompareKind::proposed};
  auto results = compare_detectors(to_float(g), kinds, cfg);
  REQUIRE(results.size() == kinds.size());

  BinaryMap gt = synth::rect_boundary(140, 100, 30, 25, 110, 75);
  int proposed_components = 0;
  for (const CompareResult& r : results)
    if (r.kind == CompareKind::proposed) {
      CHECK(oracle::tolerant_iou(r.map, gt, 1) >= 0.8);
      proposed_components = oracle::count_components(r.map);
    }
  for (const CompareResult& r : results)
    if (r.kind != CompareKind::proposed)
      CHECK(proposed_components <= oracle::count_components(r.map));
}

TEST_CASE("compare kind names round-trip and junk is rejected") {
  for (CompareKind kind : {CompareKind::prewitt, CompareKind::roberts,
                           CompareKind::sobel, CompareKind::log,
                           CompareKind::canny, CompareKind::proposed})
    CHECK(parse_compare_kind(to_string(kind)) == kind);
  CHECK_THROWS_AS(parse_compare_kind("bogus"), ConfigError);
}
