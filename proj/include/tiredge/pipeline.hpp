#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tiredge/baseline.hpp"
#include "tiredge/canny.hpp"
#include "tiredge/contours.hpp"
#include "tiredge/corners.hpp"
#include "tiredge/linking.hpp"
#include "tiredge/pgm.hpp"
#include "tiredge/scale.hpp"
#include "tiredge/scoring.hpp"

namespace tiredge {

struct ContourConfig {
  int gap_fill_radius = 2;
  int min_length = 5;
  double loop_threshold = 3.0;
};

struct PipelineConfig {
  ScaleConfig scale;
  DenoiserSpec denoiser = DenoiserSpec::nlmeans(7, 21, 10.0);
  CannyConfig canny;
  ContourConfig contour;
  GlcpParams glcp;
  LinkConfig link;
  ScoreConfig score;
};

/// Everything the pipeline knows about one ranked edge.
struct EdgeRecord {
  int id = -1;
  int n = 0;
  int m = 0;
  long long nprime = 0;
  double phi = 1.0;
  double rss = 0.0;
  double ar = 0.0;
  double es = 0.0;
  int rank = 0;   // 1-based
  bool kept = false;
  std::vector<Point> points;
  std::vector<Corner> corners;
};

struct EdgeReport {
  PipelineConfig config;
  std::vector<std::pair<std::string, double>> timings_ms;
  std::vector<EdgeRecord> edges;
};

struct PipelineResult {
  BinaryMap map;
  EdgeReport report;
};

/// Full detector: scale (raw input only), denoise, Canny, contours, corners,
/// linking, scoring, ranking; the map renders the kept edges.
PipelineResult run_pipeline(const PgmFrame& input, const PipelineConfig& cfg = {});
PipelineResult run_pipeline(const GrayFrame& input, const PipelineConfig& cfg = {});

/// Exactly the pixels of the kept edges.
BinaryMap render_edges(const EdgeGraph& graph, const std::vector<int>& kept, int width,
                       int height);

/// JSON text of a report; the schema is stable for external tooling.
std::string report_to_json(const EdgeReport& report, int indent = 2);

enum class CompareKind { prewitt, roberts, sobel, log, canny, proposed };

CompareKind parse_compare_kind(const std::string& name);
std::string to_string(CompareKind kind);

struct CompareResult {
  CompareKind kind;
  BinaryMap map;
  std::size_t edge_pixels = 0;
};

/// Run several detectors on the identically denoised frame. baseline_threshold
/// feeds the classical detectors; canny and the full pipeline use cfg.
std::vector<CompareResult> compare_detectors(const FloatFrame& frame,
                                             const std::vector<CompareKind>& kinds,
                                             const PipelineConfig& cfg,
                                             double baseline_threshold = 0.15);

}  // namespace tiredge
