// tiredge command line: scale / detect / pipeline / compare.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tiredge/errors.hpp"
#include "tiredge/pipeline.hpp"

namespace {

using namespace tiredge;

FloatFrame load_as_float(const std::string& path, const ScaleConfig& scale) {
  PgmFrame frame = load_pgm(path);
  if (std::holds_alternative<RawFrame>(frame))
    return to_float(scale_dpg(std::get<RawFrame>(frame), scale));
  return to_float(std::get<GrayFrame>(frame));
}

struct DenoiserFlags {
  std::string kind = "nlmeans";
  int gauss_size = 5;
  double gauss_sigma = 0.0;  // 0 means the fixed 5x5 preset
  int patch = 7;
  int search = 21;
  double h = 10.0;

  DenoiserSpec spec() const {
    if (kind == "none") return DenoiserSpec::none();
    if (kind == "gaussian")
      return gauss_sigma > 0.0 ? DenoiserSpec::gaussian(gauss_size, gauss_sigma)
                               : DenoiserSpec::gaussian_preset();
    if (kind == "nlmeans") return DenoiserSpec::nlmeans(patch, search, h);
    throw ConfigError("unknown denoiser: " + kind);
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--denoiser", kind, "none|gaussian|nlmeans")
        ->check(CLI::IsMember({"none", "gaussian", "nlmeans"}))
        ->capture_default_str();
    cmd->add_option("--gauss-size", gauss_size, "gaussian kernel size (odd)")
        ->capture_default_str();
    cmd->add_option("--gauss-sigma", gauss_sigma,
                    "gaussian sigma; 0 selects the fixed 5x5 kernel")
        ->capture_default_str();
    cmd->add_option("--nlm-patch", patch, "NL-means patch size")->capture_default_str();
    cmd->add_option("--nlm-search", search, "NL-means search window")
        ->capture_default_str();
    cmd->add_option("--nlm-h", h, "NL-means filtering strength")->capture_default_str();
  }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal-infrared edge detection for low-SNR frames"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file; flags override it");
  app.get_config_ptr()->configurable(true);

  // --- scale ---
  auto* scale_cmd = app.add_subcommand("scale", "14-bit raw PGM to 8 bits around the median");
  std::string scale_in, scale_out;
  ScaleConfig scale_cfg;
  scale_cmd->add_option("input", scale_in, "raw PGM (maxval > 255)")->required();
  scale_cmd->add_option("output", scale_out, "8-bit PGM")->required();
  scale_cmd->add_option("--factor", scale_cfg.factor, "graylevel scale factor")
      ->capture_default_str();
  scale_cmd->add_option("--offset", scale_cfg.offset, "output graylevel of the median")
      ->capture_default_str();

  // --- detect ---
  auto* detect_cmd = app.add_subcommand("detect", "run one edge detector");
  std::string detect_in, detect_out, detect_kind;
  double detect_low = 0.05, detect_high = 0.15, detect_threshold = 0.15;
  DenoiserFlags detect_denoiser;
  detect_cmd->add_option("input", detect_in, "PGM image")->required();
  detect_cmd->add_option("output", detect_out, "binary edge PGM")->required();
  detect_cmd->add_option("--kind", detect_kind, "prewitt|roberts|sobel|log|canny")
      ->required()
      ->check(CLI::IsMember({"prewitt", "roberts", "sobel", "log", "canny"}));
  detect_cmd->add_option("--low", detect_low, "canny low threshold (fraction of max)")
      ->capture_default_str();
  detect_cmd->add_option("--high", detect_high, "canny high threshold (fraction of max)")
      ->capture_default_str();
  detect_cmd
      ->add_option("--threshold", detect_threshold,
                   "baseline magnitude threshold (fraction of max)")
      ->capture_default_str();
  detect_denoiser.kind = "gaussian";
  detect_denoiser.attach(detect_cmd);

  // --- pipeline ---
  auto* pipe_cmd = app.add_subcommand("pipeline", "full smoothness-ranked detector");
  std::string pipe_in, pipe_out, pipe_report;
  PipelineConfig pipe_cfg;
  DenoiserFlags pipe_denoiser;
  pipe_cmd->add_option("input", pipe_in, "PGM image (raw or 8-bit)")->required();
  pipe_cmd->add_option("output", pipe_out, "binary edge PGM of the kept edges")->required();
  pipe_cmd->add_option("--report", pipe_report, "write the JSON edge report here");
  pipe_cmd->add_option("--factor", pipe_cfg.scale.factor, "scale factor for raw input")
      ->capture_default_str();
  pipe_cmd->add_option("--offset", pipe_cfg.scale.offset, "median output graylevel")
      ->capture_default_str();
  pipe_denoiser.attach(pipe_cmd);
  pipe_cmd->add_option("--low", pipe_cfg.canny.low, "canny low threshold")
      ->capture_default_str();
  pipe_cmd->add_option("--high", pipe_cfg.canny.high, "canny high threshold")
      ->capture_default_str();
  pipe_cmd
      ->add_option("--gap-fill", pipe_cfg.contour.gap_fill_radius,
                   "contour gap fill radius (px)")
      ->capture_default_str();
  pipe_cmd
      ->add_option("--min-length", pipe_cfg.contour.min_length,
                   "shortest kept contour (px)")
      ->capture_default_str();
  pipe_cmd->add_option("--loop-T", pipe_cfg.contour.loop_threshold, "loop closure distance")
      ->capture_default_str();
  pipe_cmd->add_option("--axis-ratio", pipe_cfg.glcp.axis_ratio, "adaptive threshold ratio")
      ->capture_default_str();
  pipe_cmd
      ->add_option("--theta-obtuse", pipe_cfg.glcp.theta_obtuse,
                   "reject corners flatter than this (deg)")
      ->capture_default_str();
  pipe_cmd->add_option("--smooth-sigma", pipe_cfg.glcp.smooth_sigma, "contour smoothing sigma")
      ->capture_default_str();
  pipe_cmd->add_option("--gap-link", pipe_cfg.link.gap_link, "edge linking distance (px)")
      ->capture_default_str();
  pipe_cmd->add_option("--phi-line", pipe_cfg.score.phi_line, "line score divisor")
      ->capture_default_str();
  pipe_cmd->add_option("--phi-loop", pipe_cfg.score.phi_loop, "loop score divisor")
      ->capture_default_str();
  pipe_cmd->add_option("--et", pipe_cfg.score.et, "strongest edges to keep")
      ->capture_default_str();

  // --- compare ---
  auto* cmp_cmd = app.add_subcommand("compare", "run several detectors side by side");
  std::string cmp_in, cmp_outdir;
  std::vector<std::string> cmp_kinds;
  double cmp_threshold = 0.15;
  PipelineConfig cmp_cfg;
  DenoiserFlags cmp_denoiser;
  cmp_cmd->add_option("input", cmp_in, "PGM image")->required();
  cmp_cmd->add_option("outdir", cmp_outdir, "directory for the per-detector maps")
      ->required();
  cmp_cmd
      ->add_option("--kinds", cmp_kinds,
                   "comma separated: prewitt,roberts,sobel,log,canny,proposed")
      ->required()
      ->delimiter(',');
  cmp_cmd
      ->add_option("--threshold", cmp_threshold, "baseline detector threshold")
      ->capture_default_str();
  cmp_cmd->add_option("--low", cmp_cfg.canny.low, "canny low threshold")
      ->capture_default_str();
  cmp_cmd->add_option("--high", cmp_cfg.canny.high, "canny high threshold")
      ->capture_default_str();
  cmp_cmd->add_option("--et", cmp_cfg.score.et, "edges kept by the proposed detector")
      ->capture_default_str();
  cmp_denoiser.attach(cmp_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*scale_cmd) {
      PgmFrame frame = load_pgm(scale_in);
      if (!std::holds_alternative<RawFrame>(frame))
        throw tiredge::ProcessError("scale: input is already 8-bit");
      GrayFrame out = scale_dpg(std::get<RawFrame>(frame), scale_cfg);
      save_pgm(scale_out, PgmFrame{out});
      std::cout << "scaled " << out.width << "x" << out.height << " -> " << scale_out
                << "\n";
    } else if (*detect_cmd) {
      FloatFrame frame = load_as_float(detect_in, {});
      BinaryMap map;
      if (detect_kind == "canny") {
        CannyConfig cfg;
        cfg.low = detect_low;
        cfg.high = detect_high;
        cfg.denoiser = detect_denoiser.spec();
        map = canny(frame, cfg);
      } else {
        map = baseline_detect(denoise(frame, detect_denoiser.spec()),
                              parse_baseline_kind(detect_kind), detect_threshold);
      }
      save_pgm(detect_out, map);
      std::cout << detect_kind << ": " << map.count() << " edge pixels -> " << detect_out
                << "\n";
    } else if (*pipe_cmd) {
      pipe_cfg.denoiser = pipe_denoiser.spec();
      PgmFrame frame = load_pgm(pipe_in);
      PipelineResult result = run_pipeline(frame, pipe_cfg);
      save_pgm(pipe_out, result.map);
      if (!pipe_report.empty()) write_text(pipe_report, report_to_json(result.report));
      std::size_t kept = 0;
      for (const EdgeRecord& e : result.report.edges) kept += e.kept ? 1 : 0;
      std::cout << result.report.edges.size() << " edges, " << kept << " kept, "
                << result.map.count() << " edge pixels -> " << pipe_out << "\n";
    } else if (*cmp_cmd) {
      cmp_cfg.denoiser = cmp_denoiser.spec();
      std::vector<CompareKind> kinds;
      for (const std::string& name : cmp_kinds) kinds.push_back(parse_compare_kind(name));
      FloatFrame frame = load_as_float(cmp_in, cmp_cfg.scale);
      std::filesystem::create_directories(cmp_outdir);
      for (const CompareResult& r : compare_detectors(frame, kinds, cmp_cfg, cmp_threshold)) {
        std::string path = cmp_outdir + "/" + to_string(r.kind) + ".pgm";
        save_pgm(path, r.map);
        std::cout << to_string(r.kind) << ": " << r.edge_pixels << " edge pixels -> "
                  << path << "\n";
      }
    }
  } catch (const tiredge::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const tiredge::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const tiredge::ProcessError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const tiredge::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
