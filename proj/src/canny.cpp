#include "tiredge/canny.hpp"

#include <algorithm>
#include <vector>

#include "tiredge/denoise.hpp"
#include "tiredge/errors.hpp"
#include "tiredge/gradient.hpp"

namespace tiredge {

namespace {

// Along-direction neighbor offsets per quantized angle, in the y-up direction
// convention of the gradient kernels: 45 deg points up-right on screen.
struct Offsets {
  int dx1, dy1, dx2, dy2;
};

Offsets nms_offsets(int qdir) {
  switch (qdir) {
    case 0:
      return {1, 0, -1, 0};
    case 45:
      return {1, -1, -1, 1};
    case 90:
      return {0, 1, 0, -1};
    case 135:
      return {1, 1, -1, -1};
  }
  throw Error("nms: invalid quantized direction");
}

}  // namespace

FloatFrame non_max_suppression(const GradientField& g) {
  int w = g.width, h = g.height;
  FloatFrame out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      std::size_t at = static_cast<std::size_t>(y) * w + x;
      double m = g.magnitude[at];
      if (m == 0.0) continue;
      Offsets o = nms_offsets(g.qdirection[at]);
      auto neighbor = [&](int dx, int dy) -> double {
        int nx = x + dx, ny = y + dy;
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) return 0.0;
        return g.magnitude[static_cast<std::size_t>(ny) * w + nx];
      };
      if (m >= neighbor(o.dx1, o.dy1) && m >= neighbor(o.dx2, o.dy2))
        out.at(x, y) = m;
    }
  return out;
}

BinaryMap hysteresis(const FloatFrame& thinned, double low, double high) {
  if (low > high) throw ConfigError("hysteresis: low threshold exceeds high");
  int w = thinned.width, h = thinned.height;
  BinaryMap out(w, h);

  // Seed with strong pixels, then flood weak in-band pixels 8-connectedly.
  std::vector<Point> stack;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (thinned.at(x, y) >= high) {
        out.at(x, y) = 1;
        stack.push_back({x, y});
      }
  while (!stack.empty()) {
    Point p = stack.back();
    stack.pop_back();
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        int nx = p.x + dx, ny = p.y + dy;
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        if (out.at(nx, ny)) continue;
        if (thinned.at(nx, ny) >= low) {
          out.at(nx, ny) = 1;
          stack.push_back({nx, ny});
        }
      }
  }
  return out;
}

BinaryMap canny(const FloatFrame& frame, const CannyConfig& cfg) {
  if (frame.width < 3 || frame.height < 3) throw Error("canny: frame smaller than 3x3");
  if (!(cfg.low >= 0.0 && cfg.low < cfg.high && cfg.high <= 1.0))
    throw ConfigError("canny: need 0 <= low < high <= 1");

  FloatFrame smooth = denoise(frame, cfg.denoiser);
  GradientField g = sobel_gradients(smooth);
  FloatFrame thinned = non_max_suppression(g);
  double maxmag = 0.0;
  for (double m : g.magnitude) maxmag = std::max(maxmag, m);
  if (maxmag == 0.0) {
    return BinaryMap(frame.width, frame.height);
  }
  return hysteresis(thinned, cfg.low * maxmag, cfg.high * maxmag);
}

}  // namespace tiredge
