#include "tiredge/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tiredge/errors.hpp"

namespace tiredge {

// 3x3 pair evaluated as lobe differences; the y kernel carries its +1 row on
// top. Summing both lobes in the same shape before the single subtraction
// keeps a constant neighborhood at gradient 0 exactly, not rounding residue.

int quantize_direction(double angle_deg) {
  double a = std::fmod(angle_deg, 180.0);
  if (a < 0.0) a += 180.0;
  int bin = static_cast<int>(std::floor(a / 45.0 + 0.5)) % 4;
  return bin * 45;
}

GradientField sobel_gradients(const FloatFrame& frame) {
  if (frame.width < 3 || frame.height < 3)
    throw Error("sobel_gradients: frame smaller than 3x3");

  int w = frame.width, h = frame.height;
  GradientField g;
  g.width = w;
  g.height = h;
  std::size_t n = static_cast<std::size_t>(w) * h;
  g.gx.resize(n);
  g.gy.resize(n);
  g.magnitude.resize(n);
  g.direction.resize(n);
  g.qdirection.resize(n);

  constexpr double rad2deg = 180.0 / std::numbers::pi;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      auto sample = [&](int dx, int dy) {
        int px = std::clamp(x + dx, 0, w - 1);
        int py = std::clamp(y + dy, 0, h - 1);
        return frame.at(px, py);
      };
      double left = sample(-1, -1) + 2.0 * sample(-1, 0) + sample(-1, 1);
      double right = sample(1, -1) + 2.0 * sample(1, 0) + sample(1, 1);
      double top = sample(-1, -1) + 2.0 * sample(0, -1) + sample(1, -1);
      double bottom = sample(-1, 1) + 2.0 * sample(0, 1) + sample(1, 1);
      double sx = right - left;
      double sy = top - bottom;
      std::size_t at = static_cast<std::size_t>(y) * w + x;
      g.gx[at] = sx;
      g.gy[at] = sy;
      g.magnitude[at] = std::sqrt(sx * sx + sy * sy);
      double dir = 0.0;
      if (sx != 0.0 || sy != 0.0) {
        dir = std::atan2(sy, sx) * rad2deg;
        dir = std::fmod(dir, 180.0);
        if (dir < 0.0) dir += 180.0;
      }
      g.direction[at] = dir;
      g.qdirection[at] = quantize_direction(dir);
    }
  return g;
}

}  // namespace tiredge
