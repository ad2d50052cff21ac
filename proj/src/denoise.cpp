#include "tiredge/denoise.hpp"

#include <algorithm>
#include <cmath>

#include "tiredge/errors.hpp"

namespace tiredge {

Kernel gaussian_kernel(int size, double sigma) {
  if (size < 1 || size % 2 == 0) throw ConfigError("gaussian kernel size must be odd");
  if (!(sigma > 0.0)) throw ConfigError("gaussian sigma must be positive");
  Kernel k;
  k.size = size;
  k.weights.resize(static_cast<std::size_t>(size) * size);
  int r = size / 2;
  double sum = 0.0;
  for (int j = 0; j < size; ++j)
    for (int i = 0; i < size; ++i) {
      double di = i - r, dj = j - r;
      double w = std::exp(-(di * di + dj * dj) / (2.0 * sigma * sigma));
      k.at(i, j) = w;
      sum += w;
    }
  for (double& w : k.weights) w /= sum;
  return k;
}

Kernel gaussian_kernel_paper5() {
  static const int m[5][5] = {{2, 4, 5, 4, 2},
                              {4, 9, 12, 9, 4},
                              {5, 12, 15, 12, 5},
                              {4, 9, 12, 9, 4},
                              {2, 4, 5, 4, 2}};
  Kernel k;
  k.size = 5;
  k.weights.resize(25);
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 5; ++i) k.at(i, j) = m[j][i] / 159.0;
  return k;
}

FloatFrame convolve(const FloatFrame& frame, const Kernel& k) {
  if (frame.empty()) throw Error("convolve: empty frame");
  if (k.size < 1 || k.size % 2 == 0 ||
      k.weights.size() != static_cast<std::size_t>(k.size) * k.size)
    throw ConfigError("convolve: malformed kernel");
  if (k.size > 2 * std::min(frame.width, frame.height) + 1)
    throw ConfigError("convolve: kernel larger than frame allows");

  int w = frame.width, h = frame.height, r = k.size / 2;
  FloatFrame out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int j = 0; j < k.size; ++j) {
        int sy = std::clamp(y + j - r, 0, h - 1);
        for (int i = 0; i < k.size; ++i) {
          int sx = std::clamp(x + i - r, 0, w - 1);
          acc += k.at(i, j) * frame.at(sx, sy);
        }
      }
      out.at(x, y) = acc;
    }
  return out;
}

namespace {

// Frame with `pad` replicated pixels on every side.
FloatFrame replicate_pad(const FloatFrame& frame, int pad) {
  int w = frame.width, h = frame.height;
  FloatFrame out(w + 2 * pad, h + 2 * pad);
  for (int y = 0; y < out.height; ++y) {
    int sy = std::clamp(y - pad, 0, h - 1);
    for (int x = 0; x < out.width; ++x) {
      int sx = std::clamp(x - pad, 0, w - 1);
      out.at(x, y) = frame.at(sx, sy);
    }
  }
  return out;
}

}  // namespace

FloatFrame nl_means(const FloatFrame& frame, int patch, int search, double h) {
  if (frame.empty()) throw Error("nl_means: empty frame");
  if (patch < 1 || patch % 2 == 0 || search < 1 || search % 2 == 0)
    throw ConfigError("nl_means: patch and search must be odd");
  if (patch > search) throw ConfigError("nl_means: patch exceeds search window");
  if (!(h > 0.0)) throw ConfigError("nl_means: h must be positive");

  int w = frame.width, ht = frame.height;
  int pr = patch / 2, sr = search / 2, pad = pr + sr;
  FloatFrame padded = replicate_pad(frame, pad);

  std::size_t n = static_cast<std::size_t>(w) * ht;
  std::vector<double> num(n, 0.0), den(n, 0.0);

  // One squared-difference plane per search offset; patch sums by integral
  // image. Offsets walk the search window top-to-bottom, left-to-right, so
  // each output pixel accumulates its weighted sum in scan order.
  int dw = w + 2 * pr, dh = ht + 2 * pr;
  std::vector<double> diff(static_cast<std::size_t>(dw) * dh);
  std::vector<double> integral(static_cast<std::size_t>(dw + 1) * (dh + 1), 0.0);
  double inv_h2 = 1.0 / (h * h);
  double inv_p2 = 1.0 / (static_cast<double>(patch) * patch);

  for (int dy = -sr; dy <= sr; ++dy)
    for (int dx = -sr; dx <= sr; ++dx) {
      for (int v = 0; v < dh; ++v)
        for (int u = 0; u < dw; ++u) {
          double d = padded.at(u + sr, v + sr) - padded.at(u + sr + dx, v + sr + dy);
          diff[static_cast<std::size_t>(v) * dw + u] = d * d;
        }
      for (int v = 0; v < dh; ++v) {
        const double* drow = &diff[static_cast<std::size_t>(v) * dw];
        double* irow = &integral[static_cast<std::size_t>(v + 1) * (dw + 1)];
        const double* iprev = &integral[static_cast<std::size_t>(v) * (dw + 1)];
        double rowsum = 0.0;
        for (int u = 0; u < dw; ++u) {
          rowsum += drow[u];
          irow[u + 1] = iprev[u + 1] + rowsum;
        }
      }
      for (int y = 0; y < ht; ++y)
        for (int x = 0; x < w; ++x) {
          double rect = integral[static_cast<std::size_t>(y + patch) * (dw + 1) + x + patch] -
                        integral[static_cast<std::size_t>(y) * (dw + 1) + x + patch] -
                        integral[static_cast<std::size_t>(y + patch) * (dw + 1) + x] +
                        integral[static_cast<std::size_t>(y) * (dw + 1) + x];
          double d2 = rect * inv_p2;
          double wgt = (dx == 0 && dy == 0) ? 1.0 : std::exp(-d2 * inv_h2);
          std::size_t at = static_cast<std::size_t>(y) * w + x;
          num[at] += wgt * padded.at(x + pad + dx, y + pad + dy);
          den[at] += wgt;
        }
    }

  FloatFrame out(w, ht);
  for (std::size_t i = 0; i < n; ++i) out.data[i] = num[i] / den[i];
  return out;
}

FloatFrame denoise(const FloatFrame& frame, const DenoiserSpec& spec) {
  switch (spec.kind) {
    case DenoiserSpec::Kind::none:
      return frame;
    case DenoiserSpec::Kind::gaussian:
      return convolve(frame, spec.sigma ? gaussian_kernel(spec.size, *spec.sigma)
                                        : gaussian_kernel_paper5());
    case DenoiserSpec::Kind::nlmeans:
      return nl_means(frame, spec.patch, spec.search, spec.h);
  }
  throw ConfigError("denoise: unknown kind");
}

}  // namespace tiredge
