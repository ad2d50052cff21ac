#include "tiredge/baseline.hpp"

#include <algorithm>
#include <cmath>

#include "tiredge/denoise.hpp"
#include "tiredge/errors.hpp"

namespace tiredge {

BaselineKind parse_baseline_kind(const std::string& name) {
  if (name == "prewitt") return BaselineKind::prewitt;
  if (name == "roberts") return BaselineKind::roberts;
  if (name == "sobel") return BaselineKind::sobel;
  if (name == "log") return BaselineKind::log;
  throw ConfigError("unknown detector kind: " + name);
}

std::string to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::prewitt: return "prewitt";
    case BaselineKind::roberts: return "roberts";
    case BaselineKind::sobel: return "sobel";
    case BaselineKind::log: return "log";
  }
  return "?";
}

namespace {

BinaryMap threshold_magnitude(const std::vector<double>& mag, int w, int h,
                              double threshold) {
  double maxmag = 0.0;
  for (double m : mag) maxmag = std::max(maxmag, m);
  BinaryMap out(w, h);
  if (maxmag == 0.0) return out;
  double cut = threshold * maxmag;
  for (std::size_t i = 0; i < mag.size(); ++i)
    out.data[i] = mag[i] >= cut && mag[i] > 0.0 ? 1 : 0;
  return out;
}

// 3x3 gradient pair by correlation, replicate border, y kernel +1 row on top.
BinaryMap pair3_detect(const FloatFrame& frame, const int kx[3][3],
                       const int ky[3][3], double threshold) {
  if (frame.width < 3 || frame.height < 3)
    throw Error("baseline: frame smaller than 3x3");
  int w = frame.width, h = frame.height;
  std::vector<double> mag(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      // Accumulate each kernel lobe separately in one fixed order so the two
      // halves of a flat neighborhood cancel exactly on subtraction.
      double sxp = 0.0, sxn = 0.0, syp = 0.0, syn = 0.0;
      for (int j = 0; j < 3; ++j) {
        int py = std::clamp(y + j - 1, 0, h - 1);
        for (int i = 0; i < 3; ++i) {
          int px = std::clamp(x + i - 1, 0, w - 1);
          double v = frame.at(px, py);
          if (kx[j][i] > 0) sxp += kx[j][i] * v;
          if (kx[j][i] < 0) sxn += -kx[j][i] * v;
          if (ky[j][i] > 0) syp += ky[j][i] * v;
          if (ky[j][i] < 0) syn += -ky[j][i] * v;
        }
      }
      double sx = sxp - sxn, sy = syp - syn;
      mag[static_cast<std::size_t>(y) * w + x] = std::sqrt(sx * sx + sy * sy);
    }
  return threshold_magnitude(mag, w, h, threshold);
}

BinaryMap roberts_detect(const FloatFrame& frame, double threshold) {
  if (frame.width < 2 || frame.height < 2)
    throw Error("baseline: frame smaller than 2x2");
  int w = frame.width, h = frame.height;
  std::vector<double> mag(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      int x1 = std::min(x + 1, w - 1), y1 = std::min(y + 1, h - 1);
      double g1 = frame.at(x, y) - frame.at(x1, y1);
      double g2 = frame.at(x1, y) - frame.at(x, y1);
      mag[static_cast<std::size_t>(y) * w + x] = std::sqrt(g1 * g1 + g2 * g2);
    }
  return threshold_magnitude(mag, w, h, threshold);
}

Kernel log_kernel(int size, double sigma) {
  Kernel k;
  k.size = size;
  k.weights.resize(static_cast<std::size_t>(size) * size);
  int r = size / 2;
  double s2 = sigma * sigma;
  double sum = 0.0;
  for (int j = 0; j < size; ++j)
    for (int i = 0; i < size; ++i) {
      double di = i - r, dj = j - r;
      double q = (di * di + dj * dj) / (2.0 * s2);
      double w = (q - 1.0) * std::exp(-q);
      k.at(i, j) = w;
      sum += w;
    }
  // Zero-mean so a constant frame produces an exactly zero response.
  double bias = sum / (static_cast<double>(size) * size);
  for (double& w : k.weights) w -= bias;
  return k;
}

BinaryMap log_detect(const FloatFrame& frame, double threshold) {
  FloatFrame resp = convolve(frame, log_kernel(9, 1.4));
  int w = resp.width, h = resp.height;

  // The kernel is zero-mean only up to rounding, so flat regions come back as
  // ~1e-14 residue of either sign instead of exact zero. Snap anything below a
  // noise floor to zero so the lobe tails read as "no crossing" rather than a
  // sign change against the residue.
  double maxabs = 0.0;
  for (double v : resp.data) maxabs = std::max(maxabs, std::abs(v));
  double floor = 1e-9 * maxabs;
  for (double& v : resp.data)
    if (std::abs(v) < floor) v = 0.0;

  // Local contrast: largest |a-b| over the four opposing neighbor pairs with
  // a sign change; zero where no pair changes sign.
  std::vector<double> contrast(static_cast<std::size_t>(w) * h, 0.0);
  static const int pairs[4][2][2] = {{{-1, 0}, {1, 0}},
                                     {{0, -1}, {0, 1}},
                                     {{-1, -1}, {1, 1}},
                                     {{1, -1}, {-1, 1}}};
  double maxc = 0.0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double best = 0.0;
      for (auto& p : pairs) {
        int ax = x + p[0][0], ay = y + p[0][1];
        int bx = x + p[1][0], by = y + p[1][1];
        if (ax < 0 || ax >= w || ay < 0 || ay >= h) continue;
        if (bx < 0 || bx >= w || by < 0 || by >= h) continue;
        double a = resp.at(ax, ay), b = resp.at(bx, by);
        if ((a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0))
          best = std::max(best, std::abs(a - b));
      }
      contrast[static_cast<std::size_t>(y) * w + x] = best;
      maxc = std::max(maxc, best);
    }

  BinaryMap out(w, h);
  if (maxc == 0.0) return out;
  double cut = threshold * maxc;
  for (std::size_t i = 0; i < contrast.size(); ++i)
    out.data[i] = contrast[i] > 0.0 && contrast[i] >= cut ? 1 : 0;
  return out;
}

}  // namespace

BinaryMap baseline_detect(const FloatFrame& frame, BaselineKind kind,
                          double threshold) {
  if (frame.empty()) throw Error("baseline: empty frame");
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw ConfigError("baseline: threshold must be in [0,1]");
  static const int prewitt_x[3][3] = {{-1, 0, 1}, {-1, 0, 1}, {-1, 0, 1}};
  static const int prewitt_y[3][3] = {{1, 1, 1}, {0, 0, 0}, {-1, -1, -1}};
  static const int sobel_x[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
  static const int sobel_y[3][3] = {{1, 2, 1}, {0, 0, 0}, {-1, -2, -1}};
  switch (kind) {
    case BaselineKind::prewitt:
      return pair3_detect(frame, prewitt_x, prewitt_y, threshold);
    case BaselineKind::sobel:
      return pair3_detect(frame, sobel_x, sobel_y, threshold);
    case BaselineKind::roberts:
      return roberts_detect(frame, threshold);
    case BaselineKind::log:
      return log_detect(frame, threshold);
  }
  throw ConfigError("baseline: unknown kind");
}

}  // namespace tiredge
