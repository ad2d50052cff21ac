#include "tiredge/scale.hpp"

#include <algorithm>
#include <cmath>

#include "tiredge/errors.hpp"

namespace tiredge {

std::uint16_t frame_median(const RawFrame& frame) {
  if (frame.empty()) throw Error("scale: empty frame");
  std::vector<std::uint16_t> sorted = frame.data;
  std::sort(sorted.begin(), sorted.end());
  return sorted[(sorted.size() - 1) / 2];
}

GrayFrame scale_dpg(const RawFrame& frame, const ScaleConfig& cfg) {
  if (frame.empty()) throw Error("scale: empty frame");
  std::uint16_t median = frame_median(frame);
  GrayFrame out{frame.width, frame.height, {}};
  out.data.resize(frame.data.size());
  for (std::size_t i = 0; i < frame.data.size(); ++i) {
    double centered = static_cast<double>(frame.data[i]) - median;
    double mapped = centered * cfg.factor + cfg.offset;
    long long rounded = std::llround(mapped);
    out.data[i] = static_cast<std::uint8_t>(std::clamp<long long>(rounded, 0, 255));
  }
  return out;
}

double temperature_range(const RawFrame& frame) {
  if (frame.empty()) throw Error("scale: empty frame");
  auto [lo, hi] = std::minmax_element(frame.data.begin(), frame.data.end());
  return (static_cast<double>(*hi) - static_cast<double>(*lo)) * frame.dpg;
}

}  // namespace tiredge
