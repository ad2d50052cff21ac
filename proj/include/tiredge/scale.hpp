#pragma once

#include "tiredge/image.hpp"

namespace tiredge {

/// Parameters of the median-anchored 14-bit to 8-bit conversion.
struct ScaleConfig {
  double factor = 0.5;  // graylevel scale; output DPG = input DPG / factor
  double offset = 127.0;
};

/// Map raw graylevels to 8 bits around the frame median M:
/// out = clamp(round((raw - M) * factor + offset), 0, 255).
/// Keeps the degrees-per-graylevel constant for every frame of a sequence.
GrayFrame scale_dpg(const RawFrame& frame, const ScaleConfig& cfg = {});

/// Median sample of the frame; the lower of the two middles for even counts.
std::uint16_t frame_median(const RawFrame& frame);

/// Temperature span of a raw frame: (max - min graylevel) * dpg, in Celsius.
double temperature_range(const RawFrame& frame);

}  // namespace tiredge
