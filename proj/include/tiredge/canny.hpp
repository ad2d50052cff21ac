#pragma once

#include "tiredge/denoise.hpp"
#include "tiredge/gradient.hpp"
#include "tiredge/image.hpp"

namespace tiredge {

struct CannyConfig {
  double low = 0.05;    // fraction of the max gradient magnitude
  double high = 0.15;   // fraction of the max gradient magnitude
  DenoiserSpec denoiser = DenoiserSpec::gaussian_preset();
};

/// Keep a pixel's magnitude iff it is >= both neighbors along its quantized
/// gradient direction (ties keep both sides); suppressed pixels become 0.
/// Border pixels compare only against in-bounds neighbors.
FloatFrame non_max_suppression(const GradientField& g);

/// Two-threshold edge acceptance on a thinned magnitude map: pixels >= high
/// are edges, pixels in [low, high) are edges iff 8-connected to a strong
/// pixel through other in-band pixels.
BinaryMap hysteresis(const FloatFrame& thinned, double low, double high);

/// Full detector: denoise, gradients, non-maximum suppression, hysteresis
/// with thresholds taken as fractions of the max magnitude.
BinaryMap canny(const FloatFrame& frame, const CannyConfig& cfg = {});

}  // namespace tiredge
