#pragma once

#include <vector>

#include "tiredge/image.hpp"

namespace tiredge {

/// Per-pixel gradient data from the 3x3 Sobel pair.
/// The y kernel has its +1 row on top, so gy is the negative of the usual
/// screen-coordinate derivative; directions are effectively measured in
/// y-up coordinates. Only direction mod 180 is consumed downstream.
struct GradientField {
  int width = 0;
  int height = 0;
  std::vector<double> gx;
  std::vector<double> gy;
  std::vector<double> magnitude;   // sqrt(gx^2 + gy^2)
  std::vector<double> direction;   // degrees in [0,180); 0 when gx = gy = 0
  std::vector<int> qdirection;     // nearest of {0,45,90,135}
};

/// Gradients by correlation with the fixed 3x3 kernel pair, replicate border.
/// Frame must be at least 3x3.
GradientField sobel_gradients(const FloatFrame& frame);

/// Reduce an angle mod 180 and snap to the nearest of {0,45,90,135}.
/// Midpoints round up; [157.5,180) wraps to 0.
int quantize_direction(double angle_deg);

}  // namespace tiredge
