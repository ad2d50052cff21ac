#pragma once

#include <vector>

#include "tiredge/contours.hpp"

namespace tiredge {

/// Per-point curvature of one contour.
struct CurvatureProfile {
  std::vector<double> values;
  int contour_index = -1;
};

enum class CornerKind { curvature, endpoint };

struct Corner {
  int contour_index = -1;
  int point_index = -1;
  double angle = 0.0;  // degrees; 0 for endpoint corners
  CornerKind kind = CornerKind::curvature;
};

struct GlcpParams {
  double axis_ratio = 1.5;        // R of the adaptive round-corner threshold
  double theta_obtuse = 162.0;    // degrees; corners flatter than this are dropped
  double smooth_sigma = 3.0;      // contour smoothing sigma, in points
};

/// Curvature k = (dx*ddy - ddx*dy) / (dx^2+dy^2)^1.5 from central differences
/// of the Gaussian-smoothed coordinates (circular padding for loops,
/// replicate for lines). Contour must have at least 5 points.
CurvatureProfile curvature(const Contour& contour, double smooth_sigma);

/// Adaptive threshold over a region of support: ratio * mean |k| for
/// indices [u-l2, u+l1] (circular on loops).
double adaptive_threshold(const CurvatureProfile& profile, int u, int l1, int l2, double ratio,
                          bool loop);

/// Opening angle at a contour point: directions of least-squares line fits
/// from the point to each end of its region of support, folded into [0,180].
double corner_angle(const Contour& contour, int idx, int l1, int l2);

/// The Eq-style angle fold: |g1-g2| when below 180, else 360-|g1-g2|.
double interior_angle_deg(double gamma1_deg, double gamma2_deg);

/// Curvature corner detection over a contour set: candidates are local maxima
/// of |k|; each is kept only if it beats the adaptive threshold of its region
/// of support (bounded by the nearest curvature minima) and is sharper than
/// theta_obtuse. Both endpoints of every line contour are corners.
std::vector<Corner> detect_corners(const ContourSet& set, const GlcpParams& params = {});

}  // namespace tiredge
