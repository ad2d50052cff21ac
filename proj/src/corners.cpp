#include "tiredge/corners.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tiredge/errors.hpp"

namespace tiredge {

namespace {

constexpr double kRad2Deg = 180.0 / std::numbers::pi;

std::vector<double> gaussian_taps(double sigma) {
  int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    double w = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
    taps[static_cast<std::size_t>(i + radius)] = w;
    sum += w;
  }
  for (double& w : taps) w /= sum;
  return taps;
}

// 1-D smoothing; circular indexing for loops, clamped for lines.
std::vector<double> smooth_signal(const std::vector<double>& v,
                                  const std::vector<double>& taps, bool loop) {
  int n = static_cast<int>(v.size());
  int radius = static_cast<int>(taps.size() / 2);
  std::vector<double> out(v.size());
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int t = -radius; t <= radius; ++t) {
      int j = i + t;
      if (loop) {
        j %= n;
        if (j < 0) j += n;
      } else {
        j = std::clamp(j, 0, n - 1);
      }
      acc += taps[static_cast<std::size_t>(t + radius)] * v[static_cast<std::size_t>(j)];
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

double at_wrap(const std::vector<double>& v, int i, bool loop) {
  int n = static_cast<int>(v.size());
  if (loop) {
    i %= n;
    if (i < 0) i += n;
  } else {
    i = std::clamp(i, 0, n - 1);
  }
  return v[static_cast<std::size_t>(i)];
}

}  // namespace

CurvatureProfile curvature(const Contour& contour, double smooth_sigma) {
  int n = contour.size();
  if (n < 5) throw Error("curvature: contour shorter than 5 points");
  if (!(smooth_sigma > 0.0)) throw ConfigError("curvature: sigma must be positive");

  bool loop = contour.mode == ContourMode::loop;
  std::vector<double> xs(static_cast<std::size_t>(n)), ys(xs);
  for (int i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] = contour.points[static_cast<std::size_t>(i)].x;
    ys[static_cast<std::size_t>(i)] = contour.points[static_cast<std::size_t>(i)].y;
  }
  auto taps = gaussian_taps(smooth_sigma);
  xs = smooth_signal(xs, taps, loop);
  ys = smooth_signal(ys, taps, loop);

  CurvatureProfile profile;
  profile.values.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double dx = (at_wrap(xs, i + 1, loop) - at_wrap(xs, i - 1, loop)) / 2.0;
    double dy = (at_wrap(ys, i + 1, loop) - at_wrap(ys, i - 1, loop)) / 2.0;
    double ddx = at_wrap(xs, i + 1, loop) - 2.0 * xs[static_cast<std::size_t>(i)] +
                 at_wrap(xs, i - 1, loop);
    double ddy = at_wrap(ys, i + 1, loop) - 2.0 * ys[static_cast<std::size_t>(i)] +
                 at_wrap(ys, i - 1, loop);
    double speed2 = dx * dx + dy * dy;
    double denom = speed2 * std::sqrt(speed2);
    profile.values[static_cast<std::size_t>(i)] =
        denom < 1e-12 ? 0.0 : (dx * ddy - ddx * dy) / denom;
  }
  return profile;
}

double adaptive_threshold(const CurvatureProfile& profile, int u, int l1, int l2,
                          double ratio, bool loop) {
  int n = static_cast<int>(profile.values.size());
  if (l1 < 0 || l2 < 0 || l1 + l2 + 1 > (loop ? n : n))
    throw Error("adaptive_threshold: bad region of support");
  if (!loop && (u - l2 < 0 || u + l1 >= n))
    throw Error("adaptive_threshold: region of support out of range");
  double sum = 0.0;
  for (int i = u - l2; i <= u + l1; ++i)
    sum += std::abs(at_wrap(profile.values, i, loop));
  return ratio * sum / (l1 + l2 + 1);
}

double interior_angle_deg(double gamma1_deg, double gamma2_deg) {
  double d = std::abs(gamma1_deg - gamma2_deg);
  d = std::fmod(d, 360.0);
  return d < 180.0 ? d : 360.0 - d;
}

namespace {

// Direction (degrees in [0,360)) of the least-squares line through the
// contour points from idx to idx+span (span may be negative), oriented away
// from idx.
double tangent_direction(const Contour& contour, int idx, int span, bool loop) {
  int n = contour.size();
  auto pt = [&](int i) -> Point {
    if (loop) {
      i %= n;
      if (i < 0) i += n;
    } else {
      i = std::clamp(i, 0, n - 1);
    }
    return contour.points[static_cast<std::size_t>(i)];
  };

  int count = std::abs(span) + 1;
  int step = span >= 0 ? 1 : -1;
  double mx = 0.0, my = 0.0;
  for (int k = 0; k < count; ++k) {
    Point p = pt(idx + step * k);
    mx += p.x;
    my += p.y;
  }
  mx /= count;
  my /= count;

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int k = 0; k < count; ++k) {
    Point p = pt(idx + step * k);
    double cx = p.x - mx, cy = p.y - my;
    sxx += cx * cx;
    sxy += cx * cy;
    syy += cy * cy;
  }
  if (sxx == 0.0 && sxy == 0.0 && syy == 0.0)
    throw Error("corner_angle: degenerate tangent fit");

  // Principal axis of the scatter matrix.
  double lambda = 0.5 * (sxx + syy) +
                  std::sqrt(0.25 * (sxx - syy) * (sxx - syy) + sxy * sxy);
  double vx, vy;
  if (sxy != 0.0) {
    vx = sxy;
    vy = lambda - sxx;
  } else {
    vx = sxx >= syy ? 1.0 : 0.0;
    vy = sxx >= syy ? 0.0 : 1.0;
  }

  // Orient outward: toward the far end of the fitted stretch.
  Point far = pt(idx + span);
  Point here = pt(idx);
  double ox = far.x - here.x, oy = far.y - here.y;
  if (ox == 0.0 && oy == 0.0) {
    ox = mx - here.x;
    oy = my - here.y;
  }
  if (vx * ox + vy * oy < 0.0) {
    vx = -vx;
    vy = -vy;
  }
  double deg = std::atan2(vy, vx) * kRad2Deg;
  if (deg < 0.0) deg += 360.0;
  return deg;
}

}  // namespace

double corner_angle(const Contour& contour, int idx, int l1, int l2) {
  if (l1 < 1 || l2 < 1) throw Error("corner_angle: empty support side");
  bool loop = contour.mode == ContourMode::loop;
  double g1 = tangent_direction(contour, idx, l1, loop);
  double g2 = tangent_direction(contour, idx, -l2, loop);
  return interior_angle_deg(g1, g2);
}

namespace {

// Distance (in indices) from u to the nearest non-strict minimum of |k| on
// the given side; falls back to the contour end (lines) or one full wrap
// (loops).
int support_reach(const std::vector<double>& absk, int u, int dir, bool loop) {
  int n = static_cast<int>(absk.size());
  int limit = loop ? n - 1 : (dir > 0 ? n - 1 - u : u);
  for (int d = 1; d <= limit; ++d) {
    int i = u + dir * d;
    double here = at_wrap(absk, i, loop);
    double prev = at_wrap(absk, i - dir, loop);
    bool has_next = loop || (dir > 0 ? i + 1 < n : i - 1 >= 0);
    double next = at_wrap(absk, i + dir, loop);
    if (here <= prev && (!has_next || here <= next)) return d;
  }
  return limit;
}

// Center indices of runs of equal value that rise above both flanks.
std::vector<int> local_maxima(const std::vector<double>& a, bool loop) {
  int n = static_cast<int>(a.size());
  std::vector<int> out;
  if (n < 3) return out;

  if (!loop) {
    int s = 0;
    while (s < n) {
      int e = s;
      while (e + 1 < n && a[static_cast<std::size_t>(e + 1)] == a[static_cast<std::size_t>(s)]) ++e;
      bool rises_left = s > 0 && a[static_cast<std::size_t>(s - 1)] < a[static_cast<std::size_t>(s)];
      bool rises_right = e < n - 1 && a[static_cast<std::size_t>(e + 1)] < a[static_cast<std::size_t>(s)];
      if (rises_left && rises_right) out.push_back(s + (e - s) / 2);
      s = e + 1;
    }
    return out;
  }

  // Loop: start scanning after some value change; a constant profile has no
  // maxima at all.
  int anchor = -1;
  for (int i = 0; i < n; ++i)
    if (a[static_cast<std::size_t>(i)] != a[static_cast<std::size_t>((i + 1) % n)]) {
      anchor = i + 1;
      break;
    }
  if (anchor < 0) return out;

  int scanned = 0;
  int s = anchor;
  while (scanned < n) {
    int len = 1;
    while (len < n &&
           a[static_cast<std::size_t>((s + len) % n)] == a[static_cast<std::size_t>(s % n)])
      ++len;
    double left = a[static_cast<std::size_t>(((s - 1) % n + n) % n)];
    double right = a[static_cast<std::size_t>((s + len) % n)];
    double v = a[static_cast<std::size_t>(s % n)];
    if (left < v && right < v) out.push_back((s + (len - 1) / 2) % n);
    scanned += len;
    s += len;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Corner> detect_corners(const ContourSet& set, const GlcpParams& params) {
  if (!(params.axis_ratio >= 1.0)) throw ConfigError("glcp: axis ratio must be >= 1");
  if (!(params.theta_obtuse > 90.0 && params.theta_obtuse < 180.0))
    throw ConfigError("glcp: theta_obtuse must lie in (90,180)");

  std::vector<Corner> corners;
  for (int ci = 0; ci < static_cast<int>(set.contours.size()); ++ci) {
    const Contour& contour = set.contours[static_cast<std::size_t>(ci)];
    int n = contour.size();
    bool loop = contour.mode == ContourMode::loop;

    if (n >= 5) {
      CurvatureProfile profile = curvature(contour, params.smooth_sigma);
      profile.contour_index = ci;
      std::vector<double> absk(profile.values.size());
      for (std::size_t i = 0; i < absk.size(); ++i) absk[i] = std::abs(profile.values[i]);

      for (int u : local_maxima(absk, loop)) {
        int l1 = support_reach(absk, u, +1, loop);
        int l2 = support_reach(absk, u, -1, loop);
        if (l1 < 1 || l2 < 1) continue;
        if (loop && l1 + l2 + 1 > n) {
          // Both searches ran into the same minimum from opposite sides, so
          // the union already covers the whole loop; trim the overlap instead
          // of counting the shared far samples twice.
          int excess = l1 + l2 + 1 - n;
          int cut = std::min(excess, l1 - 1);
          l1 -= cut;
          l2 -= excess - cut;
        }
        double threshold = adaptive_threshold(profile, u, l1, l2, params.axis_ratio, loop);
        if (absk[static_cast<std::size_t>(u)] < threshold) continue;  // round corner
        double angle = corner_angle(contour, u, l1, l2);
        if (angle > params.theta_obtuse) continue;  // false corner
        corners.push_back({ci, u, angle, CornerKind::curvature});
      }
    }

    if (!loop && n >= 1) {
      corners.push_back({ci, 0, 0.0, CornerKind::endpoint});
      if (n > 1) corners.push_back({ci, n - 1, 0.0, CornerKind::endpoint});
    }
  }

  std::sort(corners.begin(), corners.end(), [](const Corner& a, const Corner& b) {
    if (a.contour_index != b.contour_index) return a.contour_index < b.contour_index;
    if (a.point_index != b.point_index) return a.point_index < b.point_index;
    return a.kind == CornerKind::endpoint && b.kind == CornerKind::curvature;
  });
  return corners;
}

}  // namespace tiredge
